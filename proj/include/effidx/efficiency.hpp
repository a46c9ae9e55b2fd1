#pragma once

// Efficiency Index: distance of (Hurst, fractal dimension, entropy) estimates
// from the efficient-market point, plus rankings and rank correlation.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <numeric>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "effidx/entropy.hpp"
#include "effidx/error.hpp"
#include "effidx/fractal.hpp"
#include "effidx/ingest.hpp"
#include "effidx/spectral.hpp"

namespace effidx {

struct Measures {
    double hurst = 0.0;
    double fractal = 0.0;
    double entropy = 0.0;
};

struct EfficiencyConfig {
    Measures targets{0.5, 1.5, 1.0};
    Measures ranges{1.0, 1.0, 2.0};
    bool apply_sqrt = true;  // false reproduces the un-rooted sum printed in published rankings
    double bandwidth_exponent = 0.5;
    EntropyParams entropy{};

    void validate() const {
        if (!(ranges.hurst > 0.0 && ranges.fractal > 0.0 && ranges.entropy > 0.0))
            throw InvalidArgumentError("measure ranges must be strictly positive");
        if (!(bandwidth_exponent > 0.0 && bandwidth_exponent < 1.0))
            throw InvalidArgumentError("bandwidth exponent must lie in (0, 1)");
        if (entropy.surrogates < 1) throw InvalidArgumentError("at least one entropy surrogate is required");
        if (entropy.embedding < 1) throw InvalidArgumentError("embedding dimension must be positive");
        if (!(entropy.r_multiplier > 0.0)) throw InvalidArgumentError("r multiplier must be positive");
    }
};

/// Individual estimator outputs behind a record produced by analyze_series().
struct SeriesDetails {
    std::size_t length = 0;
    HurstEstimate local_whittle;
    HurstEstimate gph;
    FractalEstimate hall_wood;
    FractalEstimate genton;
    EntropyEstimate entropy;
};

struct EfficiencyRecord {
    std::string ticker;
    std::string country;
    Measures measures;
    std::array<double, 3> deviations{};  // (M_i - M_i*) / R_i for hurst, fractal, entropy
    double ei = 0.0;
    std::size_t rank = 0;  // 0 until ranked
    std::optional<SeriesDetails> details;
};

inline Measures combine_estimates(const HurstEstimate& lw, const HurstEstimate& gph_est, const FractalEstimate& hw,
                                  const FractalEstimate& g, const EntropyEstimate& ae) {
    return {(lw.value + gph_est.value) / 2.0, (hw.value + g.value) / 2.0, ae.normalized};
}

inline std::array<double, 3> scaled_deviations(const Measures& m, const EfficiencyConfig& cfg) {
    return {(m.hurst - cfg.targets.hurst) / cfg.ranges.hurst, (m.fractal - cfg.targets.fractal) / cfg.ranges.fractal,
            (m.entropy - cfg.targets.entropy) / cfg.ranges.entropy};
}

inline double efficiency_index(const std::array<double, 3>& deviations, bool apply_sqrt) {
    double s = 0.0;
    for (double d : deviations) s += d * d;
    return apply_sqrt ? std::sqrt(s) : s;
}

inline double efficiency_index(const Measures& m, const EfficiencyConfig& cfg) {
    return efficiency_index(scaled_deviations(m, cfg), cfg.apply_sqrt);
}

inline EfficiencyRecord make_record(std::string ticker, std::string country, const Measures& m,
                                    const EfficiencyConfig& cfg) {
    EfficiencyRecord r;
    r.ticker = std::move(ticker);
    r.country = std::move(country);
    r.measures = m;
    r.deviations = scaled_deviations(m, cfg);
    r.ei = efficiency_index(r.deviations, cfg.apply_sqrt);
    return r;
}

namespace detail {

inline void require_distinct_tickers(std::span<const EfficiencyRecord> records) {
    if (records.empty()) throw InvalidArgumentError("no records to rank");
    std::set<std::string_view> seen;
    for (const auto& r : records)
        if (!seen.insert(r.ticker).second) throw InvalidArgumentError("duplicate ticker '" + r.ticker + "'");
}

/// Rank (1-based, aligned with input order) ascending by key, ties by ticker.
template <typename Key>
std::vector<std::size_t> rank_by(std::span<const EfficiencyRecord> records, Key key) {
    require_distinct_tickers(records);
    std::vector<std::size_t> order(records.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        const double ka = key(records[a]);
        const double kb = key(records[b]);
        if (ka != kb) return ka < kb;
        return records[a].ticker < records[b].ticker;
    });
    std::vector<std::size_t> ranks(records.size());
    for (std::size_t pos = 0; pos < order.size(); ++pos) ranks[order[pos]] = pos + 1;
    return ranks;
}

}  // namespace detail

/// Sorts by ascending EI (most efficient first), ties by ticker, and assigns ranks 1..N.
inline std::vector<EfficiencyRecord> rank_records(std::vector<EfficiencyRecord> records) {
    const auto ranks = detail::rank_by(records, [](const EfficiencyRecord& r) { return r.ei; });
    for (std::size_t i = 0; i < records.size(); ++i) records[i].rank = ranks[i];
    std::sort(records.begin(), records.end(),
              [](const EfficiencyRecord& a, const EfficiencyRecord& b) { return a.rank < b.rank; });
    return records;
}

struct ComponentRanks {
    std::vector<std::size_t> hurst;
    std::vector<std::size_t> fractal;
    std::vector<std::size_t> entropy;
};

/// Rank of each record (input order) by its absolute deviation in each measure.
inline ComponentRanks component_rankings(std::span<const EfficiencyRecord> records,
                                         const Measures& targets = EfficiencyConfig{}.targets) {
    return {
        detail::rank_by(records, [&](const EfficiencyRecord& r) { return std::abs(r.measures.hurst - targets.hurst); }),
        detail::rank_by(records,
                        [&](const EfficiencyRecord& r) { return std::abs(r.measures.fractal - targets.fractal); }),
        detail::rank_by(records,
                        [&](const EfficiencyRecord& r) { return std::abs(r.measures.entropy - targets.entropy); }),
    };
}

/// Spearman's rho for two tie-free rank vectors (permutations of 1..N).
inline double spearman(std::span<const std::size_t> a, std::span<const std::size_t> b) {
    if (a.size() != b.size()) throw InvalidArgumentError("rank vectors differ in length");
    const std::size_t n = a.size();
    if (n < 2) throw InvalidArgumentError("Spearman needs at least two ranks");
    auto check_permutation = [n](std::span<const std::size_t> v) {
        std::vector<bool> seen(n + 1, false);
        for (std::size_t r : v) {
            if (r < 1 || r > n || seen[r]) throw InvalidArgumentError("ranks must be a permutation of 1..N");
            seen[r] = true;
        }
    };
    check_permutation(a);
    check_permutation(b);
    double sum_sq = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double d = static_cast<double>(a[i]) - static_cast<double>(b[i]);
        sum_sq += d * d;
    }
    const double nn = static_cast<double>(n);
    return 1.0 - 6.0 * sum_sq / (nn * (nn * nn - 1.0));
}

/// Full per-series pipeline. `returns` feed the Hurst and entropy estimators,
/// the log-price `path` (one point longer) feeds the fractal estimators.
/// Estimator failures are rethrown as AnalysisError tagged with the ticker.
inline EfficiencyRecord analyze_series(const ReturnSeries& returns, const LogPriceSeries& path,
                                       const EfficiencyConfig& cfg, std::string country = {}) {
    cfg.validate();
    const std::string& ticker = returns.ticker;
    try {
        if (path.values.size() != returns.values.size() + 1)
            throw InvalidArgumentError("log-price path must be one point longer than the return series");
        const std::span<const double> x(returns.values);
        const auto pgram = periodogram(x);
        const std::size_t m = bandwidth(x.size(), cfg.bandwidth_exponent);
        SeriesDetails d;
        d.length = x.size();
        d.local_whittle = local_whittle(pgram, m);
        d.gph = gph(pgram, m);
        d.hall_wood = hall_wood(path.values);
        d.genton = genton(path.values);
        d.entropy = normalized_apen(x, cfg.entropy);
        auto record = make_record(ticker, std::move(country),
                                  combine_estimates(d.local_whittle, d.gph, d.hall_wood, d.genton, d.entropy), cfg);
        record.details = d;
        return record;
    } catch (const AnalysisError&) {
        throw;
    } catch (const Error& e) {
        throw AnalysisError(ticker, e.what());
    }
}

inline EfficiencyRecord analyze_prices(const PriceSeries& prices, const EfficiencyConfig& cfg,
                                       std::string country = {}) {
    return analyze_series(to_log_returns(prices), to_log_prices(prices), cfg, std::move(country));
}

}  // namespace effidx
