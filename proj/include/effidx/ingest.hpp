#pragma once

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstddef>
#include <istream>
#include <optional>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "effidx/detail/numeric.hpp"
#include "effidx/error.hpp"

namespace effidx {

/// Shortest price history accepted; every downstream estimator needs at least this much.
inline constexpr std::size_t kMinObservations = 32;

struct PriceObservation {
    std::chrono::sys_days date;
    double close;
};

struct PriceSeries {
    std::string ticker;
    std::vector<PriceObservation> observations;

    [[nodiscard]] std::size_t size() const noexcept { return observations.size(); }
};

/// Natural log of closing prices: the sample path fed to the fractal-dimension estimators.
struct LogPriceSeries {
    std::string ticker;
    std::vector<double> values;
};

/// Log returns ln P_t - ln P_{t-1}: input to the Hurst and entropy estimators.
struct ReturnSeries {
    std::string ticker;
    std::vector<double> values;
};

enum class KpssBracket { Above10, Above5, Above2_5, Above1, AtMost1 };

inline std::string_view to_string(KpssBracket b) {
    switch (b) {
        case KpssBracket::Above10: return ">0.10";
        case KpssBracket::Above5: return ">0.05";
        case KpssBracket::Above2_5: return ">0.025";
        case KpssBracket::Above1: return ">0.01";
        case KpssBracket::AtMost1: return "\xE2\x89\xA4" "0.01";  // U+2264
    }
    return "";
}

struct KpssResult {
    double statistic;
    KpssBracket p_bracket;
    std::size_t lag;

    /// True when the level-stationarity null is rejected at the 5% level.
    [[nodiscard]] bool rejects_at_5pct() const noexcept {
        return p_bracket == KpssBracket::Above2_5 || p_bracket == KpssBracket::Above1 ||
               p_bracket == KpssBracket::AtMost1;
    }
};

struct StatsSummary {
    double mean;
    double min;
    double max;
    double sd;
    double skewness;
    double excess_kurtosis;
    std::optional<KpssResult> kpss;  // absent when the series is shorter than kKpssMinLength
};

namespace detail {

inline std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
    return s;
}

inline std::optional<std::chrono::sys_days> parse_iso_date(std::string_view s) {
    if (s.size() != 10 || s[4] != '-' || s[7] != '-') return std::nullopt;
    auto field = [&](std::size_t pos, std::size_t len) -> std::optional<int> {
        int v = 0;
        auto [ptr, ec] = std::from_chars(s.data() + pos, s.data() + pos + len, v);
        if (ec != std::errc{} || ptr != s.data() + pos + len) return std::nullopt;
        return v;
    };
    auto y = field(0, 4);
    auto m = field(5, 2);
    auto d = field(8, 2);
    if (!y || !m || !d) return std::nullopt;
    std::chrono::year_month_day ymd{std::chrono::year{*y}, std::chrono::month{static_cast<unsigned>(*m)},
                                    std::chrono::day{static_cast<unsigned>(*d)}};
    if (!ymd.ok()) return std::nullopt;
    return std::chrono::sys_days{ymd};
}

}  // namespace detail

/// Parses `date,close` rows (ISO 8601 dates, header `date,close` skipped, blank lines ignored).
inline PriceSeries parse_price_csv(std::istream& in, std::string ticker) {
    PriceSeries out{std::move(ticker), {}};
    std::string raw;
    std::size_t line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        std::string_view line = detail::trim(raw);
        if (line_no == 1 && line.size() >= 3 && static_cast<unsigned char>(line[0]) == 0xEF &&
            static_cast<unsigned char>(line[1]) == 0xBB && static_cast<unsigned char>(line[2]) == 0xBF)
            line.remove_prefix(3);
        if (line.empty() || line == "date,close") continue;

        const auto comma = line.find(',');
        if (comma == std::string_view::npos || line.find(',', comma + 1) != std::string_view::npos)
            throw ParseError(line_no, "expected two fields `date,close`");
        const auto date_text = detail::trim(line.substr(0, comma));
        const auto price_text = detail::trim(line.substr(comma + 1));

        const auto date = detail::parse_iso_date(date_text);
        if (!date) throw ParseError(line_no, "invalid ISO 8601 date '" + std::string(date_text) + "'");

        double close = 0.0;
        auto [ptr, ec] = std::from_chars(price_text.data(), price_text.data() + price_text.size(), close);
        if (ec != std::errc{} || ptr != price_text.data() + price_text.size())
            throw ParseError(line_no, "non-numeric price '" + std::string(price_text) + "'");
        if (!std::isfinite(close) || close <= 0.0)
            throw ParseError(line_no, "price must be positive, got '" + std::string(price_text) + "'");

        if (!out.observations.empty() && *date <= out.observations.back().date)
            throw OrderingError(line_no, "dates must be strictly increasing");
        out.observations.push_back({*date, close});
    }
    if (out.observations.size() < kMinObservations)
        throw InsufficientDataError("need at least " + std::to_string(kMinObservations) + " observations, got " +
                                    std::to_string(out.observations.size()));
    return out;
}

inline PriceSeries parse_price_csv(std::string_view text, std::string ticker) {
    std::istringstream in{std::string(text)};
    return parse_price_csv(in, std::move(ticker));
}

inline LogPriceSeries to_log_prices(const PriceSeries& p) {
    LogPriceSeries out{p.ticker, {}};
    out.values.reserve(p.size());
    for (const auto& obs : p.observations) out.values.push_back(std::log(obs.close));
    return out;
}

inline ReturnSeries to_log_returns(const PriceSeries& p) {
    ReturnSeries out{p.ticker, {}};
    if (p.size() < 2) return out;
    out.values.reserve(p.size() - 1);
    double prev = std::log(p.observations.front().close);
    for (std::size_t t = 1; t < p.size(); ++t) {
        const double cur = std::log(p.observations[t].close);
        out.values.push_back(cur - prev);
        prev = cur;
    }
    return out;
}

inline constexpr std::size_t kKpssMinLength = 32;

/// Short-lag Bartlett bandwidth floor(4 (T/100)^{1/4}).
inline std::size_t kpss_default_lag(std::size_t n) {
    return static_cast<std::size_t>(std::floor(4.0 * std::pow(static_cast<double>(n) / 100.0, 0.25)));
}

inline KpssBracket kpss_bracket(double stat) {
    // Level-stationarity critical values at 10%, 5%, 2.5% and 1%.
    if (stat < 0.347) return KpssBracket::Above10;
    if (stat < 0.463) return KpssBracket::Above5;
    if (stat < 0.574) return KpssBracket::Above2_5;
    if (stat < 0.739) return KpssBracket::Above1;
    return KpssBracket::AtMost1;
}

/// KPSS level-stationarity statistic with Bartlett-kernel long-run variance.
/// `lag` defaults to kpss_default_lag(T).
inline KpssResult kpss_level(std::span<const double> x, std::optional<std::size_t> lag = std::nullopt) {
    const std::size_t n = x.size();
    if (n < kKpssMinLength)
        throw InsufficientDataError("KPSS needs at least " + std::to_string(kKpssMinLength) + " observations");
    if (!detail::all_finite(x)) throw InvalidArgumentError("KPSS input contains non-finite values");
    const std::size_t l = std::min(lag.value_or(kpss_default_lag(n)), n - 1);

    const double mu = detail::mean(x);
    std::vector<double> e(n);
    for (std::size_t t = 0; t < n; ++t) e[t] = x[t] - mu;

    double partial = 0.0;
    double eta = 0.0;
    for (double v : e) {
        partial += v;
        eta += partial * partial;
    }
    const double nn = static_cast<double>(n);
    eta /= nn * nn;

    double lrv = 0.0;
    for (double v : e) lrv += v * v;
    for (std::size_t s = 1; s <= l; ++s) {
        double acc = 0.0;
        for (std::size_t t = s; t < n; ++t) acc += e[t] * e[t - s];
        lrv += 2.0 * (1.0 - static_cast<double>(s) / static_cast<double>(l + 1)) * acc;
    }
    lrv /= nn;
    if (!(lrv > 0.0)) throw DegenerateSeriesError("KPSS long-run variance is zero");

    const double stat = eta / lrv;
    return {stat, kpss_bracket(stat), l};
}

inline KpssResult kpss_level(const ReturnSeries& r, std::optional<std::size_t> lag = std::nullopt) {
    return kpss_level(std::span<const double>(r.values), lag);
}

/// Sample statistics of a return series. sd uses T - 1; skewness and excess
/// kurtosis use central moments with denominator T. KPSS is filled for T >= 32.
inline StatsSummary describe(std::span<const double> x) {
    const std::size_t n = x.size();
    if (n < 3) throw InsufficientDataError("describe needs at least 3 observations");
    if (!detail::all_finite(x)) throw InvalidArgumentError("series contains non-finite values");
    const auto [lo, hi] = std::minmax_element(x.begin(), x.end());
    if (*lo == *hi) throw DegenerateSeriesError("zero variance: skewness and kurtosis undefined");

    const double mu = detail::mean(x);
    double m2 = 0.0, m3 = 0.0, m4 = 0.0;
    for (double v : x) {
        const double d = v - mu;
        const double d2 = d * d;
        m2 += d2;
        m3 += d2 * d;
        m4 += d2 * d2;
    }
    const double nn = static_cast<double>(n);
    const double sd = std::sqrt(m2 / (nn - 1.0));
    m2 /= nn;
    m3 /= nn;
    m4 /= nn;

    StatsSummary s{};
    s.mean = mu;
    s.min = *lo;
    s.max = *hi;
    s.sd = sd;
    s.skewness = m3 / std::pow(m2, 1.5);
    s.excess_kurtosis = m4 / (m2 * m2) - 3.0;
    if (n >= kKpssMinLength) s.kpss = kpss_level(x);
    return s;
}

inline StatsSummary describe(const ReturnSeries& r) { return describe(std::span<const double>(r.values)); }

inline constexpr std::string_view kStatsCsvHeader = "ticker,mean,min,max,sd,skewness,ex_kurtosis,kpss,p_value";

/// One CSV row in descriptive-statistics column order; KPSS columns empty when absent.
inline std::string to_csv_row(std::string_view ticker, const StatsSummary& s) {
    using detail::fixed;
    std::string row(ticker);
    for (double v : {s.mean, s.min, s.max, s.sd, s.skewness, s.excess_kurtosis}) {
        row += ',';
        row += fixed(v, 6);
    }
    row += ',';
    if (s.kpss) {
        row += fixed(s.kpss->statistic, 4);
        row += ',';
        row += to_string(s.kpss->p_bracket);
    } else {
        row += ',';
    }
    return row;
}

}  // namespace effidx
