#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "effidx/detail/numeric.hpp"
#include "effidx/error.hpp"
#include "effidx/synth.hpp"

namespace effidx {

struct CorrelationSum {
    std::vector<double> per_window;  // C_i^m(r), i = 0..T-m
    double average = 0.0;            // C^m(r)
};

namespace detail {

inline void require_embedding(std::span<const double> x, std::size_t m, double r, std::size_t extra) {
    if (m == 0) throw InvalidArgumentError("embedding dimension must be positive");
    if (!(r > 0.0) || !std::isfinite(r)) throw InvalidArgumentError("tolerance r must be positive");
    if (x.size() < m + extra) throw InsufficientDataError("series shorter than the embedding window");
    if (!all_finite(x)) throw InvalidArgumentError("series contains non-finite values");
}

inline bool windows_match(const double* a, const double* b, std::size_t m, double r) {
    for (std::size_t k = 0; k < m; ++k)
        if (std::abs(a[k] - b[k]) > r) return false;
    return true;
}

/// Log of Phi^m and Phi^{m+1} from one pass over window pairs (self-matches included).
inline std::pair<double, double> phi_pair(std::span<const double> x, std::size_t m, double r) {
    const std::size_t n = x.size();
    const std::size_t windows_m = n - m + 1;
    const std::size_t windows_m1 = n - m;
    std::vector<std::size_t> count_m(windows_m, 1), count_m1(windows_m1, 1);
    const double* p = x.data();
    for (std::size_t i = 0; i < windows_m; ++i) {
        for (std::size_t j = i + 1; j < windows_m; ++j) {
            if (!windows_match(p + i, p + j, m, r)) continue;
            ++count_m[i];
            ++count_m[j];
            // Both windows extend by one value only when j < n - m.
            if (j < windows_m1 && std::abs(p[i + m] - p[j + m]) <= r) {
                ++count_m1[i];
                ++count_m1[j];
            }
        }
    }
    auto phi = [](const std::vector<std::size_t>& counts) {
        const double total = static_cast<double>(counts.size());
        double acc = 0.0;
        for (std::size_t c : counts) acc += std::log(static_cast<double>(c) / total);
        return acc / total;
    };
    return {phi(count_m), phi(count_m1)};
}

}  // namespace detail

/// C_i^m(r): fraction of length-m windows within Chebyshev distance r of window i.
inline CorrelationSum correlation_sum(std::span<const double> x, std::size_t m, double r) {
    detail::require_embedding(x, m, r, 1);
    const std::size_t windows = x.size() - m + 1;
    CorrelationSum out;
    out.per_window.assign(windows, 0.0);
    const double* p = x.data();
    for (std::size_t i = 0; i < windows; ++i) {
        std::size_t count = 0;
        for (std::size_t j = 0; j < windows; ++j)
            if (detail::windows_match(p + i, p + j, m, r)) ++count;
        out.per_window[i] = static_cast<double>(count) / static_cast<double>(windows);
    }
    out.average = detail::mean(out.per_window);
    return out;
}

/// Approximate entropy Phi^m(r) - Phi^{m+1}(r). Rounding negatives down to -1e-12 are snapped to 0.
inline double apen(std::span<const double> x, std::size_t m, double r) {
    detail::require_embedding(x, m, r, 2);
    const auto [phi_m, phi_m1] = detail::phi_pair(x, m, r);
    double value = phi_m - phi_m1;
    if (value < 0.0 && value >= -1e-12) value = 0.0;
    return value;
}

struct EntropyParams {
    std::size_t embedding = 2;
    double r_multiplier = 0.2;  // tolerance r = r_multiplier * sd(x)
    std::size_t surrogates = 10;
    std::uint64_t seed = 42;
};

struct EntropyEstimate {
    double raw_apen = 0.0;
    double normalized = 0.0;  // raw / mean ApEn of shuffled surrogates
    std::size_t embedding = 0;
    double tolerance = 0.0;
    std::size_t surrogate_count = 0;
    std::uint64_t seed = 0;
};

/// Seed of the k-th surrogate permutation derived from the base seed (SplitMix64 step).
inline std::uint64_t surrogate_seed(std::uint64_t seed, std::size_t k) {
    std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (static_cast<std::uint64_t>(k) + 1);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

/// ApEn rescaled so a fully random ordering of the same values scores 1.
inline EntropyEstimate normalized_apen(std::span<const double> x, const EntropyParams& params) {
    if (params.surrogates < 1) throw InvalidArgumentError("at least one surrogate is required");
    if (!(params.r_multiplier > 0.0)) throw InvalidArgumentError("r multiplier must be positive");
    detail::require_embedding(x, params.embedding, 1.0, 2);
    const double sd = detail::sample_sd(x);
    if (!(sd > 0.0)) throw DegenerateSeriesError("zero variance: entropy tolerance undefined");
    const double r = params.r_multiplier * sd;

    EntropyEstimate out;
    out.raw_apen = apen(x, params.embedding, r);
    double surrogate_total = 0.0;
    for (std::size_t k = 0; k < params.surrogates; ++k) {
        const auto shuffled = synth::shuffle(x, surrogate_seed(params.seed, k));
        surrogate_total += apen(shuffled, params.embedding, r);
    }
    const double baseline = surrogate_total / static_cast<double>(params.surrogates);
    if (!(baseline > 0.0)) throw DegenerateSeriesError("surrogate ApEn is zero; normalisation undefined");
    out.normalized = out.raw_apen / baseline;
    out.embedding = params.embedding;
    out.tolerance = r;
    out.surrogate_count = params.surrogates;
    out.seed = params.seed;
    return out;
}

}  // namespace effidx
