#pragma once

// Fractal dimension of a sample path from its scaling at lags 1 and 2.
//
// A path of N points x[0..N-1] is read as values on the grid i/n with
// n = N - 1 increments.

#include <cmath>
#include <cstddef>
#include <span>
#include <string>
#include <string_view>

#include "effidx/detail/numeric.hpp"
#include "effidx/error.hpp"

namespace effidx {

enum class FractalMethod { HallWood, Genton };

inline std::string_view to_string(FractalMethod m) { return m == FractalMethod::HallWood ? "hall_wood" : "genton"; }

struct FractalEstimate {
    double value = 0.0;
    FractalMethod method = FractalMethod::HallWood;
    bool out_of_range = false;  // value outside (1, 2]; reported raw, never clamped
};

struct ScaleStatistics {
    std::size_t n = 0;  // number of increments
    double abs_lag1 = 0.0;
    double abs_lag2 = 0.0;
    double variogram_lag1 = 0.0;
    double variogram_lag2 = 0.0;
};

namespace detail {

inline void require_path(std::span<const double> x, std::size_t lag) {
    if (lag != 1 && lag != 2) throw InvalidArgumentError("lag must be 1 or 2");
    if (x.size() < 2 * lag + 1) throw InsufficientDataError("path too short for lag " + std::to_string(lag));
    if (!all_finite(x)) throw InvalidArgumentError("path contains non-finite values");
}

inline FractalEstimate make_fractal(double value, FractalMethod method) {
    return {value, method, !(value > 1.0 && value <= 2.0)};
}

}  // namespace detail

/// Box-counting statistic (l/n) * sum_{i=1}^{floor(n/l)} |x[i l] - x[(i-1) l]|.
inline double abs_scale(std::span<const double> x, std::size_t lag) {
    detail::require_path(x, lag);
    const std::size_t n = x.size() - 1;
    double sum = 0.0;
    for (std::size_t i = 1; i <= n / lag; ++i) sum += std::abs(x[i * lag] - x[(i - 1) * lag]);
    return sum * static_cast<double>(lag) / static_cast<double>(n);
}

/// Half the mean squared lag-l increment over all N - l available pairs.
inline double variogram2(std::span<const double> x, std::size_t lag) {
    detail::require_path(x, lag);
    double sum = 0.0;
    for (std::size_t i = lag; i < x.size(); ++i) {
        const double d = x[i] - x[i - lag];
        sum += d * d;
    }
    return sum / (2.0 * static_cast<double>(x.size() - lag));
}

inline ScaleStatistics scale_statistics(std::span<const double> x) {
    return {x.size() - 1, abs_scale(x, 1), abs_scale(x, 2), variogram2(x, 1), variogram2(x, 2)};
}

inline constexpr std::size_t kMinPathLength = 8;

/// Hall-Wood estimator with two scales: D = 2 - log2(A(2/n) / A(1/n)).
inline FractalEstimate hall_wood(std::span<const double> x) {
    if (x.size() < kMinPathLength) throw InsufficientDataError("Hall-Wood needs a path of at least 8 points");
    const double a1 = abs_scale(x, 1);
    const double a2 = abs_scale(x, 2);
    if (!(a1 > 0.0 && a2 > 0.0)) throw DegenerateSeriesError("Hall-Wood: zero absolute-deviation statistic");
    return detail::make_fractal(2.0 - std::log2(a2 / a1), FractalMethod::HallWood);
}

/// Genton variogram estimator with two scales: D = 2 - log2(V(2/n) / V(1/n)) / 2.
inline FractalEstimate genton(std::span<const double> x) {
    if (x.size() < kMinPathLength) throw InsufficientDataError("Genton needs a path of at least 8 points");
    const double v1 = variogram2(x, 1);
    const double v2 = variogram2(x, 2);
    if (!(v1 > 0.0 && v2 > 0.0)) throw DegenerateSeriesError("Genton: zero variogram");
    return detail::make_fractal(2.0 - std::log2(v2 / v1) / 2.0, FractalMethod::Genton);
}

}  // namespace effidx
