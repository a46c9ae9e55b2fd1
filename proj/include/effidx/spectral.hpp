#pragma once

// Periodogram and the frequency-domain Hurst exponent estimators
// (local Whittle and GPH log-periodogram regression).

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>
#include <utility>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "effidx/detail/fft.hpp"
#include "effidx/detail/numeric.hpp"
#include "effidx/error.hpp"

namespace effidx {

struct Periodogram {
    std::size_t length = 0;            // T
    std::vector<double> frequencies;   // 2 pi j / T, j = 1..floor(T/2)
    std::vector<double> ordinates;     // I(lambda_j)

    [[nodiscard]] std::size_t size() const noexcept { return ordinates.size(); }
};

enum class PeriodogramMethod { FFT, Direct };

/// I(lambda_j) = |sum_t x_t exp(-i lambda_j t)|^2 / T of the demeaned series.
inline Periodogram periodogram(std::span<const double> x, PeriodogramMethod method = PeriodogramMethod::FFT) {
    const std::size_t n = x.size();
    if (n < 8) throw InsufficientDataError("periodogram needs at least 8 observations");
    if (!detail::all_finite(x)) throw InvalidArgumentError("periodogram input contains non-finite values");

    const double mu = detail::mean(x);
    std::vector<double> centered(n);
    for (std::size_t t = 0; t < n; ++t) centered[t] = x[t] - mu;

    const std::size_t half = n / 2;
    const double nn = static_cast<double>(n);
    Periodogram p;
    p.length = n;
    p.frequencies.resize(half);
    p.ordinates.resize(half);
    for (std::size_t j = 1; j <= half; ++j) p.frequencies[j - 1] = 2.0 * std::numbers::pi * static_cast<double>(j) / nn;

    if (method == PeriodogramMethod::FFT) {
        const auto spectrum = detail::fft_forward(std::span<const double>(centered));
        for (std::size_t j = 1; j <= half; ++j) p.ordinates[j - 1] = std::norm(spectrum[j]) / nn;
    } else {
        for (std::size_t j = 1; j <= half; ++j) {
            double re = 0.0, im = 0.0;
            for (std::size_t t = 0; t < n; ++t) {
                // Reduce j*t modulo T before scaling so the phase stays accurate.
                const double phase = 2.0 * std::numbers::pi * static_cast<double>((j * t) % n) / nn;
                re += centered[t] * std::cos(phase);
                im -= centered[t] * std::sin(phase);
            }
            p.ordinates[j - 1] = (re * re + im * im) / nn;
        }
    }
    return p;
}

/// Number of low frequencies used by both estimators: min(floor(T^q), floor(T/2)), at least 4.
inline std::size_t bandwidth(std::size_t n, double q) {
    if (n < 8) throw InvalidArgumentError("bandwidth needs T >= 8");
    if (!(q > 0.0 && q < 1.0)) throw InvalidArgumentError("bandwidth exponent must lie in (0, 1)");
    const auto power = static_cast<std::size_t>(std::floor(std::pow(static_cast<double>(n), q) + 1e-9));
    return std::max<std::size_t>(std::min(power, n / 2), 4);
}

enum class HurstMethod { LocalWhittle, GPH };

inline std::string_view to_string(HurstMethod m) {
    return m == HurstMethod::LocalWhittle ? "local_whittle" : "gph";
}

inline constexpr double kHurstUpper = 1.0 - 1e-6;

struct HurstEstimate {
    double value = 0.0;
    HurstMethod method = HurstMethod::LocalWhittle;
    std::size_t bandwidth = 0;
    double std_error = 0.0;  // asymptotic standard error
    bool clamped = false;  // GPH estimate was pulled back into [0, 1)
};

namespace detail {

inline void check_band(const Periodogram& p, std::size_t m) {
    if (m < 4) throw InvalidArgumentError("bandwidth must be at least 4");
    if (m > p.size()) throw InvalidArgumentError("bandwidth " + std::to_string(m) + " exceeds T/2");
}

/// Local Whittle objective over the lowest m ordinates, with ordinates
/// normalised by their band mean so the value is independent of scale.
class WhittleObjective {
public:
    WhittleObjective(const Periodogram& p, std::size_t m) : log_freq_(m), ordinate_(m) {
        double total = 0.0;
        for (std::size_t j = 0; j < m; ++j) total += p.ordinates[j];
        if (!(total > 0.0)) throw DegenerateSpectrumError("all periodogram ordinates in the band are zero");
        const double scale = static_cast<double>(m) / total;
        for (std::size_t j = 0; j < m; ++j) {
            log_freq_[j] = std::log(p.frequencies[j]);
            ordinate_[j] = p.ordinates[j] * scale;
        }
        mean_log_freq_ = mean(std::span<const double>(log_freq_));
    }

    [[nodiscard]] double value(double h) const {
        const double e = 2.0 * h - 1.0;
        double acc = 0.0;
        for (std::size_t j = 0; j < ordinate_.size(); ++j) acc += std::exp(e * log_freq_[j]) * ordinate_[j];
        return std::log(acc / static_cast<double>(ordinate_.size())) - e * mean_log_freq_;
    }

    /// First and second derivatives in H; the objective is convex.
    [[nodiscard]] std::pair<double, double> derivatives(double h) const {
        const double e = 2.0 * h - 1.0;
        double w = 0.0, wl = 0.0, wll = 0.0;
        for (std::size_t j = 0; j < ordinate_.size(); ++j) {
            const double wj = std::exp(e * log_freq_[j]) * ordinate_[j];
            w += wj;
            wl += wj * log_freq_[j];
            wll += wj * log_freq_[j] * log_freq_[j];
        }
        const double avg = wl / w;
        return {2.0 * (avg - mean_log_freq_), 4.0 * (wll / w - avg * avg)};
    }

private:
    std::vector<double> log_freq_;
    std::vector<double> ordinate_;
    double mean_log_freq_ = 0.0;
};

}  // namespace detail

/// R(H) of the local Whittle likelihood over the lowest m frequencies.
inline double local_whittle_objective(const Periodogram& p, std::size_t m, double h) {
    detail::check_band(p, m);
    return detail::WhittleObjective(p, m).value(h);
}

/// Local Whittle estimate: a 100-point grid scan on [0, 1), golden-section
/// refinement of the best bracket to width 1e-6, then a safeguarded Newton
/// polish on R'(H) inside that bracket.
inline HurstEstimate local_whittle(const Periodogram& p, std::size_t m) {
    detail::check_band(p, m);
    const detail::WhittleObjective objective(p, m);

    constexpr int kGrid = 100;
    int best = 0;
    double best_value = objective.value(0.0);
    for (int k = 1; k < kGrid; ++k) {
        const double v = objective.value(static_cast<double>(k) / kGrid);
        if (v < best_value) {
            best_value = v;
            best = k;
        }
    }
    double lo = best == 0 ? 0.0 : static_cast<double>(best - 1) / kGrid;
    double hi = std::min(static_cast<double>(best + 1) / kGrid, kHurstUpper);

    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double c = hi - inv_phi * (hi - lo);
    double d = lo + inv_phi * (hi - lo);
    double fc = objective.value(c);
    double fd = objective.value(d);
    while (hi - lo > 1e-6) {
        if (fc < fd) {
            hi = d;
            d = c;
            fd = fc;
            c = hi - inv_phi * (hi - lo);
            fc = objective.value(c);
        } else {
            lo = c;
            c = d;
            fc = fd;
            d = lo + inv_phi * (hi - lo);
            fd = objective.value(d);
        }
    }

    // Convexity makes R' monotone, so the root is bracketed unless the
    // minimum sits on the boundary of [0, 1).
    double h = 0.5 * (lo + hi);
    const double d_lo = objective.derivatives(lo).first;
    const double d_hi = objective.derivatives(hi).first;
    if (d_lo >= 0.0) {
        h = lo;
    } else if (d_hi <= 0.0) {
        h = hi;
    } else {
        for (int it = 0; it < 60; ++it) {
            const auto [g, curv] = objective.derivatives(h);
            if (g == 0.0) break;
            if (g < 0.0) lo = h; else hi = h;
            double next = curv > 0.0 ? h - g / curv : 0.5 * (lo + hi);
            if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
            if (std::abs(next - h) < 1e-15) {
                h = next;
                break;
            }
            h = next;
        }
    }
    h = std::clamp(h, 0.0, kHurstUpper);
    return {h, HurstMethod::LocalWhittle, m, 1.0 / (2.0 * std::sqrt(static_cast<double>(m))), false};
}

inline HurstEstimate local_whittle(std::span<const double> x, std::size_t m) {
    return local_whittle(periodogram(x), m);
}

/// GPH estimate: least squares of log I(lambda_j) on log[4 sin^2(lambda_j / 2)],
/// H = 0.5 - slope. Zero ordinates are dropped. The standard error is
/// pi / sqrt(6 T), the full-spectrum fGn asymptotic, not the bandwidth-based one.
inline HurstEstimate gph(const Periodogram& p, std::size_t m) {
    detail::check_band(p, m);
    std::vector<double> xs, ys;
    xs.reserve(m);
    ys.reserve(m);
    for (std::size_t j = 0; j < m; ++j) {
        if (!(p.ordinates[j] > 0.0)) continue;
        const double s = std::sin(p.frequencies[j] / 2.0);
        xs.push_back(std::log(4.0 * s * s));
        ys.push_back(std::log(p.ordinates[j]));
    }
    if (xs.size() < 4) throw InsufficientDataError("GPH: fewer than 4 positive ordinates in the band");

    const double mx = detail::mean(xs);
    const double my = detail::mean(ys);
    double sxy = 0.0, sxx = 0.0;
    for (std::size_t k = 0; k < xs.size(); ++k) {
        sxy += (xs[k] - mx) * (ys[k] - my);
        sxx += (xs[k] - mx) * (xs[k] - mx);
    }
    const double raw = 0.5 - sxy / sxx;
    const double value = std::clamp(raw, 0.0, kHurstUpper);
    const double se = std::numbers::pi / std::sqrt(6.0 * static_cast<double>(p.length));
    return {value, HurstMethod::GPH, m, se, value != raw};
}

inline HurstEstimate gph(std::span<const double> x, std::size_t m) { return gph(periodogram(x), m); }

}  // namespace effidx
