#pragma once

// Seeded synthetic series used as estimator oracles.
//
// All randomness flows through Rng, whose output depends only on the seed:
// std::mt19937_64 is fully specified by the standard, and the uniform,
// Gaussian and bounded-integer transforms below are written out rather than
// taken from <random>'s implementation-defined distributions.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <numbers>
#include <optional>
#include <random>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

#include "effidx/detail/fft.hpp"
#include "effidx/error.hpp"

namespace effidx::synth {

inline constexpr std::string_view kGeneratorName = "mt19937_64 + Box-Muller";

class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }

    /// Uniform on [0, 1) with 53 random bits.
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    /// Standard normal via the Box-Muller transform.
    double normal() {
        if (cached_) return *std::exchange(cached_, std::nullopt);
        const double u1 = (static_cast<double>(engine_() >> 11) + 1.0) * 0x1.0p-53;  // (0, 1]
        const double u2 = uniform();
        const double radius = std::sqrt(-2.0 * std::log(u1));
        const double angle = 2.0 * std::numbers::pi * u2;
        cached_ = radius * std::sin(angle);
        return radius * std::cos(angle);
    }

    /// Uniform integer in [0, bound) by rejection, bound > 0.
    std::uint64_t below(std::uint64_t bound) {
        const std::uint64_t threshold = (0 - bound) % bound;
        for (;;) {
            const std::uint64_t r = engine_();
            if (r >= threshold) return r % bound;
        }
    }

private:
    std::mt19937_64 engine_;
    std::optional<double> cached_;
};

namespace detail {

inline void require_hurst(double h) {
    if (!(h > 0.0 && h < 1.0)) throw InvalidArgumentError("Hurst parameter must lie in (0, 1)");
}

inline void require_common(std::size_t n, double sigma) {
    if (n < 8) throw InvalidArgumentError("series length must be at least 8");
    if (!(sigma > 0.0) || !std::isfinite(sigma)) throw InvalidArgumentError("sigma must be positive");
}

}  // namespace detail

/// Autocovariance of fractional Gaussian noise at lag k.
inline double fgn_autocovariance(double hurst, double sigma, std::size_t k) {
    const double kk = static_cast<double>(k);
    const double two_h = 2.0 * hurst;
    const double lower = k == 0 ? 1.0 : std::pow(kk - 1.0, two_h);
    return 0.5 * sigma * sigma * (std::pow(kk + 1.0, two_h) - 2.0 * std::pow(kk, two_h) + lower);
}

/// Eigenvalues of the size-2T circulant embedding of the fGn covariance.
inline std::vector<double> circulant_eigenvalues(double hurst, std::size_t n, double sigma = 1.0) {
    const std::size_t m = 2 * n;
    std::vector<std::complex<double>> row(m);
    for (std::size_t k = 0; k < m; ++k) row[k] = fgn_autocovariance(hurst, sigma, k <= n ? k : m - k);
    const auto spectrum = effidx::detail::fft_forward(std::span<const std::complex<double>>(row));
    std::vector<double> eig(m);
    for (std::size_t k = 0; k < m; ++k) eig[k] = spectrum[k].real();
    return eig;
}

/// Exact fGn by Cholesky factorisation of the T x T covariance matrix. O(T^3).
inline std::vector<double> fgn_cholesky(double hurst, std::size_t n, double sigma, std::uint64_t seed) {
    detail::require_hurst(hurst);
    detail::require_common(n, sigma);
    std::vector<double> gamma(n);
    for (std::size_t k = 0; k < n; ++k) gamma[k] = fgn_autocovariance(hurst, sigma, k);

    // Lower-triangular factor, row-major packed in a dense n x n buffer.
    std::vector<double> chol(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j <= i; ++j) {
            double s = gamma[i - j];
            for (std::size_t k = 0; k < j; ++k) s -= chol[i * n + k] * chol[j * n + k];
            if (i == j) {
                if (!(s > 0.0)) throw Error("fGn covariance matrix is not positive definite");
                chol[i * n + i] = std::sqrt(s);
            } else {
                chol[i * n + j] = s / chol[j * n + j];
            }
        }
    }
    Rng rng(seed);
    std::vector<double> z(n);
    for (auto& v : z) v = rng.normal();
    std::vector<double> x(n, 0.0);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = 0; k <= i; ++k) x[i] += chol[i * n + k] * z[k];
    return x;
}

inline constexpr std::size_t kCholeskyFallbackMax = 1024;

/// Fractional Gaussian noise by circulant embedding (Davies-Harte). Falls back
/// to Cholesky for T <= 1024 if the embedding has a negative eigenvalue.
inline std::vector<double> fgn(double hurst, std::size_t n, double sigma, std::uint64_t seed) {
    detail::require_hurst(hurst);
    detail::require_common(n, sigma);

    auto eig = circulant_eigenvalues(hurst, n, sigma);
    double largest = 0.0;
    for (double v : eig) largest = std::max(largest, std::abs(v));
    for (auto& v : eig) {
        if (v < -1e-10 * largest) {
            if (n <= kCholeskyFallbackMax) return fgn_cholesky(hurst, n, sigma, seed);
            throw Error("circulant embedding is not nonnegative definite");
        }
        v = std::max(v, 0.0);
    }

    const std::size_t m = 2 * n;
    Rng rng(seed);
    std::vector<std::complex<double>> y(m);
    y[0] = std::sqrt(eig[0]) * rng.normal();
    y[n] = std::sqrt(eig[n]) * rng.normal();
    for (std::size_t k = 1; k < n; ++k) {
        const double scale = std::sqrt(eig[k] / 2.0);
        const double re = rng.normal();
        const double im = rng.normal();
        y[k] = {scale * re, scale * im};
        y[m - k] = std::conj(y[k]);
    }
    const auto w = effidx::detail::fft_forward(std::span<const std::complex<double>>(y));
    const double norm = 1.0 / std::sqrt(static_cast<double>(m));
    std::vector<double> x(n);
    for (std::size_t t = 0; t < n; ++t) x[t] = w[t].real() * norm;
    return x;
}

/// Fractional Brownian motion path: cumulative sum of fgn(), same length.
inline std::vector<double> fbm_path(double hurst, std::size_t n, double sigma, std::uint64_t seed) {
    auto x = fgn(hurst, n, sigma, seed);
    for (std::size_t t = 1; t < n; ++t) x[t] += x[t - 1];
    return x;
}

inline std::vector<double> white_noise(std::size_t n, double sigma, std::uint64_t seed) {
    detail::require_common(n, sigma);
    Rng rng(seed);
    std::vector<double> x(n);
    for (auto& v : x) v = sigma * rng.normal();
    return x;
}

inline constexpr std::size_t kAr1BurnIn = 1000;

/// x_t = phi x_{t-1} + e_t with Gaussian innovations; the first 1000 draws are discarded.
inline std::vector<double> ar1(double phi, std::size_t n, double sigma, std::uint64_t seed) {
    if (!(phi > -1.0 && phi < 1.0)) throw InvalidArgumentError("AR(1) coefficient must lie in (-1, 1)");
    detail::require_common(n, sigma);
    Rng rng(seed);
    double state = 0.0;
    for (std::size_t t = 0; t < kAr1BurnIn; ++t) state = phi * state + sigma * rng.normal();
    std::vector<double> x(n);
    for (auto& v : x) {
        state = phi * state + sigma * rng.normal();
        v = state;
    }
    return x;
}

/// Fisher-Yates permutation, deterministic given the seed.
inline std::vector<double> shuffle(std::span<const double> x, std::uint64_t seed) {
    std::vector<double> out(x.begin(), x.end());
    Rng rng(seed);
    for (std::size_t i = out.size(); i > 1; --i) {
        const auto j = static_cast<std::size_t>(rng.below(i));
        std::swap(out[i - 1], out[j]);
    }
    return out;
}

enum class GeneratorKind { FGN, FBM, WhiteNoise, AR1, Shuffle };

struct GeneratorSpec {
    GeneratorKind kind = GeneratorKind::WhiteNoise;
    double param = 0.5;  // H for FGN/FBM, phi for AR1; unused otherwise
    std::size_t length = 1024;
    double sigma = 1.0;
    std::uint64_t seed = 0;
};

/// Dispatches on spec.kind. Shuffle permutes `source` and ignores length/sigma.
inline std::vector<double> generate(const GeneratorSpec& spec, std::span<const double> source = {}) {
    switch (spec.kind) {
        case GeneratorKind::FGN: return fgn(spec.param, spec.length, spec.sigma, spec.seed);
        case GeneratorKind::FBM: return fbm_path(spec.param, spec.length, spec.sigma, spec.seed);
        case GeneratorKind::WhiteNoise: return white_noise(spec.length, spec.sigma, spec.seed);
        case GeneratorKind::AR1: return ar1(spec.param, spec.length, spec.sigma, spec.seed);
        case GeneratorKind::Shuffle:
            if (source.empty()) throw InvalidArgumentError("shuffle needs a nonempty source series");
            return shuffle(source, spec.seed);
    }
    throw InvalidArgumentError("unknown generator kind");
}

}  // namespace effidx::synth
