#pragma once

#include <fftw3.h>

#include <complex>
#include <cstddef>
#include <mutex>
#include <span>
#include <stdexcept>
#include <vector>

namespace effidx::detail {

// FFTW's planner is not reentrant; execution with a private plan is.
inline std::mutex& fftw_planner_mutex() {
    static std::mutex m;
    return m;
}

/// Forward DFT X_k = sum_t x_t exp(-2 pi i k t / n) of a complex sequence.
inline std::vector<std::complex<double>> fft_forward(std::span<const std::complex<double>> x) {
    const int n = static_cast<int>(x.size());
    std::vector<std::complex<double>> in(x.begin(), x.end());
    std::vector<std::complex<double>> out(x.size());
    if (n == 0) return out;
    auto* pin = reinterpret_cast<fftw_complex*>(in.data());
    auto* pout = reinterpret_cast<fftw_complex*>(out.data());
    fftw_plan plan;
    {
        std::lock_guard lock(fftw_planner_mutex());
        plan = fftw_plan_dft_1d(n, pin, pout, FFTW_FORWARD, FFTW_ESTIMATE);
    }
    if (plan == nullptr) throw std::runtime_error("FFTW planning failed");
    fftw_execute(plan);
    {
        std::lock_guard lock(fftw_planner_mutex());
        fftw_destroy_plan(plan);
    }
    return out;
}

inline std::vector<std::complex<double>> fft_forward(std::span<const double> x) {
    std::vector<std::complex<double>> z(x.begin(), x.end());
    return fft_forward(std::span<const std::complex<double>>(z));
}

}  // namespace effidx::detail
