#pragma once

// Monte Carlo check of every estimator against synthetic series with known
// parameters.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

#include "effidx/detail/numeric.hpp"
#include "effidx/entropy.hpp"
#include "effidx/fractal.hpp"
#include "effidx/spectral.hpp"
#include "effidx/synth.hpp"

namespace effidx {

struct ValidateOptions {
    std::size_t reps = 200;
    std::size_t length = 4096;
    std::uint64_t seed = 42;
    double bandwidth_exponent = 0.5;
};

inline constexpr std::size_t kMinValidateReps = 50;
inline constexpr double kLocalWhittleBiasTol = 0.03;
inline constexpr double kGphBiasTol = 0.04;
inline constexpr double kLocalWhittleSdRelTol = 0.35;
inline constexpr double kFractalBiasTol = 0.07;
inline constexpr double kEntropyTol = 0.05;
inline constexpr std::size_t kEntropyMaxLength = 3000;
inline constexpr std::size_t kEntropyMaxReps = 50;

struct ValidationRow {
    std::string estimator;
    std::string process;
    double truth = 0.0;
    std::size_t reps = 0;
    double mean = 0.0;
    double sd = 0.0;
    std::string criterion;
    bool passed = false;

    [[nodiscard]] double bias() const { return mean - truth; }
};

struct ValidationReport {
    ValidateOptions options;
    std::size_t bandwidth = 0;
    std::vector<ValidationRow> rows;

    [[nodiscard]] bool passed() const {
        return std::all_of(rows.begin(), rows.end(), [](const ValidationRow& r) { return r.passed; });
    }
};

namespace detail {

inline std::pair<double, double> mean_sd(const std::vector<double>& v) {
    return {mean(v), sample_sd(v)};
}

}  // namespace detail

inline ValidationReport run_validation(const ValidateOptions& opt) {
    using detail::fixed;
    if (opt.reps < kMinValidateReps)
        throw InvalidArgumentError("validation needs at least " + std::to_string(kMinValidateReps) + " replications");
    ValidationReport report;
    report.options = opt;
    const std::size_t m = bandwidth(opt.length, opt.bandwidth_exponent);
    report.bandwidth = m;
    const double lw_sd_target = 1.0 / (2.0 * std::sqrt(static_cast<double>(m)));

    for (double h : {0.3, 0.5, 0.7}) {
        std::vector<double> lw, gp;
        for (std::size_t k = 0; k < opt.reps; ++k) {
            const auto x = synth::fgn(h, opt.length, 1.0, opt.seed + k);
            const auto p = periodogram(x);
            lw.push_back(local_whittle(p, m).value);
            gp.push_back(gph(p, m).value);
        }
        const std::string process = "fGn H=" + fixed(h, 1);
        const auto [lw_mean, lw_sd] = detail::mean_sd(lw);
        const bool lw_ok = std::abs(lw_mean - h) < kLocalWhittleBiasTol &&
                           std::abs(lw_sd / lw_sd_target - 1.0) <= kLocalWhittleSdRelTol;
        report.rows.push_back({"local_whittle", process, h, opt.reps, lw_mean, lw_sd,
                               "|bias|<0.03, sd within 35% of " + fixed(lw_sd_target, 4), lw_ok});
        const auto [gp_mean, gp_sd] = detail::mean_sd(gp);
        report.rows.push_back({"gph", process, h, opt.reps, gp_mean, gp_sd, "|bias|<0.04",
                               std::abs(gp_mean - h) < kGphBiasTol});
    }

    for (double h : {0.2, 0.5, 0.8}) {
        std::vector<double> hw, gt;
        for (std::size_t k = 0; k < opt.reps; ++k) {
            const auto path = synth::fbm_path(h, opt.length, 1.0, opt.seed + k);
            hw.push_back(hall_wood(path).value);
            gt.push_back(genton(path).value);
        }
        const std::string process = "fBm H=" + fixed(h, 1);
        const double truth = 2.0 - h;
        for (auto [name, values] : {std::pair{"hall_wood", &hw}, std::pair{"genton", &gt}}) {
            const auto [mu, sd] = detail::mean_sd(*values);
            report.rows.push_back({name, process, truth, opt.reps, mu, sd, "|mean-(2-H)|<0.07",
                                   std::abs(mu - truth) < kFractalBiasTol});
        }
    }

    {
        const std::size_t n = std::min(opt.length, kEntropyMaxLength);
        const std::size_t reps = std::min(opt.reps, kEntropyMaxReps);
        std::vector<double> ae;
        for (std::size_t k = 0; k < reps; ++k) {
            const auto x = synth::white_noise(n, 1.0, opt.seed + k);
            EntropyParams params;
            params.seed = opt.seed + k;
            ae.push_back(normalized_apen(x, params).normalized);
        }
        const auto [mu, sd] = detail::mean_sd(ae);
        report.rows.push_back({"normalized_apen", "iid T=" + std::to_string(n), 1.0, reps, mu, sd, "|mean-1|<=0.05",
                               std::abs(mu - 1.0) <= kEntropyTol});
    }
    return report;
}

inline void print_validation(std::ostream& out, const ValidationReport& r) {
    using detail::fixed;
    out << "generator: " << synth::kGeneratorName << "\n"
        << "seed: " << r.options.seed << "  reps: " << r.options.reps << "  T: " << r.options.length
        << "  bandwidth m: " << r.bandwidth << "\n\n";
    auto pad = [](std::string s, std::size_t w) {
        if (s.size() < w) s.append(w - s.size(), ' ');
        return s;
    };
    out << pad("estimator", 17) << pad("process", 12) << pad("truth", 8) << pad("reps", 6) << pad("mean", 9)
        << pad("bias", 9) << pad("sd", 8) << pad("status", 7) << "criterion\n";
    for (const auto& row : r.rows) {
        out << pad(row.estimator, 17) << pad(row.process, 12) << pad(fixed(row.truth, 2), 8)
            << pad(std::to_string(row.reps), 6) << pad(fixed(row.mean, 4), 9) << pad(fixed(row.bias(), 4), 9)
            << pad(fixed(row.sd, 4), 8) << pad(row.passed ? "PASS" : "FAIL", 7) << row.criterion << '\n';
    }
    out << '\n' << (r.passed() ? "validation passed" : "validation FAILED") << '\n';
}

}  // namespace effidx
