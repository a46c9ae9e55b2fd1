#pragma once

#include <unistd.h>

#include <chrono>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "effidx/detail/numeric.hpp"

namespace effidx::test_support {

/// Fresh empty directory under the system temp path, removed on destruction.
class TempDir {
public:
    explicit TempDir(const std::string& tag) {
        static std::uint64_t counter = 0;
        path_ = std::filesystem::temp_directory_path() /
                ("effidx_" + tag + "_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
        std::filesystem::remove_all(path_);
        std::filesystem::create_directories(path_);
    }
    ~TempDir() {
        std::error_code ec;
        std::filesystem::remove_all(path_, ec);
    }
    TempDir(const TempDir&) = delete;
    TempDir& operator=(const TempDir&) = delete;

    [[nodiscard]] const std::filesystem::path& path() const { return path_; }

private:
    std::filesystem::path path_;
};

/// `date,close` text for prices exp(cumsum(returns)) starting at 100 on 2000-01-03, one row per day.
inline std::string price_csv(std::span<const double> returns) {
    using namespace std::chrono;
    sys_days day = sys_days{year{2000} / January / 3};
    std::string text = "date,close\n";
    double log_price = std::log(100.0);
    auto emit = [&] {
        const year_month_day ymd{day};
        char buf[64];
        std::snprintf(buf, sizeof buf, "%04d-%02u-%02u,%.12g\n", static_cast<int>(ymd.year()),
                      static_cast<unsigned>(ymd.month()), static_cast<unsigned>(ymd.day()), std::exp(log_price));
        text += buf;
        day += days{1};
    };
    emit();
    for (double r : returns) {
        log_price += r;
        emit();
    }
    return text;
}

inline void write_text(const std::filesystem::path& p, const std::string& text) {
    std::ofstream out(p, std::ios::binary);
    out << text;
}

inline std::string read_text(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

inline double lag1_autocorrelation(std::span<const double> x) {
    const double mu = detail::mean(x);
    double num = 0.0, den = 0.0;
    for (std::size_t t = 0; t < x.size(); ++t) {
        den += (x[t] - mu) * (x[t] - mu);
        if (t > 0) num += (x[t] - mu) * (x[t - 1] - mu);
    }
    return num / den;
}

}  // namespace effidx::test_support
