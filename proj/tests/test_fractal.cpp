#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "effidx/detail/numeric.hpp"
#include "effidx/fractal.hpp"
#include "effidx/synth.hpp"

using namespace effidx;

namespace {

std::vector<double> ramp(std::size_t points, double slope, double offset = 0.0) {
    std::vector<double> x(points);
    for (std::size_t i = 0; i < points; ++i) x[i] = offset + slope * static_cast<double>(i);
    return x;
}

double mean_estimate(double h, std::size_t n, int seeds, FractalEstimate (*est)(std::span<const double>)) {
    double total = 0.0;
    for (int s = 0; s < seeds; ++s) total += est(synth::fbm_path(h, n, 1.0, 2000 + s)).value;
    return total / seeds;
}

}  // namespace

TEST(AbsScale, LinearRampRatioIsTwo) {
    // 1025 points: n = 1024 increments, so both lags tile the path exactly.
    const auto x = ramp(1025, 3.0);
    EXPECT_DOUBLE_EQ(abs_scale(x, 1), 3.0);
    EXPECT_DOUBLE_EQ(abs_scale(x, 2), 6.0);
}

TEST(AbsScale, ConstantAndAlternating) {
    EXPECT_EQ(abs_scale(std::vector<double>(20, 4.2), 1), 0.0);
    std::vector<double> alt;
    for (int i = 0; i < 21; ++i) alt.push_back(i % 2 == 0 ? 1.0 : -1.0);
    // n = 20 increments of size 2: (1/n) * 20 * 2.
    EXPECT_DOUBLE_EQ(abs_scale(alt, 1), 2.0);
    EXPECT_EQ(abs_scale(alt, 2), 0.0);
}

TEST(AbsScale, RejectsShortPathAndBadLag) {
    EXPECT_THROW(abs_scale(std::vector<double>{1, 2, 3, 4}, 2), InsufficientDataError);
    EXPECT_THROW(abs_scale(std::vector<double>(10, 1.0), 3), InvalidArgumentError);
}

TEST(Variogram, LinearRamp) {
    const auto x = ramp(100, 0.25);
    EXPECT_DOUBLE_EQ(variogram2(x, 1), 0.25 * 0.25 / 2.0);
    EXPECT_DOUBLE_EQ(variogram2(x, 2), 0.5 * 0.5 / 2.0);
    EXPECT_EQ(variogram2(std::vector<double>(10, -1.0), 1), 0.0);
}

TEST(Variogram, RandomWalkRatioNearTwo) {
    double ratio = 0.0;
    constexpr int kSeeds = 200;
    for (int s = 0; s < kSeeds; ++s) {
        const auto x = synth::fbm_path(0.5, 2048, 1.0, s);
        ratio += variogram2(x, 2) / variogram2(x, 1);
    }
    EXPECT_NEAR(ratio / kSeeds, 2.0, 0.02);
}

TEST(HallWood, LinearRampIsExactlyOne) {
    EXPECT_EQ(hall_wood(ramp(2049, 3.0, 1.0)).value, 1.0);
    EXPECT_EQ(hall_wood(ramp(33, -0.5, 7.0)).value, 1.0);
    EXPECT_TRUE(hall_wood(ramp(33, 1.0)).out_of_range);  // D = 1 lies outside (1, 2]
}

TEST(Genton, LinearRampIsExactlyOne) {
    EXPECT_EQ(genton(ramp(2048, 3.0, 1.0)).value, 1.0);
    EXPECT_EQ(genton(ramp(2049, 3.0, 1.0)).value, 1.0);
}

TEST(HallWood, RandomWalkNearOneAndAHalf) {
    EXPECT_NEAR(mean_estimate(0.5, 2048, 200, hall_wood), 1.5, 0.05);
}

TEST(HallWood, AntiPersistentPath) {
    EXPECT_NEAR(mean_estimate(0.3, 2048, 200, hall_wood), 1.7, 0.06);
}

TEST(Genton, RandomWalkNearOneAndAHalf) {
    EXPECT_NEAR(mean_estimate(0.5, 2048, 200, genton), 1.5, 0.05);
}

TEST(Genton, IidSequenceAsPathIsNearTwo) {
    double total = 0.0;
    constexpr int kSeeds = 50;
    for (int s = 0; s < kSeeds; ++s) total += genton(synth::white_noise(2048, 1.0, s)).value;
    EXPECT_NEAR(total / kSeeds, 2.0, 0.05);
}

TEST(Fractal, SelfSimilarRelation) {
    for (double h : {0.2, 0.5, 0.8}) {
        EXPECT_GE(mean_estimate(h, 2048, 200, hall_wood) + h, 1.93) << h;
        EXPECT_LE(mean_estimate(h, 2048, 200, hall_wood) + h, 2.07) << h;
        EXPECT_GE(mean_estimate(h, 2048, 200, genton) + h, 1.93) << h;
        EXPECT_LE(mean_estimate(h, 2048, 200, genton) + h, 2.07) << h;
    }
}

TEST(Fractal, AffineInvariant) {
    const auto x = synth::fbm_path(0.6, 1001, 1.0, 5);
    const double hw = hall_wood(x).value;
    const double g = genton(x).value;
    for (auto [a, b] : {std::pair{2.5, 1.0}, std::pair{-0.01, 100.0}, std::pair{-7.0, -3.0}}) {
        std::vector<double> y;
        for (double v : x) y.push_back(a * v + b);
        EXPECT_NEAR(hall_wood(y).value, hw, 1e-10);
        EXPECT_NEAR(genton(y).value, g, 1e-10);
    }
}

TEST(Fractal, TimeReversalInvariant) {
    // Odd point count so lag-2 boxes tile the path from either end.
    const auto x = synth::fbm_path(0.4, 2049, 1.0, 6);
    std::vector<double> rev(x.rbegin(), x.rend());
    EXPECT_NEAR(hall_wood(rev).value, hall_wood(x).value, 1e-10);
    EXPECT_NEAR(genton(rev).value, genton(x).value, 1e-10);
}

TEST(Fractal, DegenerateAndShortPaths) {
    EXPECT_THROW(hall_wood(std::vector<double>(50, 1.0)), DegenerateSeriesError);
    EXPECT_THROW(genton(std::vector<double>(50, 1.0)), DegenerateSeriesError);
    std::vector<double> alt;
    for (int i = 0; i < 21; ++i) alt.push_back(i % 2 == 0 ? 1.0 : -1.0);
    EXPECT_THROW(hall_wood(alt), DegenerateSeriesError);  // lag-2 statistic vanishes
    EXPECT_THROW(genton(alt), DegenerateSeriesError);
    EXPECT_THROW(hall_wood(std::vector<double>{1, 2, 3, 5, 4, 6, 7}), InsufficientDataError);
}

TEST(Fractal, OutOfRangeIsReportedRaw) {
    // Near-alternating path: lag-2 increments are tiny next to lag-1 ones, so D > 2.
    std::vector<double> x;
    for (int i = 0; i < 41; ++i) x.push_back((i % 2) + 0.01 * i);
    const auto hw = hall_wood(x);
    EXPECT_TRUE(hw.out_of_range);
    EXPECT_GT(hw.value, 2.0);
    EXPECT_TRUE(genton(x).out_of_range);
    EXPECT_TRUE(std::isfinite(hw.value));
    const auto sc = scale_statistics(x);
    EXPECT_EQ(sc.n, 40u);
    EXPECT_DOUBLE_EQ(hw.value, 2.0 - std::log2(sc.abs_lag2 / sc.abs_lag1));
}
