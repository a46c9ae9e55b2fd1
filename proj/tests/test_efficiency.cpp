#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>
#include <vector>

#include "effidx/efficiency.hpp"
#include "effidx/fixture.hpp"
#include "effidx/synth.hpp"

using namespace effidx;

namespace {

std::vector<EfficiencyRecord> fixture_records(bool apply_sqrt) {
    EfficiencyConfig cfg;
    cfg.apply_sqrt = apply_sqrt;
    std::vector<EfficiencyRecord> out;
    for (const auto& row : fixture::kPublishedRanking)
        out.push_back(make_record(std::string(row.ticker), std::string(row.country),
                                  {row.hurst, row.fractal, row.entropy}, cfg));
    return out;
}

std::size_t index_of(const std::vector<EfficiencyRecord>& records, std::string_view ticker) {
    return static_cast<std::size_t>(std::find_if(records.begin(), records.end(),
                                                 [&](const auto& r) { return r.ticker == ticker; }) -
                                    records.begin());
}

ReturnSeries as_returns(std::string ticker, std::vector<double> x) { return {std::move(ticker), std::move(x)}; }

LogPriceSeries path_of(const ReturnSeries& r) {
    LogPriceSeries p{r.ticker, {0.0}};
    for (double v : r.values) p.values.push_back(p.values.back() + v);
    return p;
}

}  // namespace

TEST(Combine, AveragesEstimatorPairs) {
    const HurstEstimate lw{0.5, HurstMethod::LocalWhittle, 64, 0.0625, false};
    const HurstEstimate g{0.5, HurstMethod::GPH, 64, 0.02, false};
    const FractalEstimate hw{1.40, FractalMethod::HallWood, false};
    const FractalEstimate gt{1.50, FractalMethod::Genton, false};
    EntropyEstimate ae;
    ae.normalized = 0.8;
    const auto m = combine_estimates(lw, g, hw, gt, ae);
    EXPECT_DOUBLE_EQ(m.hurst, 0.5);
    EXPECT_DOUBLE_EQ(m.fractal, 1.45);
    EXPECT_DOUBLE_EQ(m.entropy, 0.8);

    const HurstEstimate a{0.61, HurstMethod::LocalWhittle, 64, 0.0, false};
    const HurstEstimate b{0.44, HurstMethod::GPH, 64, 0.0, false};
    EXPECT_EQ(combine_estimates(a, b, hw, gt, ae).hurst, combine_estimates(b, a, hw, gt, ae).hurst);
}

TEST(EfficiencyIndex, EfficientMarketIsZero) {
    EfficiencyConfig cfg;
    EXPECT_EQ(efficiency_index({0.5, 1.5, 1.0}, cfg), 0.0);
    cfg.apply_sqrt = false;
    EXPECT_EQ(efficiency_index({0.5, 1.5, 1.0}, cfg), 0.0);
}

TEST(EfficiencyIndex, PublishedRows) {
    EfficiencyConfig cfg;
    cfg.apply_sqrt = false;
    EXPECT_NEAR(efficiency_index({0.5358, 1.4356, 0.5246}, cfg), 0.0619, 5e-5);
    EXPECT_NEAR(efficiency_index({0.4997, 1.3187, 0.0239}, cfg), 0.2711, 5e-5);
    EXPECT_NEAR(efficiency_index({0.6673, 1.3132, 0.1534}, cfg), 0.2421, 5e-5);
    cfg.apply_sqrt = true;
    EXPECT_NEAR(efficiency_index({0.4997, 1.3187, 0.0239}, cfg), 0.5206, 5e-5);
}

TEST(EfficiencyIndex, SymmetricAndMonotone) {
    synth::Rng rng(3);
    for (int trial = 0; trial < 200; ++trial) {
        std::array<double, 3> d{rng.normal(), rng.normal(), rng.normal()};
        const double base = efficiency_index(d, true);
        auto perm = d;
        std::sort(perm.begin(), perm.end());
        do {
            EXPECT_NEAR(efficiency_index(perm, true), base, 1e-15);
        } while (std::next_permutation(perm.begin(), perm.end()));
        auto bigger = d;
        const auto k = static_cast<std::size_t>(rng.below(3));
        bigger[k] *= 1.0 + rng.uniform();
        EXPECT_GE(efficiency_index(bigger, true), base);
        EXPECT_GE(efficiency_index(bigger, false), efficiency_index(d, false));
    }
}

TEST(RankRecords, PublishedOrder) {
    const auto ranked = rank_records(fixture_records(false));
    ASSERT_EQ(ranked.size(), 38u);
    for (std::size_t i = 0; i < ranked.size(); ++i) {
        EXPECT_EQ(ranked[i].ticker, fixture::kPublishedRanking[i].ticker);
        EXPECT_EQ(ranked[i].rank, i + 1);
    }
    EXPECT_EQ(ranked.front().ticker, "AEX");
    EXPECT_EQ(ranked.back().ticker, "IPSA");
}

TEST(RankRecords, SingleAndTies) {
    EfficiencyConfig cfg;
    const auto one = rank_records({make_record("X", "", {0.6, 1.5, 1.0}, cfg)});
    EXPECT_EQ(one.front().rank, 1u);

    const auto tied = rank_records({make_record("ZED", "", {0.6, 1.5, 1.0}, cfg),
                                    make_record("ABC", "", {0.4, 1.5, 1.0}, cfg)});
    EXPECT_EQ(tied[0].ticker, "ABC");
    EXPECT_EQ(tied[1].ticker, "ZED");
}

TEST(RankRecords, Errors) {
    EfficiencyConfig cfg;
    EXPECT_THROW(rank_records({}), InvalidArgumentError);
    EXPECT_THROW(rank_records({make_record("X", "", {0.6, 1.5, 1.0}, cfg), make_record("X", "", {0.5, 1.5, 1.0}, cfg)}),
                 InvalidArgumentError);
}

TEST(RankRecords, SqrtToggleNeverChangesOrder) {
    synth::Rng rng(77);
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t n = 1 + rng.below(40);
        std::vector<EfficiencyRecord> rooted, plain;
        EfficiencyConfig a, b;
        b.apply_sqrt = false;
        for (std::size_t i = 0; i < n; ++i) {
            const Measures m{rng.uniform(), 1.0 + rng.uniform(), rng.uniform()};
            const std::string ticker = "T" + std::to_string(rng.below(1000000)) + "_" + std::to_string(i);
            rooted.push_back(make_record(ticker, "", m, a));
            plain.push_back(make_record(ticker, "", m, b));
        }
        const auto r1 = rank_records(rooted);
        const auto r2 = rank_records(plain);
        for (std::size_t i = 0; i < n; ++i) EXPECT_EQ(r1[i].ticker, r2[i].ticker);
    }
}

TEST(ComponentRankings, PublishedLeaders) {
    const auto records = fixture_records(false);
    const auto ranks = component_rankings(records);
    EXPECT_EQ(ranks.hurst[index_of(records, "IPSA")], 1u);
    EXPECT_EQ(ranks.fractal[index_of(records, "BUX")], 1u);
    EXPECT_EQ(ranks.entropy[index_of(records, "AEX")], 1u);
    for (std::size_t i = 0; i < records.size(); ++i) {
        EXPECT_EQ(ranks.hurst[i], fixture::kPublishedRanking[i].hurst_rank) << records[i].ticker;
        EXPECT_EQ(ranks.fractal[i], fixture::kPublishedRanking[i].fractal_rank) << records[i].ticker;
        EXPECT_EQ(ranks.entropy[i], fixture::kPublishedRanking[i].entropy_rank) << records[i].ticker;
    }
}

TEST(ComponentRankings, IdenticalDeviationsFollowTickerOrder) {
    EfficiencyConfig cfg;
    std::vector<EfficiencyRecord> records{make_record("C", "", {0.6, 1.4, 0.5}, cfg),
                                          make_record("A", "", {0.4, 1.6, 0.5}, cfg),
                                          make_record("B", "", {0.6, 1.6, 0.5}, cfg)};
    const auto ranks = component_rankings(records);
    const std::vector<std::size_t> expected{3, 1, 2};
    EXPECT_EQ(ranks.hurst, expected);
    EXPECT_EQ(ranks.fractal, expected);
    EXPECT_EQ(ranks.entropy, expected);
}

TEST(Spearman, Extremes) {
    const std::vector<std::size_t> a{1, 2, 3, 4, 5};
    const std::vector<std::size_t> rev{5, 4, 3, 2, 1};
    EXPECT_DOUBLE_EQ(spearman(a, a), 1.0);
    EXPECT_DOUBLE_EQ(spearman(a, rev), -1.0);
}

TEST(Spearman, SelfCorrelationOfRandomPermutations) {
    synth::Rng rng(8);
    for (int trial = 0; trial < 100; ++trial) {
        std::vector<std::size_t> p(2 + rng.below(50));
        std::iota(p.begin(), p.end(), std::size_t{1});
        for (std::size_t i = p.size(); i > 1; --i) std::swap(p[i - 1], p[rng.below(i)]);
        EXPECT_DOUBLE_EQ(spearman(p, p), 1.0);
    }
}

TEST(Spearman, PublishedCorrelations) {
    std::vector<std::size_t> ei, h, d, e;
    for (std::size_t i = 0; i < fixture::kPublishedRanking.size(); ++i) {
        ei.push_back(i + 1);
        h.push_back(fixture::kPublishedRanking[i].hurst_rank);
        d.push_back(fixture::kPublishedRanking[i].fractal_rank);
        e.push_back(fixture::kPublishedRanking[i].entropy_rank);
    }
    EXPECT_NEAR(spearman(ei, e), 0.94, 0.015);
    EXPECT_NEAR(spearman(ei, d), 0.65, 0.015);
    EXPECT_NEAR(spearman(ei, h), 0.49, 0.015);
}

TEST(Spearman, Errors) {
    const std::vector<std::size_t> a{1, 2, 3};
    const std::vector<std::size_t> b{1, 2};
    const std::vector<std::size_t> tied{1, 1, 3};
    EXPECT_THROW(spearman(a, b), InvalidArgumentError);
    EXPECT_THROW(spearman(a, tied), InvalidArgumentError);
    EXPECT_THROW(spearman(std::vector<std::size_t>{1}, std::vector<std::size_t>{1}), InvalidArgumentError);
}

TEST(AnalyzeSeries, FillsDetailsAndIsDeterministic) {
    const auto r = as_returns("WN", synth::white_noise(3000, 0.01, 1));
    EfficiencyConfig cfg;
    const auto a = analyze_series(r, path_of(r), cfg, "Nowhere");
    const auto b = analyze_series(r, path_of(r), cfg, "Nowhere");
    EXPECT_EQ(a.ei, b.ei);
    EXPECT_EQ(a.country, "Nowhere");
    ASSERT_TRUE(a.details.has_value());
    EXPECT_EQ(a.details->local_whittle.bandwidth, 54u);
    EXPECT_DOUBLE_EQ(a.measures.hurst, (a.details->local_whittle.value + a.details->gph.value) / 2.0);
    EXPECT_DOUBLE_EQ(a.measures.fractal, (a.details->hall_wood.value + a.details->genton.value) / 2.0);
    EXPECT_DOUBLE_EQ(a.measures.entropy, a.details->entropy.normalized);
}

TEST(AnalyzeSeries, ConstantSeriesFailsWithTicker) {
    const auto r = as_returns("FLAT", std::vector<double>(100, 0.0));
    try {
        analyze_series(r, path_of(r), {});
        FAIL() << "expected AnalysisError";
    } catch (const AnalysisError& e) {
        EXPECT_EQ(e.ticker(), "FLAT");
    }
}

TEST(AnalyzeSeries, LengthMismatchIsRejected) {
    const auto r = as_returns("X", synth::white_noise(100, 1.0, 2));
    LogPriceSeries p{"X", std::vector<double>(100, 0.0)};
    EXPECT_THROW(analyze_series(r, p, {}), AnalysisError);
}

TEST(AnalyzeSeries, EfficientAndPersistentMonteCarlo) {
    constexpr int kSeeds = 100;
    std::vector<double> iid_ei, persistent_ei;
    for (int s = 0; s < kSeeds; ++s) {
        EfficiencyConfig cfg;
        cfg.entropy.seed = s;
        const auto iid = as_returns("IID", synth::white_noise(3000, 0.01, 10000 + s));
        iid_ei.push_back(analyze_series(iid, path_of(iid), cfg).ei);
        const auto fgn = as_returns("FGN", synth::fgn(0.85, 3000, 0.01, 20000 + s));
        persistent_ei.push_back(analyze_series(fgn, path_of(fgn), cfg).ei);
    }
    const auto below = std::count_if(iid_ei.begin(), iid_ei.end(), [](double v) { return v < 0.15; });
    EXPECT_GE(below, 90);
    auto sorted = iid_ei;
    std::sort(sorted.begin(), sorted.end());
    const double median = 0.5 * (sorted[kSeeds / 2 - 1] + sorted[kSeeds / 2]);
    const auto above = std::count_if(persistent_ei.begin(), persistent_ei.end(), [&](double v) { return v > median; });
    EXPECT_GE(above, 95);
}
