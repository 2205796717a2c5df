#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "resonance/extremes.hpp"
#include "support.hpp"

using namespace resonance;

namespace {

TrigSeries sample_series()
{
    return TrigSeries({{0.5, 1.0}, {0.9, 0.8}, {1.3, 0.6}, {1.7, 0.05}, {2.6, 0.05}});
}

} // namespace

TEST(ScanMax, SingleCosine)
{
    const TrigSeries s({{1.0, 1.0}});
    const auto r = scan_max(s, 0.0, 0.1, 3.0, 100);
    EXPECT_NEAR(r.best_value, 1.0, 1e-12);
    EXPECT_NEAR(r.best_x - std::round(r.best_x), 0.0, 1e-5);
    EXPECT_GE(r.bracket_hi, 1.0);
}

TEST(ScanMax, AbsoluteObjective)
{
    const TrigSeries s({{1.0, 1.0}});
    const auto r = scan_max(s, 0.0, 0.4, 0.6, 50, Objective::absolute);
    EXPECT_NEAR(r.best_value, 1.0, 1e-12);
    EXPECT_NEAR(r.best_x, 0.5, 1e-5);
}

TEST(ScanMax, BracketContainsFinerScan)
{
    const auto s = sample_series();
    for (double beta : {0.0, 1.1}) {
        const auto coarse = scan_max(s, beta, 1.0, 400.0, 2000);
        const auto fine = scan_max(s, beta, 1.0, 400.0, 20000);
        EXPECT_GE(fine.best_value, coarse.bracket_lo - 1e-12);
        EXPECT_LE(fine.best_value, coarse.bracket_hi + 1e-12);
    }
}

TEST(ScanMax, DoublingBudgetDoesNotLoseTheMaximum)
{
    const auto s = sample_series();
    double prev = -1e300;
    for (std::uint64_t b = 500; b <= 64000; b *= 2) {
        const auto r = scan_max(s, 0.0, 1.0, 600.0, b);
        EXPECT_GE(r.best_value, prev - 1e-9) << b;
        prev = std::max(prev, r.best_value);
    }
}

TEST(ScanMax, RejectsBadRange)
{
    const auto s = sample_series();
    EXPECT_THROW(scan_max(s, 0.0, 2.0, 1.0, 10), std::invalid_argument);
    EXPECT_THROW(scan_max(s, 0.0, 0.0, 1.0, 1), std::invalid_argument);
}

TEST(LevelSet, HalfOfACosineIsPositive)
{
    const TrigSeries s({{1.0, 1.0}});
    const auto l = measure_level_set(s, 0.0, 0.0, 10.0, 1e-3);
    EXPECT_NEAR(l.measured, 5.0, 2e-3);
    EXPECT_LE(l.certified, l.measured);
    EXPECT_GT(l.certified, 4.9);
}

TEST(LevelSet, PartialLastCell)
{
    const TrigSeries s({{0.0, 1.0}});
    const auto l = measure_level_set(s, 0.5, 0.0, 1.05, 0.1);
    EXPECT_NEAR(l.measured, 1.05, 1e-12);
    EXPECT_NEAR(l.certified, 1.05, 1e-12);
    EXPECT_THROW(measure_level_set(s, 0.5, 0.0, 1.0, 0.0), std::invalid_argument);
}

TEST(ResolvingBudget, ScalesWithFrequency)
{
    const auto s = sample_series();
    EXPECT_EQ(resolving_budget(s, 0.0, 100.0, 8.0, 1'000'000), 2080u);
    EXPECT_EQ(resolving_budget(s, 0.0, 100.0, 8.0, 1000), 1000u);
}

TEST(Theorem2, SampleSeriesPasses)
{
    ResonatorConfig cfg;
    cfg.selected = {0, 1, 2};
    cfg.X = 100.0;
    const auto chk = verify_theorem2(cfg, sample_series());
    EXPECT_TRUE(chk.max_passed);
    EXPECT_TRUE(chk.measure_passed);
    EXPECT_TRUE(chk.passed);
    EXPECT_DOUBLE_EQ(chk.V, chk.report.bound / 2);
    EXPECT_GE(chk.scan.best_value, chk.report.bound);
}

TEST(Theorem2, NonPositiveCertificateIsRejected)
{
    ResonatorConfig cfg;
    cfg.selected = {0};
    cfg.X = 1.0;
    cfg.Y = 1.5;
    const TrigSeries s({{1.0, 0.1}, {2.0, 5.0}});
    EXPECT_THROW(verify_theorem2(cfg, s), std::domain_error);
}

TEST(Theorem1, RandomInstancesPass)
{
    std::mt19937_64 rng(31);
    for (int rep = 0; rep < 5; ++rep) {
        auto inst = resonance::testing::random_instance(rng, 4, 2, 6.0, 9.0, 50.0, 10.0);
        inst.cfg.pivot = inst.cfg.selected.front();
        // keep the pivot constraint: all selected frequencies lie within [lambda_N / 2, 3 lambda_N / 2]
        const auto chk = verify_theorem1(inst.cfg, inst.series, 200'000);
        EXPECT_TRUE(chk.passed) << rep;
        EXPECT_GE(chk.scan.best_value, chk.certified);
        EXPECT_DOUBLE_EQ(chk.sixteenth_mass, chk.report.selected_mass / 16);
    }
}
