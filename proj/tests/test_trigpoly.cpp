#include <cmath>
#include <complex>
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "resonance/trigpoly.hpp"

using namespace resonance;

namespace {

TrigSeries sample_series()
{
    return TrigSeries({{0.5, 1.0}, {0.9, 0.8}, {1.3, 0.6}, {1.7, 0.05}, {2.6, 0.05}});
}

} // namespace

TEST(TrigSeries, RejectsInvalidTerms)
{
    EXPECT_THROW(TrigSeries({{1.0, 1.0}, {1.0, 2.0}}), std::invalid_argument);
    EXPECT_THROW(TrigSeries({{2.0, 1.0}, {1.0, 2.0}}), std::invalid_argument);
    EXPECT_THROW(TrigSeries({{-1.0, 1.0}}), std::invalid_argument);
    EXPECT_THROW(TrigSeries({{1.0, -0.5}}), std::invalid_argument);
    EXPECT_THROW(TrigSeries({{std::nan(""), 1.0}}), std::invalid_argument);
}

TEST(TrigSeries, ValueAtZeroIsTotalMass)
{
    const auto s = sample_series();
    EXPECT_NEAR(s.total_mass(), 2.5, 1e-15);
    EXPECT_NEAR(s(0.0).real(), 2.5, 1e-15);
    EXPECT_NEAR(s(0.0).imag(), 0.0, 1e-15);
    EXPECT_NEAR(s.real_part(0.0), 2.5, 1e-15);
}

TEST(TrigSeries, RealPartMatchesRotatedComplexValue)
{
    const auto s = sample_series();
    for (double x : {0.1, 1.7, 33.3})
        for (double beta : {0.0, -std::numbers::pi / 4, 2.0}) {
            const auto e = evaluate(s, x, beta);
            EXPECT_NEAR(e.real, s.real_part(x, beta), 1e-12);
            EXPECT_NEAR(std::abs(e.value), std::abs(s(x)), 1e-12);
        }
}

TEST(TrigSeries, LipschitzConstantBoundsDifferences)
{
    const auto s = sample_series();
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(0.0, 50.0);
    for (int i = 0; i < 500; ++i) {
        const double x = u(rng), y = x + 1e-3 * u(rng);
        EXPECT_LE(std::abs(s(x) - s(y)), s.lipschitz() * std::abs(x - y) * (1 + 1e-12));
    }
}

TEST(ComplexTrigSeries, AgreesWithRealSeries)
{
    const auto s = sample_series();
    const ComplexTrigSeries c(s);
    EXPECT_NEAR(c.abs_mass(), s.total_mass(), 1e-15);
    EXPECT_NEAR(c.lipschitz(), s.lipschitz(), 1e-12);
    for (double x : {0.3, 4.1})
        EXPECT_NEAR(std::abs(c(x) - s(x)), 0.0, 1e-13);
}

TEST(ComplexTrigSeries, AcceptsNegativeFrequencies)
{
    const ComplexTrigSeries c({{-1.0, {0.5, 0.0}}, {1.0, {0.5, 0.0}}});
    for (double x : {0.0, 0.2, 0.77})
        EXPECT_NEAR(c.real_part(x), std::cos(two_pi * x), 1e-14);
}

TEST(Smooth, WeightsFollowTheTriangle)
{
    const auto s = sample_series();
    const auto sm = smooth(s, 1); // pivot lambda = 0.9
    EXPECT_DOUBLE_EQ(sm.pivot_frequency(), 0.9);
    // lambda >= 1.8 falls outside the support and is dropped
    ASSERT_EQ(sm.smoothed.size(), 4u);
    EXPECT_EQ(sm.source_index, (std::vector<std::size_t>{0, 1, 2, 3}));
    EXPECT_NEAR(sm.smoothed[0].f, 1.0 * (1 - 0.4 / 0.9), 1e-15);
    EXPECT_DOUBLE_EQ(sm.smoothed[1].f, 0.8);
    EXPECT_NEAR(sm.smoothed[2].f, 0.6 * (1 - 0.4 / 0.9), 1e-15);
    EXPECT_NEAR(sm.smoothed[3].f, 0.05 * (1 - 0.8 / 0.9), 1e-15);
}

TEST(Smooth, RejectsBadPivot)
{
    EXPECT_THROW(smooth(sample_series(), 9), std::out_of_range);
    EXPECT_THROW(smooth(TrigSeries({{0.0, 1.0}, {1.0, 1.0}}), 0), std::invalid_argument);
}

TEST(ConvolutionDefect, ClosedForm)
{
    const auto s = sample_series();
    const double expected = 4.0 * 2.5 / (std::numbers::pi * std::numbers::pi * 3.0 * 0.9);
    EXPECT_NEAR(convolution_defect(s, 1, 3.0), expected, 1e-15);
    EXPECT_DOUBLE_EQ(convolution_defect(0.0, 3.0, 0.9), 0.0);
    EXPECT_THROW(convolution_defect(s, 1, 0.0), std::invalid_argument);
}

// F_1(x) = lambda_N int K(lambda_N t) e(-lambda_N t) F(x + t) dt, checked by a truncated trapezoid.
TEST(Smooth, SampledConvolutionIdentity)
{
    const auto s = sample_series();
    const auto sm = smooth(s, 1);
    const double lN = sm.pivot_frequency();
    const double A = 400.0, h = 0.01;
    const double tail = 2.0 * s.total_mass() / (std::numbers::pi * std::numbers::pi * lN * A);
    for (double x : {0.0, 1.3, 17.9}) {
        std::complex<double> acc{0.0, 0.0};
        const auto n = static_cast<long>(2 * A / h);
        for (long i = 0; i <= n; ++i) {
            const double t = -A + h * static_cast<double>(i);
            const double w = (i == 0 || i == n) ? 0.5 : 1.0;
            acc += w * lN * fejer(lN * t) * unit_phase(-lN * t) * s(x + t);
        }
        acc *= h;
        EXPECT_NEAR(std::abs(acc - sm.smoothed(x)), 0.0, tail) << x;
        // consequence used downstream: |F_1(x)| <= max |F| over a neighbourhood, up to the kernel tail
        EXPECT_LE(std::abs(sm.smoothed(x)), s.total_mass());
    }
}
