#include <cmath>
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "resonance/kronecker.hpp"

using namespace resonance::kronecker;

namespace {

const std::vector<double> one_root2{1.0, std::numbers::sqrt2};

std::vector<int> negated(std::vector<int> v)
{
    for (auto &x : v)
        x = -x;
    return v;
}

} // namespace

TEST(Kronecker, NearestIntegerDistance)
{
    EXPECT_DOUBLE_EQ(nearest_integer_distance(0.0), 0.0);
    EXPECT_NEAR(nearest_integer_distance(2.3), 0.3, 1e-15);
    EXPECT_NEAR(nearest_integer_distance(-2.7), 0.3, 1e-15);
    EXPECT_DOUBLE_EQ(nearest_integer_distance(0.5), 0.5);
}

TEST(DiscreteFejer, MatchesDirectSum)
{
    for (unsigned L : {1u, 2u, 5u, 17u})
        for (double t : {0.0, 1e-9, 0.013, 0.25, 0.5, 3.71, -1.2}) {
            double direct = 1.0;
            for (unsigned l = 1; l < L; ++l)
                direct += 2.0 * (1.0 - static_cast<double>(l) / L) * std::cos(resonance::two_pi * l * t);
            EXPECT_NEAR(fejer_discrete(L, t), direct, 1e-10 * L) << L << " " << t;
            EXPECT_GE(fejer_discrete(L, t), -1e-12);
        }
    EXPECT_NEAR(fejer_discrete(9, 0.0), 9.0, 1e-12);
}

TEST(BohrJessen, NonnegativeWithUnitMean)
{
    KroneckerInstance inst{{std::numbers::sqrt2, std::sqrt(3.0)}, {0.25, 0.75}, 3};
    const double T = 1e4, h = 0.01;
    double sum = 0.0;
    std::size_t n = 0;
    for (double x = 0.0; x < T; x += h, ++n) {
        const double w = bohr_jessen_W(inst, x);
        ASSERT_GE(w, -1e-12);
        sum += w;
    }
    EXPECT_NEAR(sum / static_cast<double>(n), 1.0, 0.05);
}

TEST(Delta, FrozenValuesForOneAndRootTwo)
{
    const auto d1 = compute_delta(one_root2, 1);
    EXPECT_NEAR(d1.delta, std::numbers::sqrt2 - 1.0, 1e-12);
    EXPECT_NEAR(d1.delta, 0.41421356237309505, 1e-12);
    EXPECT_TRUE(d1.witness == std::vector<int>({-1, 1}) || d1.witness == std::vector<int>({1, -1}));

    const auto d3 = compute_delta(one_root2, 3);
    EXPECT_NEAR(d3.delta, 3.0 - 2.0 * std::numbers::sqrt2, 1e-12);
    EXPECT_NEAR(d3.delta, 0.17157287525380990, 1e-12);
    const std::vector<int> w{3, -2};
    EXPECT_TRUE(d3.witness == w || d3.witness == negated(w));
    EXPECT_GT(d3.witness.front(), 0);
}

TEST(Delta, MeetInTheMiddleEqualsBruteForce)
{
    std::mt19937_64 rng(29);
    std::uniform_real_distribution<double> u(0.1, 5.0);
    for (int rep = 0; rep < 30; ++rep) {
        const std::size_t N = 1 + rep % 5;
        const unsigned L = 1 + static_cast<unsigned>(rep % 4);
        std::vector<double> lam(N);
        for (auto &x : lam)
            x = u(rng);
        const auto b = compute_delta_brute(lam, L);
        const auto m = compute_delta_mitm(lam, L);
        EXPECT_EQ(b.delta, m.delta) << rep;
        EXPECT_EQ(b.degenerate, m.degenerate);
    }
}

TEST(Delta, MonotoneInL)
{
    const std::vector<double> lam{1.0, std::numbers::sqrt2, std::sqrt(3.0)};
    double prev = std::numeric_limits<double>::infinity();
    for (unsigned L = 1; L <= 8; ++L) {
        const double d = compute_delta(lam, L).delta;
        EXPECT_LE(d, prev);
        prev = d;
    }
}

TEST(Delta, DetectsRationalDependence)
{
    const std::vector<double> lam{1.0, 2.0};
    const auto d = compute_delta(lam, 2);
    EXPECT_TRUE(d.degenerate);
    EXPECT_THROW(chen_bound(KroneckerInstance{lam, {}, 2}, 10.0), std::invalid_argument);
}

TEST(Chen, FrozenBound)
{
    const double expected = 1.0 - std::numbers::pi * std::numbers::pi / 32.0 - 0.4;
    EXPECT_NEAR(chen_bound(3, 10.0, 1.0), expected, 1e-12);
    EXPECT_NEAR(chen_bound(3, 10.0, 1.0), 0.29157486246595754, 1e-12);
    EXPECT_THROW(chen_bound(3, 0.5, 1.0), std::invalid_argument);
    EXPECT_THROW(chen_bound(0, 10.0, 1.0), std::invalid_argument);
}

TEST(Instance, Validation)
{
    EXPECT_THROW((KroneckerInstance{{}, {}, 1}.validate()), std::invalid_argument);
    EXPECT_THROW((KroneckerInstance{{1.0, 1.0}, {}, 1}.validate()), std::invalid_argument);
    EXPECT_THROW((KroneckerInstance{{0.0}, {}, 1}.validate()), std::invalid_argument);
    EXPECT_THROW((KroneckerInstance{{1.0}, {0.1, 0.2}, 1}.validate()), std::invalid_argument);
}

TEST(Solve, RootTwoRootThree)
{
    const std::vector<double> lam{std::numbers::sqrt2, std::sqrt(3.0)}, alpha{0.25, 0.75};
    const auto s = solve_kronecker(lam, alpha, 0.05);
    ASSERT_TRUE(s.success);
    // independent check of the returned point
    for (std::size_t n = 0; n < 2; ++n) {
        const double v = s.x0 * lam[n] - alpha[n];
        EXPECT_LT(std::abs(v - std::round(v)), 0.05);
    }
    EXPECT_LE(s.x0, 2.0 * s.T + s.step);
}

TEST(Solve, RejectsBadInput)
{
    const std::vector<double> lam{1.0, 2.0}, alpha{0.1, 0.2};
    EXPECT_THROW(solve_kronecker(lam, alpha, 0.05), std::invalid_argument);
    const std::vector<double> ok{1.0, std::numbers::sqrt2};
    EXPECT_THROW(solve_kronecker(ok, alpha, 0.0), std::invalid_argument);
    EXPECT_THROW(solve_kronecker(ok, alpha, 0.6), std::invalid_argument);
    EXPECT_THROW(solve_kronecker(ok, std::vector<double>{0.1}, 0.1), std::invalid_argument);
}
