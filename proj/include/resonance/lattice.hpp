#ifndef RESONANCE_LATTICE_HPP
#define RESONANCE_LATTICE_HPP

#include <array>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "trigpoly.hpp"

namespace resonance::lattice {

inline constexpr std::uint64_t max_bound = 1'000'000'000;
inline constexpr unsigned max_divisor_order = 4;
inline constexpr double euler_gamma = std::numbers::egamma;

/// Stieltjes constants gamma_0..gamma_2 (20 digits); enough for the d_k residue with k <= 4.
inline constexpr std::array<double, 3> stieltjes = {
    0.57721566490153286061,
    -0.072815845483676724861,
    -0.0096903631928723184845,
};

/**
 *  Arithmetic tables up to `bound`, indexed by n (entry 0 unused):
 *  d(n), r(n) (representations as a sum of two squares, signs and order counted),
 *  omega(n), optionally d_k(n), plus prefix sums.
 */
struct LatticeTables
{
    std::uint64_t bound = 0;
    std::vector<std::uint32_t> d;
    std::vector<std::uint32_t> r;
    std::vector<std::uint8_t> omega;
    std::vector<std::uint64_t> d_sum;
    std::vector<std::uint64_t> r_sum;
    unsigned k = 0;
    std::vector<std::uint64_t> dk;
    std::vector<std::uint64_t> dk_sum;

    /// Prefix sum over 1 <= n <= x.
    static std::uint64_t prefix(const std::vector<std::uint64_t> &sums, double x)
    {
        if (x < 1.0)
            return 0;
        return sums.at(static_cast<std::size_t>(std::floor(x)));
    }
};

namespace detail {

inline void require_within(const LatticeTables &t, double x, const char *what)
{
    if (!std::isfinite(x) || x > static_cast<double>(t.bound))
        throw std::out_of_range(std::string(what) + ": argument exceeds table bound " + std::to_string(t.bound));
}

} // namespace detail

/// Smallest-prime-factor table via a linear sieve.
inline std::vector<std::uint32_t> smallest_prime_factors(std::uint64_t bound)
{
    std::vector<std::uint32_t> spf(bound + 1, 0);
    std::vector<std::uint32_t> primes;
    for (std::uint64_t i = 2; i <= bound; ++i) {
        if (spf[i] == 0) {
            spf[i] = static_cast<std::uint32_t>(i);
            primes.push_back(static_cast<std::uint32_t>(i));
        }
        for (auto p : primes) {
            const std::uint64_t q = p * i;
            if (p > spf[i] || q > bound)
                break;
            spf[q] = p;
        }
    }
    return spf;
}

/// d_k(n) for n <= bound by k-1 Dirichlet convolutions of the all-ones sequence.
inline std::vector<std::uint64_t> divisor_k(std::uint64_t bound, unsigned k)
{
    if (k == 0)
        throw std::invalid_argument("divisor_k: k must be >= 1");
    std::vector<std::uint64_t> cur(bound + 1, 1);
    cur[0] = 0;
    for (unsigned step = 1; step < k; ++step) {
        std::vector<std::uint64_t> next(bound + 1, 0);
        for (std::uint64_t a = 1; a <= bound; ++a)
            for (std::uint64_t n = a; n <= bound; n += a)
                next[n] += cur[a];
        cur.swap(next);
    }
    return cur;
}

inline LatticeTables sieve_tables(std::uint64_t bound, std::optional<unsigned> k = std::nullopt)
{
    if (bound < 1)
        throw std::invalid_argument("sieve_tables: bound must be >= 1");
    if (bound > max_bound)
        throw std::invalid_argument("sieve_tables: bound exceeds " + std::to_string(max_bound));
    if (k && (*k < 1 || *k > max_divisor_order))
        throw std::invalid_argument("sieve_tables: k must lie in [1, " + std::to_string(max_divisor_order) + "]");

    LatticeTables t;
    t.bound = bound;
    const auto spf = smallest_prime_factors(bound);
    t.d.assign(bound + 1, 0);
    t.r.assign(bound + 1, 0);
    t.omega.assign(bound + 1, 0);
    // chi[n] = sum_{e | n} chi_4(e); r(n) = 4 chi[n].
    std::vector<std::uint32_t> chi(bound + 1, 0);
    t.d[1] = 1;
    chi[1] = 1;
    for (std::uint64_t n = 2; n <= bound; ++n) {
        const std::uint32_t p = spf[n];
        std::uint64_t rest = n / p;
        unsigned e = 1;
        while (rest % p == 0) {
            rest /= p;
            ++e;
        }
        t.d[n] = t.d[rest] * (e + 1);
        t.omega[n] = static_cast<std::uint8_t>(t.omega[rest] + 1);
        std::uint32_t local = 1;
        if (p % 4 == 1)
            local = e + 1;
        else if (p % 4 == 3)
            local = (e % 2 == 0) ? 1 : 0;
        chi[n] = chi[rest] * local;
    }
    t.d_sum.assign(bound + 1, 0);
    t.r_sum.assign(bound + 1, 0);
    for (std::uint64_t n = 1; n <= bound; ++n) {
        t.r[n] = 4 * chi[n];
        t.d_sum[n] = t.d_sum[n - 1] + t.d[n];
        t.r_sum[n] = t.r_sum[n - 1] + t.r[n];
    }
    if (k) {
        t.k = *k;
        t.dk = divisor_k(bound, *k);
        t.dk_sum.assign(bound + 1, 0);
        for (std::uint64_t n = 1; n <= bound; ++n)
            t.dk_sum[n] = t.dk_sum[n - 1] + t.dk[n];
    }
    return t;
}

/// Delta(x) = sum_{n <= x} d(n) - x log x - (2 gamma - 1) x.
inline double delta(const LatticeTables &t, double x)
{
    detail::require_within(t, x, "delta");
    if (!(x > 0.0))
        throw std::invalid_argument("delta: x must be positive");
    const auto s = static_cast<double>(LatticeTables::prefix(t.d_sum, x));
    return s - x * std::log(x) - (2.0 * euler_gamma - 1.0) * x;
}

/// P(x) = sum_{1 <= n <= x} r(n) - pi x (origin excluded).
inline double gauss_p(const LatticeTables &t, double x)
{
    detail::require_within(t, x, "gauss_p");
    if (x < 0.0)
        throw std::invalid_argument("gauss_p: x must be nonnegative");
    return static_cast<double>(LatticeTables::prefix(t.r_sum, x)) - std::numbers::pi * x;
}

/**
 *  Res_{s=1} zeta(s)^k x^s / s = x Q_{k-1}(log x). With u = s - 1,
 *  u zeta(s) = 1 + gamma_0 u - gamma_1 u^2 + gamma_2 u^3 / 2 + ..., and 1/s = sum (-u)^c,
 *  so the residue is x times the u^{k-1} coefficient of (u zeta)^k e^{u log x} / (1 + u).
 */
inline double dk_main_term(unsigned k, double x)
{
    if (k < 1 || k > max_divisor_order)
        throw std::invalid_argument("dk_main_term: k must lie in [1, 4]");
    if (!(x > 0.0))
        throw std::invalid_argument("dk_main_term: x must be positive");
    constexpr std::size_t deg = max_divisor_order;
    std::array<double, deg> z = {1.0, stieltjes[0], -stieltjes[1], stieltjes[2] / 2.0};
    std::array<double, deg> pw{};
    pw[0] = 1.0;
    for (unsigned i = 0; i < k; ++i) {
        std::array<double, deg> nx{};
        for (std::size_t a = 0; a < deg; ++a)
            for (std::size_t b = 0; a + b < deg; ++b)
                nx[a + b] += pw[a] * z[b];
        pw = nx;
    }
    const double lx = std::log(x);
    const std::size_t top = k - 1;
    double coeff = 0.0;
    double fact = 1.0;
    for (std::size_t b = 0; b <= top; ++b) {
        if (b > 0)
            fact *= static_cast<double>(b);
        const double lb = std::pow(lx, static_cast<double>(b)) / fact;
        for (std::size_t a = 0; a + b <= top; ++a) {
            const std::size_t c = top - a - b;
            coeff += pw[a] * lb * ((c % 2 == 0) ? 1.0 : -1.0);
        }
    }
    return x * coeff;
}

/// Delta_k(x) = sum_{n <= x} d_k(n) - Res_{s=1} zeta^k(s) x^s / s.
inline double delta_k(const LatticeTables &t, double x)
{
    if (t.k == 0)
        throw std::invalid_argument("delta_k: tables were sieved without d_k");
    detail::require_within(t, x, "delta_k");
    return static_cast<double>(LatticeTables::prefix(t.dk_sum, x)) - dk_main_term(t.k, x);
}

/// Truncated oscillatory series plus the phase beta and the x-range where the identity is used.
struct VoronoiSeries
{
    TrigSeries series;
    double beta;
    double lo; ///< sqrt(X)
    double hi; ///< X^{3/2}
    std::uint64_t terms; ///< floor(X^3)
};

inline std::uint64_t cube_floor(double X)
{
    auto n = static_cast<std::uint64_t>(std::floor(X * X * X));
    // guard against X^3 rounding just below an integer
    while (static_cast<double>(n + 1) <= X * X * X)
        ++n;
    return n;
}

/// sum_{n <= X^3} d(n) n^{-3/4} e(2 sqrt(n) x) with beta = -pi/4.
inline VoronoiSeries voronoi_series(const LatticeTables &t, double X)
{
    if (!(X >= 1.0))
        throw std::invalid_argument("voronoi_series: X must be >= 1");
    const auto n_max = cube_floor(X);
    if (n_max > t.bound)
        throw std::out_of_range("voronoi_series: table bound " + std::to_string(t.bound) + " below X^3");
    std::vector<Term> terms;
    terms.reserve(n_max);
    for (std::uint64_t n = 1; n <= n_max; ++n) {
        const auto nd = static_cast<double>(n);
        terms.push_back({2.0 * std::sqrt(nd), t.d[n] * std::pow(nd, -0.75)});
    }
    return {TrigSeries(std::move(terms)), -std::numbers::pi / 4.0, std::sqrt(X), X * std::sqrt(X), n_max};
}

/// Circle-problem analogue: sum_{n <= X^3, r(n) > 0} r(n) n^{-3/4} e(sqrt(n) x) with beta = -3 pi/4.
inline VoronoiSeries circle_series(const LatticeTables &t, double X)
{
    if (!(X >= 1.0))
        throw std::invalid_argument("circle_series: X must be >= 1");
    const auto n_max = cube_floor(X);
    if (n_max > t.bound)
        throw std::out_of_range("circle_series: table bound " + std::to_string(t.bound) + " below X^3");
    std::vector<Term> terms;
    for (std::uint64_t n = 1; n <= n_max; ++n) {
        if (t.r[n] == 0)
            continue;
        const auto nd = static_cast<double>(n);
        terms.push_back({std::sqrt(nd), t.r[n] * std::pow(nd, -0.75)});
    }
    return {TrigSeries(std::move(terms)), -3.0 * std::numbers::pi / 4.0, std::sqrt(X), X * std::sqrt(X), n_max};
}

/// pi sqrt2 Delta(x^2) / sqrt(x) - Re(e^{i beta} F(x)); the o(1) term of the truncated identity.
inline double voronoi_residual(const LatticeTables &t, const VoronoiSeries &v, double x)
{
    const double lhs = std::numbers::pi * std::numbers::sqrt2 * delta(t, x * x) / std::sqrt(x);
    return lhs - v.series.real_part(x, v.beta);
}

/// pi P(x^2) / sqrt(x) - Re(e^{i beta} F(x)) for circle_series().
inline double circle_residual(const LatticeTables &t, const VoronoiSeries &v, double x)
{
    const double lhs = std::numbers::pi * gauss_p(t, x * x) / std::sqrt(x);
    return lhs - v.series.real_part(x, v.beta);
}

/// floor(rho log log N); log is natural.
inline unsigned target_omega(std::uint64_t N, double rho)
{
    if (N < 16)
        throw std::invalid_argument("build_M_set: require N >= 16 so that log log N > 0 is meaningful");
    if (!(rho > 0.0))
        throw std::invalid_argument("build_M_set: rho must be positive");
    return static_cast<unsigned>(std::floor(rho * std::log(std::log(static_cast<double>(N)))));
}

inline constexpr double default_rho = 2.5198420997897464; // 2^{4/3}

/// { m in [N/4, 9N/4] : omega(m) = floor(rho log log N) }, ascending.
inline std::vector<std::uint64_t> build_M_set(const LatticeTables &t, std::uint64_t N, double rho = default_rho)
{
    const unsigned target = target_omega(N, rho);
    const std::uint64_t lo = (N + 3) / 4;
    const std::uint64_t hi = (9 * N) / 4;
    if (hi > t.bound)
        throw std::out_of_range("build_M_set: table bound below 9N/4");
    std::vector<std::uint64_t> out;
    for (std::uint64_t m = lo; m <= hi; ++m)
        if (t.omega[m] == target)
            out.push_back(m);
    return out;
}

struct CardinalityDiagnostic
{
    std::size_t M;
    double predicted; ///< N (log N)^{rho - 1 - rho log rho} / sqrt(log log N)
    double ratio;
    unsigned target_omega;
};

inline CardinalityDiagnostic cardinality_diagnostic(const LatticeTables &t, std::uint64_t N, double rho = default_rho)
{
    const auto set = build_M_set(t, N, rho);
    const double n = static_cast<double>(N);
    const double ln = std::log(n);
    const double predicted = n * std::pow(ln, rho - 1.0 - rho * std::log(rho)) / std::sqrt(std::log(ln));
    return {set.size(), predicted, static_cast<double>(set.size()) / predicted, target_omega(N, rho)};
}

} // namespace resonance::lattice
#endif // RESONANCE_LATTICE_HPP
