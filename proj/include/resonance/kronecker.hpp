#ifndef RESONANCE_KRONECKER_HPP
#define RESONANCE_KRONECKER_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <numbers>
#include <numeric>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "kernels.hpp"

namespace resonance::kronecker {

/// ||t||: distance from t to the nearest integer.
inline double nearest_integer_distance(double t)
{
    return std::abs(t - std::nearbyint(t));
}

/**
 *  Discrete Fejer kernel K_L(t) = sum_{|l| <= L} (1 - |l|/L) e(l t)
 *                              = (1/L) (sin(pi L t) / sin(pi t))^2.
 *  Not to be confused with the continuous fejer() in kernels.hpp.
 */
inline double fejer_discrete(unsigned L, double t)
{
    if (L == 0)
        throw std::invalid_argument("fejer_discrete: L must be >= 1");
    const double Ld = static_cast<double>(L);
    const double frac = t - std::nearbyint(t);
    const double s = std::sin(std::numbers::pi * frac);
    if (std::abs(s) < 1e-6) {
        double v = 1.0;
        for (unsigned l = 1; l < L; ++l)
            v += 2.0 * (1.0 - l / Ld) * std::cos(two_pi * l * frac);
        return v;
    }
    const double q = std::sin(std::numbers::pi * Ld * frac) / s;
    return q * q / Ld;
}

struct KroneckerInstance
{
    std::vector<double> lambdas;
    std::vector<double> alphas;
    unsigned L = 1;

    void validate() const
    {
        if (lambdas.empty())
            throw std::invalid_argument("kronecker: need at least one frequency");
        if (!alphas.empty() && alphas.size() != lambdas.size())
            throw std::invalid_argument("kronecker: lambdas and alphas differ in length");
        if (L < 1)
            throw std::invalid_argument("kronecker: L must be >= 1");
        for (std::size_t i = 0; i < lambdas.size(); ++i) {
            if (!std::isfinite(lambdas[i]) || lambdas[i] == 0.0)
                throw std::invalid_argument("kronecker: frequency " + std::to_string(i) + " must be finite and nonzero");
            for (std::size_t j = 0; j < i; ++j)
                if (lambdas[j] == lambdas[i])
                    throw std::invalid_argument("kronecker: frequencies must be distinct");
        }
    }
};

/// W_L(x) = prod_n K_L(x lambda_n - alpha_n) >= 0.
inline double bohr_jessen_W(const KroneckerInstance &inst, double x)
{
    double w = 1.0;
    for (std::size_t n = 0; n < inst.lambdas.size(); ++n) {
        const double a = inst.alphas.empty() ? 0.0 : inst.alphas[n];
        w *= fejer_discrete(inst.L, x * inst.lambdas[n] - a);
    }
    return w;
}

/// Below this, a minimum is indistinguishable from an exact integer relation in double precision.
inline constexpr double degenerate_delta = 1e-12;

struct DeltaResult
{
    double delta = std::numeric_limits<double>::infinity();
    std::vector<int> witness; ///< first nonzero entry positive
    bool degenerate = false;
};

namespace detail {

inline std::size_t split_point(std::size_t n) { return (n + 1) / 2; }

/// Sum of l_i lambda_i over [from, to), accumulated in index order.
inline double partial_value(std::span<const double> lambdas, std::span<const int> l, std::size_t from, std::size_t to)
{
    double s = 0.0;
    for (std::size_t i = from; i < to; ++i)
        s += l[i] * lambdas[i];
    return s;
}

/// Canonical evaluation shared by both strategies: first half plus second half.
inline double lattice_value(std::span<const double> lambdas, std::span<const int> l)
{
    const auto h = split_point(lambdas.size());
    return partial_value(lambdas, l, 0, h) + partial_value(lambdas, l, h, lambdas.size());
}

inline std::uint64_t checked_power(std::uint64_t base, std::size_t exp, std::uint64_t cap)
{
    std::uint64_t v = 1;
    for (std::size_t i = 0; i < exp; ++i) {
        if (v > cap / base)
            return cap + 1;
        v *= base;
    }
    return v;
}

/// Digits of `code` in base 2L+1, shifted to [-L, L].
inline void decode(std::uint64_t code, unsigned L, std::span<int> out)
{
    const std::uint64_t base = 2 * static_cast<std::uint64_t>(L) + 1;
    for (auto &v : out) {
        v = static_cast<int>(code % base) - static_cast<int>(L);
        code /= base;
    }
}

inline bool upper_half(std::span<const int> l)
{
    for (int v : l)
        if (v != 0)
            return v > 0;
    return false;
}

inline void canonicalise(std::vector<int> &w)
{
    if (!upper_half(w))
        for (auto &v : w)
            v = -v;
}

inline void finish(DeltaResult &r)
{
    canonicalise(r.witness);
    r.degenerate = r.delta < degenerate_delta;
}

} // namespace detail

inline constexpr std::uint64_t brute_force_cap = 1'000'000'000;
inline constexpr std::uint64_t half_table_cap = 20'000'000;

/// Exhaustive minimum over the half-space of nonzero vectors in [-L, L]^N.
inline DeltaResult compute_delta_brute(std::span<const double> lambdas, unsigned L)
{
    if (lambdas.empty() || L < 1)
        throw std::invalid_argument("compute_delta: need N >= 1 and L >= 1");
    const std::uint64_t base = 2 * static_cast<std::uint64_t>(L) + 1;
    const auto total = detail::checked_power(base, lambdas.size(), brute_force_cap);
    if (total > brute_force_cap)
        throw std::invalid_argument("compute_delta: (2L+1)^N too large for enumeration");
    DeltaResult best;
    std::vector<int> l(lambdas.size());
    for (std::uint64_t code = 0; code < total; ++code) {
        detail::decode(code, L, l);
        if (!detail::upper_half(l))
            continue;
        const double v = std::abs(detail::lattice_value(lambdas, l));
        if (v < best.delta) {
            best.delta = v;
            best.witness = l;
        }
    }
    detail::finish(best);
    return best;
}

/**
 *  Meet in the middle: tabulate the first ceil(N/2) coordinates (upper half
 *  space only) and the remaining ones (all vectors, sorted), then for each
 *  first-half sum look up the closest second-half sums to its negation.
 */
inline DeltaResult compute_delta_mitm(std::span<const double> lambdas, unsigned L)
{
    if (lambdas.empty() || L < 1)
        throw std::invalid_argument("compute_delta: need N >= 1 and L >= 1");
    const std::size_t n = lambdas.size();
    const std::size_t h = detail::split_point(n);
    const std::uint64_t base = 2 * static_cast<std::uint64_t>(L) + 1;
    const auto size_a = detail::checked_power(base, h, half_table_cap);
    const auto size_b = detail::checked_power(base, n - h, half_table_cap);
    if (size_a > half_table_cap || size_b > half_table_cap)
        throw std::invalid_argument("compute_delta: instance too large for meet-in-the-middle");

    struct Entry
    {
        double value;
        std::uint64_t code;
    };
    std::vector<int> la(h), lb(n - h), full(n);
    std::vector<Entry> right;
    right.reserve(size_b);
    std::uint64_t zero_b = 0;
    for (std::uint64_t code = 0; code < size_b; ++code) {
        detail::decode(code, L, lb);
        if (std::all_of(lb.begin(), lb.end(), [](int v) { return v == 0; }))
            zero_b = code;
        right.push_back({detail::partial_value(lambdas.subspan(h), lb, 0, n - h), code});
    }
    std::sort(right.begin(), right.end(), [](const Entry &x, const Entry &y) {
        return x.value < y.value || (x.value == y.value && x.code < y.code);
    });

    DeltaResult best;
    auto consider = [&](double v, std::span<const int> a, std::uint64_t bcode) {
        if (v < best.delta) {
            best.delta = v;
            std::copy(a.begin(), a.end(), full.begin());
            detail::decode(bcode, L, std::span<int>(full).subspan(h));
            best.witness = full;
        }
    };

    // first half identically zero: any nonzero second half
    std::fill(la.begin(), la.end(), 0);
    for (const auto &e : right)
        if (e.code != zero_b)
            consider(std::abs(0.0 + e.value), la, e.code);

    for (std::uint64_t code = 0; code < size_a; ++code) {
        detail::decode(code, L, la);
        if (!detail::upper_half(la))
            continue;
        const double sa = detail::partial_value(lambdas, la, 0, h);
        auto it = std::lower_bound(right.begin(), right.end(), -sa,
                                   [](const Entry &e, double key) { return e.value < key; });
        if (it != right.end())
            consider(std::abs(sa + it->value), la, it->code);
        if (it != right.begin()) {
            --it;
            consider(std::abs(sa + it->value), la, it->code);
        }
    }
    detail::finish(best);
    return best;
}

/// Enumeration when (2L+1)^N <= 10^6, otherwise meet in the middle.
inline DeltaResult compute_delta(std::span<const double> lambdas, unsigned L)
{
    const std::uint64_t base = 2 * static_cast<std::uint64_t>(L) + 1;
    if (detail::checked_power(base, lambdas.size(), 1'000'000) <= 1'000'000)
        return compute_delta_brute(lambdas, L);
    return compute_delta_mitm(lambdas, L);
}

inline DeltaResult compute_delta(const KroneckerInstance &inst)
{
    inst.validate();
    return compute_delta(inst.lambdas, inst.L);
}

/// 1 - pi^2 / (2 (L+1)^2) - 4 / (T delta); multiply by sum |f(n)|.
inline double chen_bound(unsigned L, double T, double delta)
{
    if (L < 1)
        throw std::invalid_argument("chen_bound: L must be >= 1");
    if (!(delta > 0.0))
        throw std::invalid_argument("chen_bound: delta must be positive");
    if (!(T * delta >= 1.0))
        throw std::invalid_argument("chen_bound: require T >= 1/delta");
    const double l1 = static_cast<double>(L) + 1.0;
    return 1.0 - std::numbers::pi * std::numbers::pi / (2.0 * l1 * l1) - 4.0 / (T * delta);
}

inline double chen_bound(const KroneckerInstance &inst, double T)
{
    const auto d = compute_delta(inst);
    if (d.degenerate)
        throw std::invalid_argument("chen_bound: delta vanishes (or is numerically degenerate)");
    return chen_bound(inst.L, T, d.delta);
}

struct KroneckerSolution
{
    bool success = false;
    double x0 = 0.0;
    double achieved = 1.0;     ///< max_n ||x0 lambda_n - alpha_n||
    double real_value = 0.0;   ///< Re sum_n e(x0 lambda_n - alpha_n)
    double target = 0.0;       ///< N - 8 eps^2
    unsigned L = 0;
    double T = 0.0;
    double delta = 0.0;
    double step = 0.0;
    std::uint64_t evaluations = 0;
};

/// max_n ||x lambda_n - alpha_n||.
inline double approximation_error(std::span<const double> lambdas, std::span<const double> alphas, double x)
{
    double worst = 0.0;
    for (std::size_t n = 0; n < lambdas.size(); ++n)
        worst = std::max(worst, nearest_integer_distance(x * lambdas[n] - alphas[n]));
    return worst;
}

inline double kronecker_real(std::span<const double> lambdas, std::span<const double> alphas, double x)
{
    double s = 0.0;
    for (std::size_t n = 0; n < lambdas.size(); ++n)
        s += std::cos(two_pi * (x * lambdas[n] - alphas[n]));
    return s;
}

/**
 *  Finds x0 with max_n ||x0 lambda_n - alpha_n|| < eps by maximising
 *  Re sum_n e(-alpha_n) e(lambda_n x). Since cos(2 pi u) <= 1 - 8||u||^2,
 *  any x with real part >= N - 8 eps^2 qualifies. L and T are chosen so that
 *  the Chen factor guarantees N - 4 eps^2 somewhere in [T, 2T]; a grid of
 *  step 8 eps^2 / (2 pi (1 + sum|lambda|)) then cannot miss a hit. The grid is
 *  walked from 0 and the first hit is returned after a local refinement.
 */
inline KroneckerSolution solve_kronecker(std::span<const double> lambdas, std::span<const double> alphas, double eps,
                                         std::uint64_t max_evaluations = 2'000'000'000ULL)
{
    KroneckerInstance inst{{lambdas.begin(), lambdas.end()}, {alphas.begin(), alphas.end()}, 1};
    inst.validate();
    if (alphas.size() != lambdas.size())
        throw std::invalid_argument("solve_kronecker: one target per frequency required");
    if (!(eps > 0.0 && eps < 0.5))
        throw std::invalid_argument("solve_kronecker: epsilon must lie in (0, 1/2)");

    const double N = static_cast<double>(lambdas.size());
    const double slack = 8.0 * eps * eps;
    KroneckerSolution sol;
    sol.target = N - slack;

    unsigned L = 1;
    const double per_term = slack / (4.0 * N);
    while (std::numbers::pi * std::numbers::pi / (2.0 * (L + 1.0) * (L + 1.0)) > per_term)
        ++L;
    sol.L = L;
    const auto d = compute_delta(lambdas, L);
    sol.delta = d.delta;
    if (d.degenerate)
        throw std::invalid_argument("solve_kronecker: delta(L, N) vanishes or is numerically degenerate; "
                                    "frequencies look rationally dependent");
    sol.T = std::max(1.0 / d.delta, 16.0 * N / (slack * d.delta));

    double lam_abs = 0.0;
    for (double l : lambdas)
        lam_abs += std::abs(l);
    sol.step = slack / (two_pi * (1.0 + lam_abs));

    const double hi = 2.0 * sol.T;
    const auto points = static_cast<std::uint64_t>(std::ceil(hi / sol.step)) + 1;
    const auto limit = std::min(points, max_evaluations);
    double best_val = -std::numeric_limits<double>::infinity();
    double best_x = 0.0;
    for (std::uint64_t i = 0; i < limit; ++i) {
        const double x = std::min(hi, static_cast<double>(i) * sol.step);
        const double v = kronecker_real(lambdas, alphas, x);
        ++sol.evaluations;
        if (v > best_val) {
            best_val = v;
            best_x = x;
        }
        if (v >= sol.target && approximation_error(lambdas, alphas, x) < eps) {
            best_val = v;
            best_x = x;
            break;
        }
    }

    // golden-section polish on [best - step, best + step]
    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double a = best_x - sol.step, b = best_x + sol.step;
    double c1 = b - inv_phi * (b - a), c2 = a + inv_phi * (b - a);
    double f1 = kronecker_real(lambdas, alphas, c1), f2 = kronecker_real(lambdas, alphas, c2);
    for (int it = 0; it < 80; ++it) {
        if (f1 < f2) {
            a = c1;
            c1 = c2;
            f1 = f2;
            c2 = a + inv_phi * (b - a);
            f2 = kronecker_real(lambdas, alphas, c2);
        } else {
            b = c2;
            c2 = c1;
            f2 = f1;
            c1 = b - inv_phi * (b - a);
            f1 = kronecker_real(lambdas, alphas, c1);
        }
    }
    const double polished = (f1 > f2) ? c1 : c2;
    if (approximation_error(lambdas, alphas, polished) < approximation_error(lambdas, alphas, best_x))
        best_x = polished;

    sol.x0 = best_x;
    sol.real_value = kronecker_real(lambdas, alphas, best_x);
    sol.achieved = approximation_error(lambdas, alphas, best_x);
    sol.success = sol.achieved < eps;
    return sol;
}

} // namespace resonance::kronecker
#endif // RESONANCE_KRONECKER_HPP
