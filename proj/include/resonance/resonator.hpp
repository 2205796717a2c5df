#ifndef RESONANCE_RESONATOR_HPP
#define RESONANCE_RESONATOR_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <numbers>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "kernels.hpp"
#include "trigpoly.hpp"

namespace resonance {

/// Which of the two lower-bound statements a certificate targets.
enum class Mode
{
    theorem1, ///< smoothed series F_1, pivot constraint, |Re(e^{i beta} F)|
    theorem2, ///< raw series F, signed Re F
};

inline const char *to_string(Mode m) { return m == Mode::theorem1 ? "theorem1" : "theorem2"; }

inline constexpr std::size_t max_subset_count = 30;
inline constexpr double default_bucket_gamma = 0.25;
inline constexpr double default_window = 4.0;

/// A selected index violated a constraint; `index` names the offending term.
class ConstraintError : public std::invalid_argument
{
public:
    ConstraintError(const std::string &what, std::size_t index)
        : std::invalid_argument(what)
        , index(index)
    {
    }

    std::size_t index;
};

struct ResonatorConfig
{
    std::vector<std::size_t> selected; ///< indices of the resonated terms (the set M)
    double X = 2.0;
    double Y = 1.0;
    double gamma = default_bucket_gamma;
    std::size_t pivot = 0; ///< theorem1 only
    double beta = 0.0;     ///< theorem1 only
    double window = default_window;

    std::size_t M() const { return selected.size(); }
    double T() const { return std::ldexp(X, static_cast<int>(selected.size())); }
};

/// Sorted, deduplicated copy of the selected indices.
inline std::vector<std::size_t> canonical_selection(std::span<const std::size_t> selected)
{
    std::vector<std::size_t> s(selected.begin(), selected.end());
    std::sort(s.begin(), s.end());
    s.erase(std::unique(s.begin(), s.end()), s.end());
    return s;
}

/// Range checks shared by both modes plus the pivot constraint 2|lambda_m - lambda_N| <= lambda_N.
inline void validate(const ResonatorConfig &cfg, const TrigSeries &series, Mode mode)
{
    if (cfg.selected.empty())
        throw std::invalid_argument("resonator: selected set must be nonempty");
    const auto sel = canonical_selection(cfg.selected);
    if (sel.size() != cfg.selected.size())
        throw std::invalid_argument("resonator: selected indices must be distinct");
    if (sel.size() > max_subset_count)
        throw std::invalid_argument("resonator: at most " + std::to_string(max_subset_count) +
                                    " selected terms are supported");
    for (auto i : sel)
        if (i >= series.size())
            throw ConstraintError("resonator: selected index " + std::to_string(i) + " out of range", i);
    if (!(cfg.X >= 1.0) || !std::isfinite(cfg.X))
        throw std::invalid_argument("resonator: X must be >= 1");
    if (!(cfg.Y >= 1.0) || !std::isfinite(cfg.Y))
        throw std::invalid_argument("resonator: Y must be >= 1");
    if (!(cfg.T() > cfg.Y))
        throw std::invalid_argument("resonator: require 2^M X > Y");
    if (!(cfg.gamma > 0.0) || cfg.gamma > max_bucket_gamma())
        throw std::invalid_argument("resonator: gamma must lie in (0, sqrt(ln2/pi)]");
    if (!(cfg.window > 0.0))
        throw std::invalid_argument("resonator: window must be positive");
    if (mode == Mode::theorem1) {
        if (cfg.pivot >= series.size())
            throw std::invalid_argument("resonator: pivot index out of range");
        const double pl = series[cfg.pivot].lambda;
        if (!(pl > 0.0))
            throw std::invalid_argument("resonator: pivot frequency must be positive");
        for (auto m : sel)
            if (2.0 * std::abs(series[m].lambda - pl) > pl)
                throw ConstraintError("resonator: selected index " + std::to_string(m) +
                                          " violates 2|lambda_m - lambda_N| <= lambda_N",
                                      m);
    }
}

/// A subset sum together with the bitmask (over the input order) that produced it.
struct SubsetSum
{
    double value;
    std::uint32_t mask;
};

/**
 *  All subset sums of `lambdas`, ascending. Sums that coincide exactly collapse
 *  to one entry; the surviving mask is the one that does not use the later element.
 *  Each sum is accumulated in input order, so the result is reproducible.
 */
inline std::vector<SubsetSum> enumerate_subset_sums(std::span<const double> lambdas)
{
    if (lambdas.size() > max_subset_count)
        throw std::invalid_argument("subset_sums: at most " + std::to_string(max_subset_count) + " elements");
    std::vector<SubsetSum> cur{{0.0, 0u}};
    std::vector<SubsetSum> next;
    for (std::size_t i = 0; i < lambdas.size(); ++i) {
        const double add = lambdas[i];
        const std::uint32_t bit = std::uint32_t{1} << i;
        next.clear();
        next.reserve(cur.size() * 2);
        std::size_t a = 0, b = 0;
        const std::size_t n = cur.size();
        while (a < n || b < n) {
            SubsetSum pick;
            if (b == n || (a < n && cur[a].value <= cur[b].value + add)) {
                pick = cur[a++];
            } else {
                pick = {cur[b].value + add, cur[b].mask | bit};
                ++b;
            }
            if (next.empty() || next.back().value != pick.value)
                next.push_back(pick);
        }
        cur.swap(next);
    }
    return cur;
}

inline std::vector<double> subset_sums(std::span<const double> lambdas)
{
    const auto e = enumerate_subset_sums(lambdas);
    std::vector<double> out;
    out.reserve(e.size());
    for (const auto &s : e)
        out.push_back(s.value);
    return out;
}

struct Bucketed
{
    std::vector<double> d;               ///< bucket minima, increasing
    std::vector<std::uint64_t> bucket;   ///< 1-based bucket index j_l
    std::vector<std::uint32_t> mask;     ///< subset realising d_l
};

/// Minimum of each nonempty half-open window [(j-1)w, jw), j >= 1, over ascending nonnegative sums.
inline Bucketed bucket_minima(std::span<const SubsetSum> sorted, double width)
{
    if (!(width > 0.0))
        throw std::invalid_argument("bucket_minima: width must be positive");
    Bucketed out;
    for (const auto &s : sorted) {
        if (s.value < 0.0)
            throw std::invalid_argument("bucket_minima: sums must be nonnegative");
        const auto j = static_cast<std::uint64_t>(std::floor(s.value / width)) + 1;
        if (out.bucket.empty() || out.bucket.back() != j) {
            out.d.push_back(s.value);
            out.bucket.push_back(j);
            out.mask.push_back(s.mask);
        }
    }
    return out;
}

inline Bucketed bucket_minima(std::span<const double> sorted, double width)
{
    std::vector<SubsetSum> tmp;
    tmp.reserve(sorted.size());
    for (double v : sorted)
        tmp.push_back({v, 0u});
    return bucket_minima(tmp, width);
}

/**
 *  R(x) = sum_l e(d_l x), built from bucket minima of the subset sums of the
 *  selected frequencies. `mask[l]` indexes into `member_lambdas`.
 */
struct Resonator
{
    std::vector<double> d;
    std::vector<std::uint64_t> bucket;
    std::vector<std::uint32_t> mask;
    std::vector<std::size_t> members; ///< selected series indices, ascending
    std::vector<double> member_lambdas;
    double T = 0.0;
    double log_T = 0.0;
    double gamma = default_bucket_gamma;
    double width = 0.0; ///< gamma log T / T
    double window = default_window;

    std::size_t L() const noexcept { return d.size(); }
    /// T / log T, the scale of the Gaussian weight.
    double scale() const noexcept { return T / log_T; }

    std::complex<double> operator()(double x) const
    {
        std::complex<double> s{0.0, 0.0};
        for (double v : d)
            s += unit_phase(v * x);
        return s;
    }

    /// Recompute the subset sum behind d_l from its mask.
    double reconstruct(std::size_t l) const
    {
        double s = 0.0;
        for (std::size_t i = 0; i < member_lambdas.size(); ++i)
            if (mask.at(l) >> i & 1u)
                s += member_lambdas[i];
        return s;
    }
};

inline Resonator build_resonator(const ResonatorConfig &cfg, const TrigSeries &series)
{
    if (cfg.selected.empty())
        throw std::invalid_argument("build_resonator: selected set must be nonempty");
    const auto sel = canonical_selection(cfg.selected);
    if (sel.size() > max_subset_count)
        throw std::invalid_argument("build_resonator: too many selected terms");
    const double T = std::ldexp(cfg.X, static_cast<int>(sel.size()));
    if (!(T > 1.0))
        throw std::invalid_argument("build_resonator: T = 2^M X must exceed 1");
    if (!(cfg.gamma > 0.0))
        throw std::invalid_argument("build_resonator: gamma must be positive");

    Resonator r;
    r.members = sel;
    for (auto i : sel)
        r.member_lambdas.push_back(series[i].lambda);
    r.T = T;
    r.log_T = std::log(T);
    r.gamma = cfg.gamma;
    r.width = cfg.gamma * r.log_T / T;
    r.window = cfg.window;

    const auto sums = enumerate_subset_sums(r.member_lambdas);
    auto b = bucket_minima(sums, r.width);
    r.d = std::move(b.d);
    r.bucket = std::move(b.bucket);
    r.mask = std::move(b.mask);
    return r;
}

/**
 *  P(mu) = sum_{k,l} Phi((mu + d_k - d_l) / c), c = log T / T, keeping only
 *  pairs with |mu + d_k - d_l| <= window * c. `d` must be ascending.
 */
inline double pair_kernel_sum(std::span<const double> d, double mu, double c, double window)
{
    const double reach = window * c;
    double total = 0.0;
    for (double dl : d) {
        const double centre = dl - mu;
        auto it = std::lower_bound(d.begin(), d.end(), centre - reach);
        for (; it != d.end() && *it <= centre + reach; ++it)
            total += gaussian((mu + *it - dl) / c);
    }
    return total;
}

/// Same sum over all L^2 pairs, no window.
inline double pair_kernel_sum_full(std::span<const double> d, double mu, double c)
{
    double total = 0.0;
    for (double dl : d)
        for (double dk : d)
            total += gaussian((mu + dk - dl) / c);
    return total;
}

struct J2Result
{
    double value;
    double lower; ///< L T / log T
    double upper; ///< L T/log T + (T/log T) sum_{k != l} Phi(gamma(|j_k - j_l| - 1)) + truncation slack
};

inline J2Result compute_J2(const Resonator &res)
{
    const double c = res.log_T / res.T;
    const double s = res.scale();
    const double L = static_cast<double>(res.L());
    J2Result out{};
    out.value = s * pair_kernel_sum(res.d, 0.0, c, res.window);
    out.lower = s * L;
    if (!(out.value >= out.lower))
        throw std::logic_error("compute_J2: J2 < L T / log T");

    // Off-diagonal bucket bound, truncated at |j_k - j_l| - 1 > window / gamma;
    // each dropped pair contributes at most Phi(window).
    const auto reach = static_cast<std::uint64_t>(std::ceil(res.window / res.gamma)) + 1;
    double off = 0.0;
    const auto &j = res.bucket;
    for (std::size_t l = 0; l < j.size(); ++l)
        for (std::size_t k = l + 1; k < j.size() && j[k] - j[l] <= reach; ++k)
            off += 2.0 * gaussian(res.gamma * static_cast<double>(j[k] - j[l] - 1));
    off += L * L * gaussian(res.window);
    out.upper = s * (L + off);
    return out;
}

/// J_1 = (T/log T) sum_n f(n) P(lambda_n), with the series already smoothed when required.
inline double compute_J1(const Resonator &res, const TrigSeries &series)
{
    const double c = res.log_T / res.T;
    double total = 0.0;
    for (const auto &t : series.terms())
        total += t.f * pair_kernel_sum(res.d, t.lambda, c, res.window);
    return res.scale() * total;
}

inline double compute_J1(const Resonator &res, const SmoothedSeries &smoothed)
{
    return compute_J1(res, smoothed.smoothed);
}

/// sum_{k,l} Phi(T |lambda_m + d_l - d_k| / log T); at least L/4 for gamma <= sqrt(ln2/pi).
inline double per_m_lemma(const Resonator &res, double m_lambda)
{
    return pair_kernel_sum(res.d, -m_lambda, res.log_T / res.T, res.window);
}

struct PerMEntry
{
    std::size_t index;
    double lambda;
    double f;      ///< coefficient entering the bound (weighted in theorem1 mode)
    double sum;    ///< per_m_lemma value
    double threshold; ///< L / 4
};

struct ResonanceReport
{
    Mode mode = Mode::theorem2;
    std::size_t M = 0;
    std::size_t L = 0;
    double T = 0.0;
    double X = 0.0;
    double Y = 0.0;
    double gamma = 0.0;
    double J1 = 0.0;
    double J2 = 0.0;
    double J2_lower = 0.0;
    double J2_upper = 0.0;
    double ratio = 0.0;
    double selected_mass = 0.0;  ///< sum_{m in M} f(m)
    double weighted_mass = 0.0;  ///< sum_{m in M} f(m) K^(...) (equals selected_mass in theorem2 mode)
    double theorem_bound = 0.0;  ///< 1/8 (theorem1) or 1/4 (theorem2) times selected_mass
    double weighted_bound = 0.0; ///< weighted_mass / 4
    double lemma_bound = 0.0;    ///< sum f(m) P(lambda_m) / P(0), a rigorous lower bound for the ratio
    double coefficient_mass = 0.0; ///< F(0) or F_1(0)
    double tail_error = 0.0;
    double bound = 0.0; ///< certified: max over [Y, T] of Re F (or Re F_1) >= ratio - tail_error
    bool ratio_meets_constant = false;
    bool lemma_holds = false;
    std::vector<PerMEntry> per_m;
};

/**
 *  Relative weight of the discarded range |x| < Y or |x| > T:
 *  (mass L^2 / J_2) * int Phi(x log T / T) dx over that range, in closed form.
 */
inline double discarded_tail(double mass, std::size_t L, double T, double Y, double J2)
{
    const double lt = std::log(T);
    const double s = T / lt;
    const double rpi = std::sqrt(std::numbers::pi);
    const double inner = s * std::erf(rpi * Y * lt / T);
    const double outer = s * std::erfc(rpi * lt);
    const double l = static_cast<double>(L);
    return mass * l * l * (inner + outer) / J2;
}

/**
 *  Builds the resonator, evaluates J_1 and J_2 in closed form and assembles
 *  the certificate. In theorem1 mode the series is smoothed around cfg.pivot
 *  and the certificate bounds Re F_1; verify_theorem1 converts it to F.
 */
inline ResonanceReport certify_lower_bound(const ResonatorConfig &cfg, const TrigSeries &series, Mode mode)
{
    validate(cfg, series, mode);
    const Resonator res = build_resonator(cfg, series);

    std::optional<SmoothedSeries> sm;
    if (mode == Mode::theorem1)
        sm = smooth(series, cfg.pivot);
    const TrigSeries &working = sm ? sm->smoothed : series;

    ResonanceReport rep;
    rep.mode = mode;
    rep.M = res.members.size();
    rep.L = res.L();
    rep.T = res.T;
    rep.X = cfg.X;
    rep.Y = cfg.Y;
    rep.gamma = cfg.gamma;

    const auto j2 = compute_J2(res);
    rep.J2 = j2.value;
    rep.J2_lower = j2.lower;
    rep.J2_upper = j2.upper;
    rep.J1 = compute_J1(res, working);
    rep.ratio = rep.J1 / rep.J2;

    const double threshold = static_cast<double>(rep.L) / 4.0;
    const double p0 = rep.J2 / res.scale();
    double lemma_num = 0.0;
    rep.lemma_holds = true;
    for (std::size_t i = 0; i < res.members.size(); ++i) {
        const auto idx = res.members[i];
        const double lam = series[idx].lambda;
        const double w = sm ? smoothing_weight(lam, series[cfg.pivot].lambda) : 1.0;
        PerMEntry e{idx, lam, series[idx].f * w, per_m_lemma(res, lam), threshold};
        rep.selected_mass += series[idx].f;
        rep.weighted_mass += e.f;
        lemma_num += e.f * e.sum;
        rep.lemma_holds = rep.lemma_holds && e.sum >= threshold;
        rep.per_m.push_back(e);
    }
    rep.lemma_bound = lemma_num / p0;
    rep.weighted_bound = rep.weighted_mass / 4.0;
    rep.theorem_bound = (mode == Mode::theorem1 ? 0.125 : 0.25) * rep.selected_mass;
    rep.ratio_meets_constant = rep.ratio >= rep.theorem_bound && rep.ratio >= rep.weighted_bound;

    rep.coefficient_mass = working.total_mass();
    rep.tail_error = discarded_tail(rep.coefficient_mass, rep.L, rep.T, rep.Y, rep.J2);
    rep.bound = rep.ratio - rep.tail_error;
    return rep;
}

struct MeasureBound
{
    double theorem_form;   ///< (Sigma - V) X / (2 (M log 2 + log X) max|F|), measure inside [Y, T]
    double symmetric_form; ///< (Sigma - V) T / (2^M log T max|F|), measure of the set |x| in [Y, T]
};

inline MeasureBound measure_lower_bound(double sigma, double V, double max_abs_F, std::size_t M, double X)
{
    if (!(sigma > 0.0))
        throw std::invalid_argument("measure_lower_bound: certified bound must be positive");
    if (!(V > 0.0) || V > sigma)
        throw std::invalid_argument("measure_lower_bound: require 0 < V <= Sigma");
    if (!(max_abs_F > 0.0))
        throw std::invalid_argument("measure_lower_bound: max |F| must be positive");
    const double m = static_cast<double>(M);
    const double T = std::ldexp(X, static_cast<int>(M));
    MeasureBound out;
    out.theorem_form = (sigma - V) * X / (2.0 * (m * std::numbers::ln2 + std::log(X)) * max_abs_F);
    out.symmetric_form = (sigma - V) * T / (std::ldexp(1.0, static_cast<int>(M)) * std::log(T) * max_abs_F);
    return out;
}

inline MeasureBound measure_lower_bound(const ResonanceReport &rep, double V, double max_abs_F)
{
    return measure_lower_bound(rep.bound, V, max_abs_F, rep.M, rep.X);
}

} // namespace resonance
#endif // RESONANCE_RESONATOR_HPP
