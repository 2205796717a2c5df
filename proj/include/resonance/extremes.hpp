#ifndef RESONANCE_EXTREMES_HPP
#define RESONANCE_EXTREMES_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <stdexcept>
#include <vector>

#include "parallel.hpp"
#include "resonator.hpp"
#include "trigpoly.hpp"

namespace resonance {

enum class Objective
{
    real,     ///< Re(e^{i beta} F(x))
    absolute, ///< |Re(e^{i beta} F(x))|
};

struct ScanResult
{
    double lo = 0.0;
    double hi = 0.0;
    double grid_step = 0.0;
    double best_x = 0.0;
    double best_value = 0.0;
    double grid_best = 0.0; ///< best value on the grid before refinement
    double lipschitz = 0.0;
    double bracket_lo = 0.0;
    double bracket_hi = 0.0; ///< best_value + lipschitz * grid_step / 2
    std::uint64_t evaluations = 0;
};

namespace detail {

template<typename Series>
double objective_value(const Series &s, double x, double beta, Objective obj)
{
    const double v = s.real_part(x, beta);
    return obj == Objective::absolute ? std::abs(v) : v;
}

/// Golden-section search for a maximum on [a, b]; returns (x, value).
template<typename Fn>
std::pair<double, double> golden_max(Fn &&f, double a, double b, int iterations = 60)
{
    const double inv_phi = 0.6180339887498949;
    double c = b - inv_phi * (b - a), d = a + inv_phi * (b - a);
    double fc = f(c), fd = f(d);
    for (int i = 0; i < iterations; ++i) {
        if (fc < fd) {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = f(d);
        } else {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = f(c);
        }
    }
    return fc > fd ? std::pair{c, fc} : std::pair{d, fd};
}

} // namespace detail

inline constexpr std::size_t max_refined_candidates = 32;

/**
 *  Maximum of Re(e^{i beta} F) (or its absolute value) over [lo, hi].
 *
 *  Evaluates a uniform grid with `budget` intervals (budget + 1 points), then
 *  polishes up to 32 grid local maxima lying within lipschitz * step of the
 *  grid best by golden section on their neighbouring cells. The true maximum
 *  lies in [best_value, best_value + lipschitz * step / 2].
 */
template<typename Series>
ScanResult scan_max(const Series &series, double beta, double lo, double hi, std::uint64_t budget,
                    Objective obj = Objective::real)
{
    if (!(lo < hi) || !std::isfinite(lo) || !std::isfinite(hi))
        throw std::invalid_argument("scan_max: require finite lo < hi");
    if (budget < 2)
        throw std::invalid_argument("scan_max: budget must be >= 2");

    ScanResult r;
    r.lo = lo;
    r.hi = hi;
    r.grid_step = (hi - lo) / static_cast<double>(budget);
    r.lipschitz = series.lipschitz();
    const std::size_t n = budget + 1;
    auto grid_x = [&](std::size_t i) { return i == budget ? hi : lo + static_cast<double>(i) * r.grid_step; };

    std::vector<double> values(n);
    parallel_chunks(n, [&](std::size_t b, std::size_t e, std::size_t) {
        for (std::size_t i = b; i < e; ++i)
            values[i] = detail::objective_value(series, grid_x(i), beta, obj);
    });
    r.evaluations = n;

    std::size_t best_i = 0;
    for (std::size_t i = 1; i < n; ++i)
        if (values[i] > values[best_i])
            best_i = i;
    r.grid_best = values[best_i];
    r.best_x = grid_x(best_i);
    r.best_value = values[best_i];

    const double cut = r.grid_best - r.lipschitz * r.grid_step;
    std::vector<std::size_t> cand;
    for (std::size_t i = 0; i < n; ++i) {
        if (values[i] < cut)
            continue;
        const bool left_ok = i == 0 || values[i] >= values[i - 1];
        const bool right_ok = i + 1 == n || values[i] >= values[i + 1];
        if (left_ok && right_ok)
            cand.push_back(i);
    }
    std::stable_sort(cand.begin(), cand.end(), [&](std::size_t a, std::size_t b) { return values[a] > values[b]; });
    if (cand.size() > max_refined_candidates)
        cand.resize(max_refined_candidates);

    auto f = [&](double x) { return detail::objective_value(series, x, beta, obj); };
    for (auto i : cand) {
        const double a = std::max(lo, grid_x(i) - r.grid_step);
        const double b = std::min(hi, grid_x(i) + r.grid_step);
        auto [x, v] = detail::golden_max(f, a, b);
        r.evaluations += 62;
        if (v > r.best_value) {
            r.best_value = v;
            r.best_x = x;
        }
    }
    r.bracket_lo = r.best_value;
    r.bracket_hi = r.best_value + r.lipschitz * r.grid_step / 2.0;
    return r;
}

struct LevelSetEstimate
{
    double V = 0.0;
    double lo = 0.0;
    double hi = 0.0;
    double grid_step = 0.0;
    double measured = 0.0;  ///< total length of cells whose midpoint has Re F >= V
    double certified = 0.0; ///< cells with Re F(mid) >= V + lipschitz * step / 2; a rigorous lower bound
    std::optional<double> theoretical;
};

/// Grid estimate of meas{x in [lo, hi] : Re(e^{i beta} F(x)) >= V}, evaluated at cell midpoints.
template<typename Series>
LevelSetEstimate measure_level_set(const Series &series, double V, double lo, double hi, double grid_step,
                                   double beta = 0.0, std::optional<double> theoretical = std::nullopt)
{
    if (!(grid_step > 0.0))
        throw std::invalid_argument("measure_level_set: grid_step must be positive");
    if (!(lo <= hi))
        throw std::invalid_argument("measure_level_set: require lo <= hi");
    LevelSetEstimate est;
    est.V = V;
    est.lo = lo;
    est.hi = hi;
    est.grid_step = grid_step;
    est.theoretical = theoretical;

    const double span = hi - lo;
    const auto full = static_cast<std::uint64_t>(std::floor(span / grid_step));
    const double last = span - static_cast<double>(full) * grid_step;
    const std::size_t cells = full + (last > 0.0 ? 1 : 0);
    const double margin = series.lipschitz() * grid_step / 2.0;

    const unsigned workers = thread_count();
    std::vector<std::uint64_t> hit(workers + 1, 0), sure(workers + 1, 0);
    std::vector<double> partial_hit(workers + 1, 0.0), partial_sure(workers + 1, 0.0);
    parallel_chunks(
        cells,
        [&](std::size_t b, std::size_t e, std::size_t c) {
            for (std::size_t i = b; i < e; ++i) {
                const bool tail_cell = i == full;
                const double len = tail_cell ? last : grid_step;
                const double mid = lo + static_cast<double>(i) * grid_step + len / 2.0;
                const double v = series.real_part(mid, beta);
                const double m = tail_cell ? series.lipschitz() * last / 2.0 : margin;
                if (v >= V) {
                    if (tail_cell)
                        partial_hit[c] += len;
                    else
                        ++hit[c];
                }
                if (v >= V + m) {
                    if (tail_cell)
                        partial_sure[c] += len;
                    else
                        ++sure[c];
                }
            }
        },
        workers);
    std::uint64_t h = 0, s = 0;
    double ph = 0.0, ps = 0.0;
    for (unsigned c = 0; c <= workers; ++c) {
        h += hit[c];
        s += sure[c];
        ph += partial_hit[c];
        ps += partial_sure[c];
    }
    est.measured = static_cast<double>(h) * grid_step + ph;
    est.certified = static_cast<double>(s) * grid_step + ps;
    return est;
}

/// Grid budget resolving the fastest oscillation of `series` at `per_period` points per period.
inline std::uint64_t resolving_budget(const TrigSeries &series, double lo, double hi, double per_period,
                                      std::uint64_t cap)
{
    const double f = std::max(series.max_frequency(), 1e-3);
    const double want = std::ceil((hi - lo) * f * per_period);
    return static_cast<std::uint64_t>(std::clamp(want, 2.0, static_cast<double>(cap)));
}

struct Theorem1Check
{
    ResonanceReport report;
    double defect = 0.0;      ///< 4 F(0) / (pi^2 Y lambda_N)
    double half_bound = 0.0;  ///< (ratio - tail_error) / 2
    double certified = 0.0;   ///< half_bound - defect, lower bound for max |Re(e^{i beta} F)| on [Y/2, 2T]
    double sixteenth_mass = 0.0; ///< sum f(m) / 16
    ScanResult scan;
    bool vacuous = false;
    bool passed = false;
};

/**
 *  Resonance certificate for F_1 on [Y, T], lifted to F through the
 *  convolution inequality (factor 1/2 and the defect term), then checked
 *  against a scan of |Re(e^{i beta} F)| over [Y/2, 2T].
 */
inline Theorem1Check verify_theorem1(const ResonatorConfig &cfg, const TrigSeries &series,
                                     std::uint64_t budget = 0, std::uint64_t budget_cap = 4'000'000)
{
    Theorem1Check out;
    out.report = certify_lower_bound(cfg, series, Mode::theorem1);
    out.defect = convolution_defect(series, cfg.pivot, cfg.Y);
    out.half_bound = 0.5 * out.report.bound;
    out.certified = out.half_bound - out.defect;
    out.sixteenth_mass = out.report.selected_mass / 16.0;
    out.vacuous = !(out.certified > 0.0);
    const double lo = cfg.Y / 2.0, hi = 2.0 * out.report.T;
    if (budget == 0)
        budget = resolving_budget(series, lo, hi, 8.0, budget_cap);
    out.scan = scan_max(series, cfg.beta, lo, hi, budget, Objective::absolute);
    out.passed = out.scan.best_value >= out.certified && out.report.ratio_meets_constant && out.report.lemma_holds;
    return out;
}

struct Theorem2Check
{
    ResonanceReport report;
    ScanResult scan;
    LevelSetEstimate level;
    double V = 0.0;
    MeasureBound measure{};
    bool max_passed = false;
    bool measure_passed = false;
    bool passed = false;
};

/**
 *  Certificate for max Re F on [Y, T] plus the level-set measure comparison at
 *  V (default: half the certified bound). max |F| is bounded by F(0).
 */
inline Theorem2Check verify_theorem2(const ResonatorConfig &cfg, const TrigSeries &series,
                                     std::optional<double> V = std::nullopt, std::uint64_t budget = 0,
                                     std::uint64_t budget_cap = 4'000'000)
{
    Theorem2Check out;
    out.report = certify_lower_bound(cfg, series, Mode::theorem2);
    const double sigma = out.report.bound;
    if (!(sigma > 0.0))
        throw std::domain_error("verify_theorem2: certified bound is not positive; increase X or decrease Y");
    out.V = V.value_or(sigma / 2.0);
    out.measure = measure_lower_bound(out.report, out.V, series.total_mass());

    const double lo = cfg.Y, hi = out.report.T;
    if (budget == 0)
        budget = resolving_budget(series, lo, hi, 8.0, budget_cap);
    out.scan = scan_max(series, 0.0, lo, hi, budget, Objective::real);
    out.level = measure_level_set(series, out.V, lo, hi, (hi - lo) / static_cast<double>(budget), 0.0,
                                  out.measure.theorem_form);
    out.max_passed = out.scan.best_value >= sigma;
    out.measure_passed = out.level.measured >= out.measure.theorem_form;
    out.passed = out.max_passed && out.measure_passed && out.report.ratio_meets_constant && out.report.lemma_holds;
    return out;
}

} // namespace resonance
#endif // RESONANCE_EXTREMES_HPP
