#ifndef RESONANCE_TESTS_SUPPORT_HPP
#define RESONANCE_TESTS_SUPPORT_HPP

#include <algorithm>
#include <cstdint>
#include <random>
#include <vector>

#include "resonance/resonator.hpp"
#include "resonance/trigpoly.hpp"

namespace resonance::testing {

struct Instance
{
    TrigSeries series;
    ResonatorConfig cfg;
};

/// Distinct sorted frequencies uniform in [lo, hi).
inline std::vector<double> random_frequencies(std::mt19937_64 &rng, std::size_t n, double lo, double hi)
{
    std::uniform_real_distribution<double> u(lo, hi);
    std::vector<double> v;
    while (v.size() < n) {
        const double x = u(rng);
        if (std::find(v.begin(), v.end(), x) == v.end())
            v.push_back(x);
    }
    std::sort(v.begin(), v.end());
    return v;
}

/**
 *  `selected` terms with coefficients in [0.5, 1.5] plus `extra` terms with
 *  coefficients in [0, extra_scale]; all frequencies in [lo, hi).
 */
inline Instance random_instance(std::mt19937_64 &rng, std::size_t selected, std::size_t extra, double lo, double hi,
                                double X, double Y, double extra_scale = 0.05)
{
    const auto lam = random_frequencies(rng, selected + extra, lo, hi);
    std::vector<std::size_t> order(lam.size());
    for (std::size_t i = 0; i < order.size(); ++i)
        order[i] = i;
    std::shuffle(order.begin(), order.end(), rng);
    std::vector<bool> chosen(lam.size(), false);
    for (std::size_t i = 0; i < selected; ++i)
        chosen[order[i]] = true;

    std::uniform_real_distribution<double> big(0.5, 1.5), small(0.0, extra_scale);
    std::vector<Term> terms;
    Instance inst;
    for (std::size_t i = 0; i < lam.size(); ++i) {
        terms.push_back({lam[i], chosen[i] ? big(rng) : small(rng)});
        if (chosen[i])
            inst.cfg.selected.push_back(i);
    }
    inst.series = TrigSeries(std::move(terms));
    inst.cfg.X = X;
    inst.cfg.Y = Y;
    return inst;
}

} // namespace resonance::testing
#endif // RESONANCE_TESTS_SUPPORT_HPP
