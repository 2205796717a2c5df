#ifndef RESONANCE_ORACLE_HPP
#define RESONANCE_ORACLE_HPP

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <boost/math/quadrature/gauss.hpp>

#include "kernels.hpp"
#include "resonator.hpp"
#include "trigpoly.hpp"

namespace resonance {

enum class Integral
{
    J1,
    J2
};

class QuadratureError : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

/**
 *  Direct numerical evaluation of
 *      J_1 = int Re F(x) |R(x)|^2 Phi(x log T / T) dx,   J_2 = int |R(x)|^2 Phi(x log T / T) dx
 *  over |x| <= 6.5 T / log T (Phi(6.5) < 1e-57). The integrand is even, so only
 *  [0, A] is integrated. Panels span at most one period of the fastest
 *  frequency; each is integrated with 10- and 15-point Gauss-Legendre and the
 *  two totals must agree to 1e-10 relative.
 *
 *  Independent of the closed-form pair sums in resonator.hpp.
 */
inline double quadrature_oracle_J(const Resonator &res, const TrigSeries &series, Integral which)
{
    if (res.L() > 64 || series.size() > 64)
        throw std::invalid_argument("quadrature_oracle_J: instance too large (L, terms <= 64)");
    if (which == Integral::J1 && series.empty())
        return 0.0;

    const double c = res.log_T / res.T;
    const double A = 6.5 / c;
    const double spread = res.d.empty() ? 0.0 : res.d.back() - res.d.front();
    const double fastest = spread + (which == Integral::J1 ? series.max_frequency() : 0.0);
    double panel = 0.25 / c;
    if (fastest > 0.0)
        panel = std::min(panel, 1.0 / fastest);
    const auto panels = static_cast<std::size_t>(std::ceil(A / panel));
    panel = A / static_cast<double>(panels);

    auto integrand = [&](double x) {
        const double r2 = std::norm(res(x));
        const double w = gaussian(x * c);
        if (which == Integral::J2)
            return r2 * w;
        return series.real_part(x) * r2 * w;
    };

    using boost::math::quadrature::gauss;
    double coarse = 0.0, fine = 0.0, abs_fine = 0.0;
    for (std::size_t i = 0; i < panels; ++i) {
        const double a = panel * static_cast<double>(i);
        const double b = (i + 1 == panels) ? A : a + panel;
        coarse += gauss<double, 10>::integrate(integrand, a, b);
        const double f = gauss<double, 15>::integrate(integrand, a, b);
        fine += f;
        abs_fine += std::abs(f);
    }
    if (std::abs(fine - coarse) > 1e-10 * std::max(std::abs(fine), abs_fine * 1e-3))
        throw QuadratureError("quadrature_oracle_J: 10- and 15-point rules disagree");
    return 2.0 * fine;
}

} // namespace resonance
#endif // RESONANCE_ORACLE_HPP
