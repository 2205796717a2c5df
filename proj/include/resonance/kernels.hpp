#ifndef RESONANCE_KERNELS_HPP
#define RESONANCE_KERNELS_HPP

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace resonance {

/// e(x) phase helper: 2*pi*x.
inline constexpr double two_pi = 2.0 * std::numbers::pi;

namespace detail {

inline void require_finite(double u, const char *what)
{
    if (!std::isfinite(u))
        throw std::invalid_argument(std::string(what) + ": argument must be finite");
}

} // namespace detail

/**
 *  Continuous Fejer kernel K(u) = (sin(pi u)/(pi u))^2.
 *
 *  The removable singularity is handled by returning 1 for |u| < 1e-8; the
 *  first neglected term of the Taylor expansion there is below 4e-16.
 */
inline double fejer(double u)
{
    detail::require_finite(u, "fejer");
    if (std::abs(u) < 1e-8)
        return 1.0;
    const double s = std::sin(std::numbers::pi * u) / (std::numbers::pi * u);
    return s * s;
}

/// Fourier transform of fejer() under the e(-ux) convention: max(0, 1-|u|).
inline double fejer_hat(double u)
{
    detail::require_finite(u, "fejer_hat");
    const double r = 1.0 - std::abs(u);
    return r > 0.0 ? r : 0.0;
}

/// Gaussian Phi(u) = exp(-pi u^2). Self-dual, so it doubles as its own transform.
inline double gaussian(double u)
{
    detail::require_finite(u, "gaussian");
    return std::exp(-std::numbers::pi * u * u);
}

inline double gaussian_hat(double u) { return gaussian(u); }

/// Largest bucket parameter for which gaussian(gamma) >= 1/2.
inline double max_bucket_gamma()
{
    return std::sqrt(std::numbers::ln2 / std::numbers::pi);
}

} // namespace resonance
#endif // RESONANCE_KERNELS_HPP
