#ifndef RESONANCE_TRIGPOLY_HPP
#define RESONANCE_TRIGPOLY_HPP

#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "kernels.hpp"

namespace resonance {

/// One term f * e(lambda x) of a series with nonnegative coefficient.
struct Term
{
    double lambda;
    double f;

    friend bool operator==(const Term &, const Term &) = default;
};

struct ComplexTerm
{
    double lambda;
    std::complex<double> f;
};

/// e(t) = exp(2 pi i t).
inline std::complex<double> unit_phase(double t)
{
    const double a = two_pi * t;
    return {std::cos(a), std::sin(a)};
}

/**
 *  Finite series F(x) = sum_n f(n) e(lambda_n x) with f(n) >= 0 and
 *  0 <= lambda_1 < lambda_2 < ...
 *
 *  Immutable once constructed. Frequencies are compared with exact
 *  floating-point equality.
 */
class TrigSeries
{
public:
    TrigSeries() = default;

    explicit TrigSeries(std::vector<Term> terms)
        : terms_(std::move(terms))
    {
        for (std::size_t i = 0; i < terms_.size(); ++i) {
            const auto &t = terms_[i];
            if (!std::isfinite(t.lambda) || !std::isfinite(t.f))
                throw std::invalid_argument("TrigSeries: non-finite term at index " + std::to_string(i));
            if (t.lambda < 0.0)
                throw std::invalid_argument("TrigSeries: negative frequency at index " + std::to_string(i));
            if (t.f < 0.0)
                throw std::invalid_argument("TrigSeries: negative coefficient at index " + std::to_string(i));
            if (i > 0 && !(terms_[i - 1].lambda < t.lambda))
                throw std::invalid_argument("TrigSeries: frequencies not strictly increasing at index " +
                                            std::to_string(i));
        }
    }

    std::span<const Term> terms() const noexcept { return terms_; }
    std::size_t size() const noexcept { return terms_.size(); }
    bool empty() const noexcept { return terms_.empty(); }
    const Term &operator[](std::size_t i) const { return terms_.at(i); }

    /// F(0) = sum f(n).
    double total_mass() const noexcept
    {
        double s = 0.0;
        for (const auto &t : terms_)
            s += t.f;
        return s;
    }

    /// 2 pi sum f(n) lambda_n, a Lipschitz constant for Re(e^{i beta} F).
    double lipschitz() const noexcept
    {
        double s = 0.0;
        for (const auto &t : terms_)
            s += t.f * t.lambda;
        return two_pi * s;
    }

    double max_frequency() const noexcept { return terms_.empty() ? 0.0 : terms_.back().lambda; }

    std::complex<double> operator()(double x) const
    {
        std::complex<double> s{0.0, 0.0};
        for (const auto &t : terms_)
            s += t.f * unit_phase(t.lambda * x);
        return s;
    }

    /// Re(e^{i beta} F(x)) without forming the complex sum.
    double real_part(double x, double beta = 0.0) const
    {
        double s = 0.0;
        for (const auto &t : terms_)
            s += t.f * std::cos(two_pi * t.lambda * x + beta);
        return s;
    }

private:
    std::vector<Term> terms_;
};

/// Series with complex coefficients; frequencies strictly increasing, any sign.
class ComplexTrigSeries
{
public:
    ComplexTrigSeries() = default;

    explicit ComplexTrigSeries(std::vector<ComplexTerm> terms)
        : terms_(std::move(terms))
    {
        for (std::size_t i = 0; i < terms_.size(); ++i) {
            const auto &t = terms_[i];
            if (!std::isfinite(t.lambda) || !std::isfinite(t.f.real()) || !std::isfinite(t.f.imag()))
                throw std::invalid_argument("ComplexTrigSeries: non-finite term at index " + std::to_string(i));
            if (i > 0 && !(terms_[i - 1].lambda < t.lambda))
                throw std::invalid_argument("ComplexTrigSeries: frequencies not strictly increasing at index " +
                                            std::to_string(i));
        }
    }

    explicit ComplexTrigSeries(const TrigSeries &real)
    {
        terms_.reserve(real.size());
        for (const auto &t : real.terms())
            terms_.push_back({t.lambda, {t.f, 0.0}});
    }

    std::span<const ComplexTerm> terms() const noexcept { return terms_; }
    std::size_t size() const noexcept { return terms_.size(); }

    /// sum |f(n)|.
    double abs_mass() const noexcept
    {
        double s = 0.0;
        for (const auto &t : terms_)
            s += std::abs(t.f);
        return s;
    }

    double lipschitz() const noexcept
    {
        double s = 0.0;
        for (const auto &t : terms_)
            s += std::abs(t.f) * std::abs(t.lambda);
        return two_pi * s;
    }

    std::complex<double> operator()(double x) const
    {
        std::complex<double> s{0.0, 0.0};
        for (const auto &t : terms_)
            s += t.f * unit_phase(t.lambda * x);
        return s;
    }

    double real_part(double x, double beta = 0.0) const
    {
        return (std::polar(1.0, beta) * (*this)(x)).real();
    }

private:
    std::vector<ComplexTerm> terms_;
};

struct Evaluation
{
    std::complex<double> value;
    double real;
};

/// e^{i beta} F(x) together with its real part.
template<typename Series>
Evaluation evaluate(const Series &series, double x, double beta = 0.0)
{
    const auto v = std::polar(1.0, beta) * series(x);
    return {v, v.real()};
}

/**
 *  F_1 from the convolution formula: coefficients f(n) K^((lambda_N - lambda_n)/lambda_N),
 *  zero terms dropped. `source_index[i]` maps term i of `smoothed` back into `base`.
 */
struct SmoothedSeries
{
    TrigSeries base;
    std::size_t pivot;
    TrigSeries smoothed;
    std::vector<std::size_t> source_index;

    double pivot_frequency() const { return base[pivot].lambda; }
};

/// Triangular weight K^((lambda_N - lambda)/lambda_N) applied by smooth().
inline double smoothing_weight(double lambda, double pivot_lambda)
{
    return fejer_hat((pivot_lambda - lambda) / pivot_lambda);
}

inline SmoothedSeries smooth(const TrigSeries &series, std::size_t pivot)
{
    if (pivot >= series.size())
        throw std::out_of_range("smooth: pivot index " + std::to_string(pivot) + " out of range");
    const double pivot_lambda = series[pivot].lambda;
    if (!(pivot_lambda > 0.0))
        throw std::invalid_argument("smooth: pivot frequency must be positive");

    std::vector<Term> kept;
    std::vector<std::size_t> source;
    for (std::size_t i = 0; i < series.size(); ++i) {
        const auto &t = series[i];
        const double w = smoothing_weight(t.lambda, pivot_lambda);
        const double c = t.f * w;
        if (c > 0.0) {
            kept.push_back({t.lambda, c});
            source.push_back(i);
        }
    }
    return {series, pivot, TrigSeries(std::move(kept)), std::move(source)};
}

/// Loss term 4 F(0) / (pi^2 Y lambda_N) of the convolution inequality.
inline double convolution_defect(double mass, double Y, double pivot_lambda)
{
    if (!(Y > 0.0))
        throw std::invalid_argument("convolution_defect: Y must be positive");
    if (!(pivot_lambda > 0.0))
        throw std::invalid_argument("convolution_defect: pivot frequency must be positive");
    return 4.0 * mass / (std::numbers::pi * std::numbers::pi * Y * pivot_lambda);
}

inline double convolution_defect(const TrigSeries &series, std::size_t pivot, double Y)
{
    if (pivot >= series.size())
        throw std::out_of_range("convolution_defect: pivot index out of range");
    return convolution_defect(series.total_mass(), Y, series[pivot].lambda);
}

} // namespace resonance
#endif // RESONANCE_TRIGPOLY_HPP
