#pragma once

#include <complex>
#include <functional>
#include <span>
#include <vector>

namespace cfb {

using ComplexFn = std::function<std::complex<double>(double)>;

/// An even function on the real line, described by its values on [0, inf).
///
/// `decay_radius(eps)` returns R such that |f(y)| <= eps for every y > R.
/// Leave it empty for functions that do not decay (constants); integrals
/// then need a finite bound from elsewhere.
///
/// `chirp_hint` is an optional quadratic phase rate c with
/// f(y) = e^{(i/2) c y^2} * (slowly varying); the quadrature uses it to size
/// its initial panels when kernel chirps cancel against the function's own.
struct RadialFunction {
    ComplexFn value;
    ComplexFn deriv1;
    ComplexFn deriv2;
    std::function<double(double)> decay_radius;
    bool smooth = true;
    double chirp_hint = 0.0;

    std::complex<double> operator()(double x) const { return value(x < 0.0 ? -x : x); }
    bool has_derivatives() const { return static_cast<bool>(deriv1) && static_cast<bool>(deriv2); }
    bool decays() const { return static_cast<bool>(decay_radius); }

    /// decay_radius(eps), or `fallback` for non-decaying functions.
    double radius(double eps, double fallback) const;
};

/// Function samples on a strictly increasing grid of nonnegative abscissae.
class SampledRadialFunction {
public:
    SampledRadialFunction() = default;
    SampledRadialFunction(std::vector<double> grid, std::vector<std::complex<double>> values);

    const std::vector<double>& grid() const noexcept { return grid_; }
    const std::vector<std::complex<double>>& values() const noexcept { return values_; }
    std::size_t size() const noexcept { return grid_.size(); }

    /// Cubic-spline interpolant valid on [grid.front(), grid.back()], zero
    /// beyond the last sample. When the grid starts at 0 the spline is clamped
    /// with zero slope there (even extension). A nonzero `chirp` is divided out
    /// before interpolation and restored afterwards, so the spline only sees
    /// the slowly varying envelope.
    RadialFunction interpolant(double chirp = 0.0) const;

    /// Degree-7 local Lagrange interpolant for a uniform grid starting at 0:
    /// eight nearest samples, reflected evenly through 0 and padded with zeros
    /// past the end. Same chirp handling and validity range as interpolant().
    /// Throws std::invalid_argument if the grid is not of that form.
    RadialFunction uniform_interpolant(double chirp = 0.0) const;

    /// Largest modulus over the samples.
    double sup_norm() const;

private:
    std::vector<double> grid_;
    std::vector<std::complex<double>> values_;
};

/// `n` evenly spaced points from lo to hi inclusive.
std::vector<double> linspace(double lo, double hi, std::size_t n);

/// Evaluate a RadialFunction at each point.
SampledRadialFunction sample(const RadialFunction& f, std::span<const double> points);

}  // namespace cfb
