#pragma once

#include <complex>
#include <span>

#include "cfb/quadrature.hpp"
#include "cfb/radial.hpp"
#include "cfb/sl2.hpp"
#include "cfb/specfun.hpp"

namespace cfb {

/// K(x, y) = e^{(i/2)((d/b) x^2 + (a/b) y^2)} j_nu(x y / b).
std::complex<double> kernel(const SLMatrix& m, Order nu, double x, double y);

/// x -> K(x, y) with analytic first and second x-derivatives.
RadialFunction kernel_function(const SLMatrix& m, Order nu, double y);

/// c_nu / (ib)^{nu+1}, c_nu = 1 / (2^nu Gamma(nu+1)), principal branch:
/// (ib)^{nu+1} = exp((nu+1)(ln|b| + i sign(b) pi/2)).
std::complex<double> normalization_constant(const SLMatrix& m, Order nu);

/// (F f)(x) at one point.
std::complex<double> forward_at(const RadialFunction& f, const SLMatrix& m, Order nu, double x,
                                const QuadratureSpec& spec);

/// (F f)(x) at each point. Throws NonConvergent from the quadrature.
SampledRadialFunction forward(const RadialFunction& f, const SLMatrix& m, Order nu, std::span<const double> points,
                              const QuadratureSpec& spec);

/// The transform with parameter m^{-1}; undoes forward(., m).
SampledRadialFunction inverse(const RadialFunction& g, const SLMatrix& m, Order nu, std::span<const double> points,
                              const QuadratureSpec& spec);

/// Delta_nu^m f(x) = f'' + ((2nu+1)/x - 2i(d/b)x) f' - ((d/b)^2 x^2 + 2i(nu+1)(d/b)) f,
/// with the limit (2nu+2) f''(0) - 2i(nu+1)(d/b) f(0) at x = 0.
/// Throws MissingDerivatives when f has no analytic derivatives.
std::complex<double> apply_delta(const SLMatrix& m, Order nu, const RadialFunction& f, double x);

/// Discretization of a transform output. Zero fields are chosen automatically:
/// the spectrum is sampled in blocks until the mass of
/// |F f(l)| l^{2nu+1} (l/b)^{2 weight_power} in two consecutive blocks is
/// below `cutoff` times the mass sampled so far.
struct SpectralGrid {
    double lambda_max = 0.0;
    double step = 0.0;
    int weight_power = 0;
    double cutoff = 1e-9;
    std::size_t max_samples = 40000;
};

/// F f sampled on a uniform grid and wrapped in a local degree-7 interpolant (the chirp
/// e^{(i/2)(d/b)x^2} is factored out before interpolation). Zero beyond the
/// sampled range.
RadialFunction transform_function(const RadialFunction& f, const SLMatrix& m, Order nu, const QuadratureSpec& spec,
                                  SpectralGrid grid = {});

/// (Delta_nu^{m^{-1}})^k f = F^{m^{-1}}[(-x^2/b^2)^k F^m f], at each point.
SampledRadialFunction apply_delta_power_spectral(const SLMatrix& m, Order nu, const RadialFunction& f, int k,
                                                 std::span<const double> points, const QuadratureSpec& spec);

/// |F[y^2 f](x) + b^2 Delta_nu^m[F f](x)|, with Delta applied to F f by a
/// 5-point stencil of spacing 1e-3 (1 + x). Throws MissingSmoothness for
/// non-smooth f.
double operational_identity_residual(const SLMatrix& m, Order nu, const RadialFunction& f, double x,
                                     const QuadratureSpec& spec);

}  // namespace cfb
