#pragma once

#include <complex>
#include <span>

#include "cfb/quadrature.hpp"
#include "cfb/radial.hpp"
#include "cfb/sl2.hpp"
#include "cfb/specfun.hpp"

namespace cfb {

struct ChirpRate {
    double a;
};

/// L_a f(x) = e^{(i a/2) x^2} f(x).
RadialFunction chirp_mul(ChirpRate a, const RadialFunction& f);

/// D_a f(x) = |a|^{-(nu+1)} f(x/a). Throws std::domain_error for a = 0.
RadialFunction dilate(double a, Order nu, const RadialFunction& f);

/// Classical generalized translation
///   T_x f(y) = Gamma(nu+1)/(sqrt(pi) Gamma(nu+1/2)) int_0^pi f(sqrt(x^2+y^2-2xy cos t)) sin^{2nu} t dt.
std::complex<double> classical_translate(Order nu, const RadialFunction& f, double x, double y,
                                         const QuadratureSpec& spec);

/// Chirped translation T_x^{nu,m} f(y): the same theta-average with the
/// extra factor e^{i (d/b) x y cos t}. Reduces to classical_translate (same
/// code path, same bits) when d = 0.
std::complex<double> translate(const SLMatrix& m, Order nu, const RadialFunction& f, double x, double y,
                               const QuadratureSpec& spec);

/// y -> T_x^{nu,m} f(y) as a function; decay radius x + R_f.
RadialFunction translated(const SLMatrix& m, Order nu, const RadialFunction& f, double x,
                          const QuadratureSpec& spec);

/// Kernel of the classical translation:
///   W(x,y,z) = 2^{2nu-1} Gamma(nu+1)/(sqrt(pi) Gamma(nu+1/2)) A^{2nu-1} / (xyz)^{2nu}
/// for |x-y| < z < x+y, where A is the area of the triangle with sides x, y, z; 0 otherwise.
double w_kernel_classical(Order nu, double x, double y, double z);

/// W^m(x,y,z) = e^{(i/2)(d/b)(x^2+y^2+z^2)} W(x,y,z).
std::complex<double> w_kernel(const SLMatrix& m, Order nu, double x, double y, double z);

/// T_x^{nu,m} f(y) = int W^m(x,y,z) e^{-i(d/b)z^2} f(z) z^{2nu+1} dz, integrated
/// directly in z. Cross-check for translate().
std::complex<double> translate_via_kernel(const SLMatrix& m, Order nu, const RadialFunction& f, double x, double y,
                                          const QuadratureSpec& spec);

/// (f * g)(x) = int_0^inf T_x^{nu,m} f(y) e^{-i(d/b)y^2} g(y) y^{2nu+1} dy.
std::complex<double> convolve_at(const SLMatrix& m, Order nu, const RadialFunction& f, const RadialFunction& g,
                                 double x, const QuadratureSpec& spec);

SampledRadialFunction convolve(const SLMatrix& m, Order nu, const RadialFunction& f, const RadialFunction& g,
                               std::span<const double> points, const QuadratureSpec& spec);

/// Decay radius used for f * g: R_f + R_g, or the default truncation when
/// neither decays.
double convolution_radius(const RadialFunction& f, const RadialFunction& g, const QuadratureSpec& spec);

/// |int T_x f . e^{-i(d/b)y^2} g - int e^{-i(d/b)y^2} f . T_x g| (weighted by y^{2nu+1}).
double self_adjointness_residual(const SLMatrix& m, Order nu, const RadialFunction& f, const RadialFunction& g,
                                 double x, const QuadratureSpec& spec);

/// |F^m[T_x^{m^{-1}} f](l) - e^{(i/2)(d/b)l^2} K^{m^{-1}}(x,l) F^m f(l)|.
double translate_transform_residual(const SLMatrix& m, Order nu, const RadialFunction& f, double x, double lambda,
                                    const QuadratureSpec& spec);

/// Both sides of the convolution theorem at the points:
///   lhs = c_nu/(ib)^{nu+1} F^m(f *_{m^{-1}} g)(x),  rhs = e^{-(i/2)(d/b)x^2} F^m f(x) F^m g(x).
/// f *_{m^{-1}} g is sampled on a uniform grid and interpolated before the
/// outer transform.
struct TheoremSides {
    SampledRadialFunction lhs;
    SampledRadialFunction rhs;
    double max_residual() const;
};
TheoremSides convolution_theorem_sides(const SLMatrix& m, Order nu, const RadialFunction& f, const RadialFunction& g,
                                       std::span<const double> points, const QuadratureSpec& spec);

/// Max over one point of |lhs - rhs| from convolution_theorem_sides.
double convolution_theorem_residual(const SLMatrix& m, Order nu, const RadialFunction& f, const RadialFunction& g,
                                    double x, const QuadratureSpec& spec);

}  // namespace cfb
