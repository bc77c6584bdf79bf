#pragma once

#include <complex>
#include <span>
#include <vector>

#include "cfb/quadrature.hpp"
#include "cfb/radial.hpp"
#include "cfb/sl2.hpp"
#include "cfb/specfun.hpp"

namespace cfb {

/// Conductivity sigma and time t, both positive and finite.
struct HeatConfig {
    double sigma = 1.0;
    double t = 1.0;

    /// Throws std::invalid_argument unless sigma > 0 and t > 0.
    void validate() const;
};

/// 2 / (Gamma(nu+1) (4 sigma t)^{nu+1}).
double heat_prefactor(Order nu, const HeatConfig& cfg);

/// P_t(x) = [2/Gamma(nu+1)] (4 sigma t)^{-(nu+1)} e^{-(i/2)(a/b)x^2 - x^2/(4 sigma t)}.
std::complex<double> p_kernel(const SLMatrix& m, Order nu, const HeatConfig& cfg, double x);

/// x -> P_t(x) with analytic derivatives.
RadialFunction p_kernel_function(const SLMatrix& m, Order nu, const HeatConfig& cfg);

/// G_t(x,y) = prefactor e^{-(i/2)(a/b)(x^2+y^2)} e^{-(x-y)^2/(4 sigma t)} j_nu_scaled(xy/(2 sigma t)).
std::complex<double> heat_kernel(const SLMatrix& m, Order nu, const HeatConfig& cfg, double x, double y);

/// prefactor e^{-(|x|-|y|)^2/(4 sigma t)}, the bound on |G_t(x,y)|.
double heat_kernel_bound(Order nu, const HeatConfig& cfg, double x, double y);

/// x -> G_t(x,y) with analytic first and second x-derivatives.
RadialFunction heat_kernel_function(const SLMatrix& m, Order nu, const HeatConfig& cfg, double y);

/// Closed-form time derivative of G_t(x,y).
std::complex<double> heat_kernel_dt(const SLMatrix& m, Order nu, const HeatConfig& cfg, double x, double y);

/// |int_0^inf e^{(i/2)(a/b)(x^2+y^2)} G_t(x,y) y^{2nu+1} dy - 1|.
double heat_normalization_residual(const SLMatrix& m, Order nu, const HeatConfig& cfg, double x,
                                   const QuadratureSpec& spec);

/// |G_{t+s}(x,y) - int G_t(x,z) G_s(y,z) e^{i(a/b)z^2} z^{2nu+1} dz| / |G_{t+s}(x,y)|
/// (absolute when G_{t+s}(x,y) underflows to zero).
double semigroup_residual(const SLMatrix& m, Order nu, double sigma, double t, double s, double x, double y,
                          const QuadratureSpec& spec);

/// |d_t G - sigma Delta^{m^{-1}}_x G| / max(1, |d_t G|), with both sides from
/// analytic formulas.
double pde_residual(const SLMatrix& m, Order nu, const HeatConfig& cfg, double x, double y);

/// |(G_{t+h} - G_{t-h}) / (2h) - d_t G|: error of the centered time difference.
double time_difference_error(const SLMatrix& m, Order nu, const HeatConfig& cfg, double x, double y, double h);

/// u(t,x) = int G_t(x,y) e^{i(a/b)y^2} f(y) y^{2nu+1} dy.
std::complex<double> evolve_at(const SLMatrix& m, Order nu, double sigma, const RadialFunction& f, double t,
                               double x, const QuadratureSpec& spec);

SampledRadialFunction evolve(const SLMatrix& m, Order nu, double sigma, const RadialFunction& f, double t,
                             std::span<const double> points, const QuadratureSpec& spec);

/// Exact solution for f(y) = e^{-(i/2)(a/b)y^2} e^{-y^2/(4 sigma)}:
///   (1+t)^{-(nu+1)} e^{-(i/2)(a/b)x^2} e^{-x^2/(4 sigma (1+t))}.
std::complex<double> gaussian_solution(const SLMatrix& m, Order nu, double sigma, double t, double x);

/// The initial datum of gaussian_solution.
RadialFunction gaussian_initial_datum(const SLMatrix& m, double sigma);

/// Closed form (Gamma(nu+1)/(2 delta^{nu+1})) e^{-(r^2+s^2)/delta} j_nu(2irs/delta), principal branch.
std::complex<double> gaussian_bessel_closed_form(Order nu, std::complex<double> delta, std::complex<double> r,
                                                 std::complex<double> s);

/// |int_0^inf e^{-delta x^2} j_nu(2rx) j_nu(2sx) x^{2nu+1} dx - closed form| / |closed form|.
/// Requires Re delta > 0.
double weber_schafheitlin_residual(Order nu, std::complex<double> delta, std::complex<double> r,
                                   std::complex<double> s, const QuadratureSpec& spec);

/// (sigma Delta^{m^{-1}})^k f(x) for k = 0..n, computed spectrally.
std::vector<std::complex<double>> short_time_terms(const SLMatrix& m, Order nu, double sigma, const RadialFunction& f,
                                                   double x, int n, const QuadratureSpec& spec);

/// |u(t,x) - sum_{k<=n} (t^k/k!) terms[k]| with u from evolve_at.
double short_time_expansion_error(const SLMatrix& m, Order nu, double sigma, const RadialFunction& f, double x,
                                  double t, std::span<const std::complex<double>> terms, const QuadratureSpec& spec);

/// Same, computing the terms for n in {0, 1, 2}.
double short_time_expansion_error(const SLMatrix& m, Order nu, double sigma, const RadialFunction& f, double x,
                                  double t, int n, const QuadratureSpec& spec);

}  // namespace cfb
