#pragma once

#include <complex>
#include <functional>
#include <limits>
#include <memory>
#include <span>
#include <vector>

#include "cfb/radial.hpp"
#include "cfb/specfun.hpp"

namespace cfb {

/// Tolerances and budgets shared by every integral in the library.
struct QuadratureSpec {
    double rel_tol = 1e-10;
    double abs_tol = 1e-13;
    int max_panels = 4000;
    /// Upper limit used for functions that do not report a decay radius.
    double default_truncation = 30.0;

    /// Throws std::invalid_argument unless tolerances are positive and max_panels >= 1.
    void validate() const;
};

struct QuadResult {
    std::complex<double> value;
    double error = 0.0;
};

/// Adaptive 15-point Kronrod / 7-point Gauss integration of a complex
/// integrand over [lo, hi]. Panels with the largest error estimate are
/// bisected until the summed estimate is below max(abs_tol, rel_tol*|value|).
/// Throws NonConvergent if that needs more than spec.max_panels panels.
QuadResult integrate_finite(const ComplexFn& f, double lo, double hi, const QuadratureSpec& spec);

/// Same, starting from the partition given by `breakpoints` (sorted, first
/// and last entries are the integration limits). Panels wider than
/// `max_width` are split uniformly before refinement starts.
QuadResult integrate_partitioned(const ComplexFn& f, std::span<const double> breakpoints,
                                 const QuadratureSpec& spec,
                                 double max_width = std::numeric_limits<double>::infinity());

/// int_0^R f(y) y^{2nu+1} dy. The caller picks R so the tail beyond it is
/// below abs_tol/2. Extra breakpoints inside (0, R) may be supplied.
std::complex<double> integrate_halfline_weighted(
    const ComplexFn& f, Order nu, const QuadratureSpec& spec, double decay_radius,
    double max_width = std::numeric_limits<double>::infinity(),
    std::span<const double> breakpoints = {});

/// Gauss-Jacobi rule for the weight (1-u)^alpha (1+u)^beta on [-1, 1].
struct GaussRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

/// Rules are built once per (alpha, beta, n) and cached; safe to call from
/// several threads.
std::shared_ptr<const GaussRule> gauss_jacobi(double alpha, double beta, int n);

/// int_0^pi h(cos theta) sin^{2nu}(theta) dtheta, i.e. int_{-1}^{1} h(u) (1-u^2)^{nu-1/2} du.
///
/// Gauss-Jacobi rules of doubling size are compared until two successive
/// estimates agree; if that fails up to 1024 nodes the integral is redone
/// adaptively in theta (handles non-smooth h). Throws NonConvergent when
/// both fail.
std::complex<double> cos_theta_integral(const ComplexFn& h, Order nu, const QuadratureSpec& spec);

/// int_0^pi g(theta) sin^{2nu}(theta) dtheta.
std::complex<double> theta_integral(const ComplexFn& g, Order nu, const QuadratureSpec& spec);

/// Truncation radius for half-line integrals of f: its decay radius at a
/// level well below abs_tol, or spec.default_truncation.
double truncation_radius(const RadialFunction& f, const QuadratureSpec& spec);

/// Exponent and order of a weighted L^p norm; p may be +infinity.
struct NormParams {
    double p;
    Order nu;

    NormParams(double p_, Order nu_);
};

/// ||f||_{p,nu} = (int_0^inf |f|^p y^{2nu+1} dy)^{1/p}; for p = inf the sup
/// over a dense sample of [0, R].
double lp_norm(const RadialFunction& f, const NormParams& params, const QuadratureSpec& spec);

}  // namespace cfb
