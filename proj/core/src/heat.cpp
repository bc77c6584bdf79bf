#include "cfb/heat.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "cfb/catalog.hpp"
#include "cfb/transform.hpp"

namespace cfb {

using cplx = std::complex<double>;

namespace {

constexpr cplx I(0.0, 1.0);

// The heat kernel is below e^{-kTailExponent} times its peak outside
// |y - x| <= sqrt(4 sigma t kTailExponent).
constexpr double kTailExponent = 92.0;

cplx chirp(double rate, double x) { return std::polar(1.0, 0.5 * rate * x * x); }

// Chirp-free kernel: prefactor e^{-(x-y)^2/(4 sigma t)} j_nu_scaled(xy/(2 sigma t)).
double classical_kernel(Order nu, const HeatConfig& cfg, double x, double y) {
    x = std::abs(x);
    y = std::abs(y);
    const double st = cfg.sigma * cfg.t;
    const double d = x - y;
    return heat_prefactor(nu, cfg) * std::exp(-d * d / (4.0 * st)) * j_nu_scaled(nu, x * y / (2.0 * st));
}

// int_0^R g_t(x,y) phi(y) y^{2nu+1} dy restricted to the window where the
// kernel is not negligible.
cplx heat_average(Order nu, const HeatConfig& cfg, double x, const ComplexFn& phi, double R, double max_width,
                  std::vector<double> extra, const QuadratureSpec& spec) {
    x = std::abs(x);
    const double st = cfg.sigma * cfg.t;
    const double L = std::sqrt(4.0 * st * kTailExponent);
    const double lo = std::max(0.0, x - L);
    const double hi = std::min(x + L, R);
    if (!(hi > lo)) return 0.0;
    const double width = std::min(max_width, std::sqrt(2.0 * st));
    const double w = 2.0 * nu.value() + 1.0;

    ComplexFn h = [&](double y) { return classical_kernel(nu, cfg, x, y) * phi(y); };
    extra.push_back(x);
    if (lo == 0.0) {
        std::vector<double> bp;
        for (double e : extra)
            if (e > 0.0 && e < hi) bp.push_back(e);
        std::sort(bp.begin(), bp.end());
        bp.erase(std::unique(bp.begin(), bp.end()), bp.end());
        return integrate_halfline_weighted(h, nu, spec, hi, width, bp);
    }
    ComplexFn hw = [&](double y) { return h(y) * std::pow(y, w); };
    std::vector<double> bp{lo, hi};
    for (double e : extra)
        if (e > lo && e < hi) bp.push_back(e);
    std::sort(bp.begin(), bp.end());
    bp.erase(std::unique(bp.begin(), bp.end()), bp.end());
    return integrate_partitioned(hw, bp, spec, width).value;
}

double support_edge(const RadialFunction& f) {
    if (!f.decay_radius) return std::numeric_limits<double>::infinity();
    return f.decay_radius(0.0);
}

}  // namespace

void HeatConfig::validate() const {
    if (!(sigma > 0.0) || !std::isfinite(sigma)) throw std::invalid_argument("sigma must be positive and finite");
    if (!(t > 0.0) || !std::isfinite(t)) throw std::invalid_argument("t must be positive and finite");
}

double heat_prefactor(Order nu, const HeatConfig& cfg) {
    cfg.validate();
    const double v = nu.value();
    return 2.0 * std::exp(-log_gamma(v + 1.0) - (v + 1.0) * std::log(4.0 * cfg.sigma * cfg.t));
}

cplx p_kernel(const SLMatrix& m, Order nu, const HeatConfig& cfg, double x) {
    const double q = m.chirp_rates().a_over_b;
    return heat_prefactor(nu, cfg) * std::exp(-x * x / (4.0 * cfg.sigma * cfg.t)) * chirp(-q, x);
}

RadialFunction p_kernel_function(const SLMatrix& m, Order nu, const HeatConfig& cfg) {
    const double N = heat_prefactor(nu, cfg);
    RadialFunction g = chirped_gaussian(1.0 / (4.0 * cfg.sigma * cfg.t), -m.chirp_rates().a_over_b);
    g.value = [N, v = g.value](double x) { return N * v(x); };
    g.deriv1 = [N, v = g.deriv1](double x) { return N * v(x); };
    g.deriv2 = [N, v = g.deriv2](double x) { return N * v(x); };
    g.decay_radius = [N, r = g.decay_radius](double eps) { return r(eps / std::max(N, 1.0)); };
    return g;
}

cplx heat_kernel(const SLMatrix& m, Order nu, const HeatConfig& cfg, double x, double y) {
    const double q = m.chirp_rates().a_over_b;
    const double g = classical_kernel(nu, cfg, x, y);
    if (q == 0.0) return g;
    return std::polar(g, -0.5 * q * (x * x + y * y));
}

double heat_kernel_bound(Order nu, const HeatConfig& cfg, double x, double y) {
    const double d = std::abs(x) - std::abs(y);
    return heat_prefactor(nu, cfg) * std::exp(-d * d / (4.0 * cfg.sigma * cfg.t));
}

RadialFunction heat_kernel_function(const SLMatrix& m, Order nu, const HeatConfig& cfg, double y) {
    y = std::abs(y);
    const double q = m.chirp_rates().a_over_b;
    const double st = cfg.sigma * cfg.t;
    const double kappa = y / (2.0 * st);
    const double N = heat_prefactor(nu, cfg);
    const cplx cy = chirp(-q, y);
    const double v = nu.value();
    const Order nu1 = nu.shifted(1), nu2 = nu.shifted(2);

    // H(x) = N c(y) C(x) E(x) J(kappa x) with C the x-chirp, E the Gaussian
    // factor and J the scaled Bessel function; J' = -J + u J_{nu+1} / (2(nu+1)).
    struct Parts {
        cplx C, C1, C2;
        double phi, phi1, phi2;
    };
    auto parts = [=](double x) {
        const double d = x - y;
        const double E = std::exp(-d * d / (4.0 * st));
        const double E1 = -d / (2.0 * st) * E;
        const double E2 = (d * d / (4.0 * st * st) - 1.0 / (2.0 * st)) * E;
        const double u = kappa * x;
        const double J0 = j_nu_scaled(nu, u);
        const double J1v = j_nu_scaled(nu1, u);
        const double J2v = j_nu_scaled(nu2, u);
        const double dJ1 = -J1v + u / (2.0 * (v + 2.0)) * J2v;
        const double J1 = -J0 + u / (2.0 * (v + 1.0)) * J1v;
        const double J2 = -J1 + (J1v + u * dJ1) / (2.0 * (v + 1.0));
        const cplx C = chirp(-q, x);
        const cplx iqx = -I * q * x;
        return Parts{C, iqx * C, (iqx * iqx - I * q) * C, E * J0, E1 * J0 + E * kappa * J1,
                     E2 * J0 + 2.0 * E1 * kappa * J1 + E * kappa * kappa * J2};
    };

    RadialFunction f;
    f.value = [=](double x) {
        const auto p = parts(std::abs(x));
        return N * cy * p.C * p.phi;
    };
    f.deriv1 = [=](double x) {
        const double s = x < 0.0 ? -1.0 : 1.0;
        const auto p = parts(std::abs(x));
        return s * N * cy * (p.C1 * p.phi + p.C * p.phi1);
    };
    f.deriv2 = [=](double x) {
        const auto p = parts(std::abs(x));
        return N * cy * (p.C2 * p.phi + 2.0 * p.C1 * p.phi1 + p.C * p.phi2);
    };
    f.decay_radius = [=](double eps) {
        return y + std::sqrt(4.0 * st * std::max(0.0, -std::log(eps / std::max(N, 1.0))));
    };
    f.chirp_hint = -q;
    return f;
}

cplx heat_kernel_dt(const SLMatrix& m, Order nu, const HeatConfig& cfg, double x, double y) {
    x = std::abs(x);
    y = std::abs(y);
    const double t = cfg.t;
    const double st = cfg.sigma * t;
    const double v = nu.value();
    const double u = x * y / (2.0 * st);
    const double d = x - y;
    const cplx G = heat_kernel(m, nu, cfg, x, y);
    // The j_nu' term, with j_nu'(iu) = -iu j_{nu+1}(iu) / (2(nu+1)), in scaled form.
    const double tail = heat_prefactor(nu, cfg) * std::exp(-d * d / (4.0 * st)) * u * u / (2.0 * (v + 1.0) * t) *
                        j_nu_scaled(nu.shifted(1), u);
    const double q = m.chirp_rates().a_over_b;
    return ((x * x + y * y) / (4.0 * st * t) - (v + 1.0) / t) * G - chirp(-q, std::hypot(x, y)) * tail;
}

double heat_normalization_residual(const SLMatrix&, Order nu, const HeatConfig& cfg, double x,
                                   const QuadratureSpec& spec) {
    // The chirps cancel exactly: the integrand is the chirp-free kernel.
    const ComplexFn one = [](double) { return cplx(1.0); };
    const cplx v = heat_average(nu, cfg, x, one, std::numeric_limits<double>::infinity(),
                                std::numeric_limits<double>::infinity(), {}, spec);
    return std::abs(v - 1.0);
}

double semigroup_residual(const SLMatrix& m, Order nu, double sigma, double t, double s, double x, double y,
                          const QuadratureSpec& spec) {
    const HeatConfig ct{sigma, t}, cs{sigma, s}, cts{sigma, t + s};
    const double q = m.chirp_rates().a_over_b;
    const ComplexFn phi = [&](double z) { return cplx(classical_kernel(nu, cs, y, z)); };
    const double width = std::sqrt(2.0 * sigma * s);
    const double R = std::abs(y) + std::sqrt(4.0 * sigma * s * kTailExponent);
    const cplx integral = chirp(-q, std::hypot(x, y)) * heat_average(nu, ct, x, phi, R, width, {std::abs(y)}, spec);
    const cplx exact = heat_kernel(m, nu, cts, x, y);
    const double diff = std::abs(integral - exact);
    return std::abs(exact) > 0.0 ? diff / std::abs(exact) : diff;
}

double pde_residual(const SLMatrix& m, Order nu, const HeatConfig& cfg, double x, double y) {
    const cplx dt = heat_kernel_dt(m, nu, cfg, x, y);
    const cplx lap = apply_delta(m.inverse(), nu, heat_kernel_function(m, nu, cfg, y), x);
    return std::abs(dt - cfg.sigma * lap) / std::max(1.0, std::abs(dt));
}

double time_difference_error(const SLMatrix& m, Order nu, const HeatConfig& cfg, double x, double y, double h) {
    if (!(h > 0.0 && h < cfg.t)) throw std::invalid_argument("time step must lie in (0, t)");
    const cplx up = heat_kernel(m, nu, HeatConfig{cfg.sigma, cfg.t + h}, x, y);
    const cplx dn = heat_kernel(m, nu, HeatConfig{cfg.sigma, cfg.t - h}, x, y);
    return std::abs((up - dn) / (2.0 * h) - heat_kernel_dt(m, nu, cfg, x, y));
}

cplx evolve_at(const SLMatrix& m, Order nu, double sigma, const RadialFunction& f, double t, double x,
               const QuadratureSpec& spec) {
    const HeatConfig cfg{sigma, t};
    cfg.validate();
    const double q = m.chirp_rates().a_over_b;
    const double R = truncation_radius(f, spec);
    // G_t(x,y) e^{i(a/b)y^2} = e^{-(i/2)(a/b)x^2} e^{(i/2)(a/b)y^2} g_t(x,y).
    const ComplexFn phi = q == 0.0 ? ComplexFn([&](double y) { return f.value(y); })
                                   : ComplexFn([&](double y) { return chirp(q, y) * f.value(y); });
    const double hi = std::min(R, std::abs(x) + std::sqrt(4.0 * sigma * t * kTailExponent));
    const double omega = std::abs(q + f.chirp_hint) * hi;
    const double width = omega > 0.0 ? 2.0 * std::numbers::pi / omega : std::numeric_limits<double>::infinity();
    std::vector<double> extra;
    if (!f.smooth) extra.push_back(support_edge(f));
    const cplx v = heat_average(nu, cfg, x, phi, R, width, extra, spec);
    return q == 0.0 ? v : v * chirp(-q, x);
}

SampledRadialFunction evolve(const SLMatrix& m, Order nu, double sigma, const RadialFunction& f, double t,
                             std::span<const double> points, const QuadratureSpec& spec) {
    std::vector<double> xs(points.begin(), points.end());
    std::vector<cplx> vs(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i) vs[i] = evolve_at(m, nu, sigma, f, t, xs[i], spec);
    return SampledRadialFunction(std::move(xs), std::move(vs));
}

cplx gaussian_solution(const SLMatrix& m, Order nu, double sigma, double t, double x) {
    const double q = m.chirp_rates().a_over_b;
    const double amp = std::pow(1.0 + t, -(nu.value() + 1.0)) * std::exp(-x * x / (4.0 * sigma * (1.0 + t)));
    return std::polar(amp, -0.5 * q * x * x);
}

RadialFunction gaussian_initial_datum(const SLMatrix& m, double sigma) {
    return chirped_gaussian(1.0 / (4.0 * sigma), -m.chirp_rates().a_over_b);
}

cplx gaussian_bessel_closed_form(Order nu, cplx delta, cplx r, cplx s) {
    const double v = nu.value();
    const cplx pre = std::exp(log_gamma(v + 1.0) - (v + 1.0) * std::log(delta)) / 2.0;
    return pre * std::exp(-(r * r + s * s) / delta) * j_nu(nu, 2.0 * I * r * s / delta);
}

double weber_schafheitlin_residual(Order nu, cplx delta, cplx r, cplx s, const QuadratureSpec& spec) {
    const double re = delta.real();
    if (!(re > 0.0)) throw std::domain_error("Re delta must be positive");
    const cplx rhs = gaussian_bessel_closed_form(nu, delta, r, s);

    // |j_nu(z)| <= e^{|Im z|}: cut where e^{-Re(delta) x^2 + B x} is below e^{-kTailExponent}.
    const double B = 2.0 * (std::abs(r.imag()) + std::abs(s.imag()));
    const double lead = kTailExponent + std::max(0.0, -std::log(std::abs(rhs)));
    const double R = (B + std::sqrt(B * B + 4.0 * re * lead)) / (2.0 * re);
    const double omega = 2.0 * std::abs(delta.imag()) * R + 2.0 * (std::abs(r.real()) + std::abs(s.real()));
    const double width = omega > 0.0 ? 2.0 * std::numbers::pi / omega : R;

    QuadratureSpec local = spec;
    local.abs_tol = std::min(spec.abs_tol, 1e-12 * std::abs(rhs));
    const ComplexFn h = [&](double x) {
        return std::exp(-delta * (x * x)) * j_nu(nu, 2.0 * r * x) * j_nu(nu, 2.0 * s * x);
    };
    const cplx lhs = integrate_halfline_weighted(h, nu, local, R, width);
    return std::abs(lhs - rhs) / std::abs(rhs);
}

std::vector<cplx> short_time_terms(const SLMatrix& m, Order nu, double sigma, const RadialFunction& f, double x, int n,
                                   const QuadratureSpec& spec) {
    if (n < 0) throw std::invalid_argument("expansion order must be nonnegative");
    std::vector<cplx> terms;
    const double pts[1] = {x};
    for (int k = 0; k <= n; ++k)
        terms.push_back(std::pow(sigma, k) * apply_delta_power_spectral(m, nu, f, k, pts, spec).values()[0]);
    return terms;
}

double short_time_expansion_error(const SLMatrix& m, Order nu, double sigma, const RadialFunction& f, double x,
                                  double t, std::span<const cplx> terms, const QuadratureSpec& spec) {
    cplx sum = 0.0;
    double coef = 1.0;
    for (std::size_t k = 0; k < terms.size(); ++k) {
        if (k > 0) coef *= t / static_cast<double>(k);
        sum += coef * terms[k];
    }
    return std::abs(evolve_at(m, nu, sigma, f, t, x, spec) - sum);
}

double short_time_expansion_error(const SLMatrix& m, Order nu, double sigma, const RadialFunction& f, double x,
                                  double t, int n, const QuadratureSpec& spec) {
    if (n < 0 || n > 2) throw std::invalid_argument("expansion order must be 0, 1 or 2");
    const auto terms = short_time_terms(m, nu, sigma, f, x, n, spec);
    return short_time_expansion_error(m, nu, sigma, f, x, t, terms, spec);
}

}  // namespace cfb
