#include "cfb/transform.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "cfb/errors.hpp"

namespace cfb {

using cplx = std::complex<double>;

namespace {

constexpr cplx I(0.0, 1.0);

cplx chirp(double rate, double x) { return std::polar(1.0, 0.5 * rate * x * x); }

}  // namespace

cplx kernel(const SLMatrix& m, Order nu, double x, double y) {
    const auto r = m.chirp_rates();
    const double phase = 0.5 * (r.d_over_b * x * x + r.a_over_b * y * y);
    const double j = j_nu(nu, x * y / m.b());
    if (r.d_over_b == 0.0 && r.a_over_b == 0.0) return j;
    return std::polar(1.0, phase) * j;
}

RadialFunction kernel_function(const SLMatrix& m, Order nu, double y) {
    const auto r = m.chirp_rates();
    const double p = r.d_over_b;
    const double q = y / m.b();
    const cplx cy = chirp(r.a_over_b, y);
    RadialFunction f;
    f.value = [=](double x) { return cy * chirp(p, x) * j_nu(nu, q * x); };
    f.deriv1 = [=](double x) {
        return cy * chirp(p, x) * (I * p * x * j_nu(nu, q * x) + q * j_nu_deriv(nu, q * x));
    };
    f.deriv2 = [=](double x) {
        const double j = j_nu(nu, q * x);
        const double j1 = j_nu_deriv(nu, q * x);
        const double j2 = j_nu_deriv2(nu, q * x);
        const cplx ipx = I * p * x;
        return cy * chirp(p, x) * (ipx * ipx * j + I * p * j + 2.0 * ipx * q * j1 + q * q * j2);
    };
    f.chirp_hint = p;
    return f;
}

cplx normalization_constant(const SLMatrix& m, Order nu) {
    const double v = nu.value();
    const double b = m.b();
    const double log_c = -(v * std::numbers::ln2 + log_gamma(v + 1.0));
    const double mod = log_c - (v + 1.0) * std::log(std::abs(b));
    const double arg = -(v + 1.0) * (b > 0.0 ? 1.0 : -1.0) * std::numbers::pi / 2.0;
    return std::polar(std::exp(mod), arg);
}

cplx forward_at(const RadialFunction& f, const SLMatrix& m, Order nu, double x, const QuadratureSpec& spec) {
    const auto r = m.chirp_rates();
    const double b = m.b();
    const double R = truncation_radius(f, spec);
    const double ax = std::abs(x);
    const double rate = r.a_over_b;

    // Local angular frequency of the integrand bounded over [0, R]; one
    // oscillation per initial panel.
    const double omega = std::abs(rate + f.chirp_hint) * R + ax / std::abs(b);
    const double width = omega > 0.0 ? 2.0 * std::numbers::pi / omega : R;

    ComplexFn integrand;
    if (rate == 0.0) {
        integrand = [&](double y) { return f.value(y) * j_nu(nu, ax * y / b); };
    } else {
        integrand = [&](double y) { return chirp(rate, y) * f.value(y) * j_nu(nu, ax * y / b); };
    }
    const cplx I0 = integrate_halfline_weighted(integrand, nu, spec, R, width);
    const cplx out = normalization_constant(m, nu) * I0;
    return r.d_over_b == 0.0 ? out : out * chirp(r.d_over_b, ax);
}

SampledRadialFunction forward(const RadialFunction& f, const SLMatrix& m, Order nu, std::span<const double> points,
                              const QuadratureSpec& spec) {
    std::vector<double> g(points.begin(), points.end());
    std::vector<cplx> v(g.size());
    for (std::size_t i = 0; i < g.size(); ++i) v[i] = forward_at(f, m, nu, g[i], spec);
    return SampledRadialFunction(std::move(g), std::move(v));
}

SampledRadialFunction inverse(const RadialFunction& g, const SLMatrix& m, Order nu, std::span<const double> points,
                              const QuadratureSpec& spec) {
    return forward(g, m.inverse(), nu, points, spec);
}

cplx apply_delta(const SLMatrix& m, Order nu, const RadialFunction& f, double x) {
    if (!f.has_derivatives()) throw MissingDerivatives("apply_delta needs analytic first and second derivatives");
    const double p = m.chirp_rates().d_over_b;
    const double v = nu.value();
    x = std::abs(x);
    if (x == 0.0) return (2.0 * v + 2.0) * f.deriv2(0.0) - 2.0 * I * (v + 1.0) * p * f.value(0.0);
    const cplx f0 = f.value(x);
    const cplx f1 = f.deriv1(x);
    const cplx f2 = f.deriv2(x);
    return f2 + ((2.0 * v + 1.0) / x - 2.0 * I * p * x) * f1 - (p * p * x * x + 2.0 * I * (v + 1.0) * p) * f0;
}

namespace {

// Samples of F f on a uniform grid from 0, extended until the weighted
// spectrum has decayed.
SampledRadialFunction spectrum_samples(const RadialFunction& f, const SLMatrix& m, Order nu,
                                       const QuadratureSpec& spec, const SpectralGrid& grid) {
    const double b = std::abs(m.b());
    double h = grid.step;
    if (!(h > 0.0)) {
        const double R4 = f.radius(1e-4, spec.default_truncation);
        h = 0.2 * b / R4;
    }
    const double w = 2.0 * nu.value() + 1.0;
    auto weight = [&](double l) {
        const double s = l / b;
        return std::pow(l, w) * std::pow(s * s, grid.weight_power);
    };

    // Spectral tails are small but weighted by growing powers of l, so the
    // samples get a much smaller absolute tolerance than ordinary integrals.
    QuadratureSpec fine = spec;
    fine.abs_tol = spec.abs_tol * 1e-3;
    fine.rel_tol = std::min(spec.rel_tol, 1e-10);

    std::vector<double> xs;
    std::vector<cplx> vs;
    if (grid.lambda_max > 0.0) {
        const std::size_t n = static_cast<std::size_t>(std::ceil(grid.lambda_max / h)) + 1;
        xs = linspace(0.0, grid.lambda_max, n);
        vs.resize(n);
        for (std::size_t i = 0; i < n; ++i) vs[i] = forward_at(f, m, nu, xs[i], fine);
        return SampledRadialFunction(std::move(xs), std::move(vs));
    }

    // Blocks one spectral width long; stop after two consecutive blocks whose
    // weighted mass is negligible against everything sampled so far.
    const std::size_t block = std::max<std::size_t>(8, static_cast<std::size_t>(std::ceil(b / h)));
    double mass = 0.0;
    double block_mass = 0.0;
    int quiet = 0;
    for (std::size_t i = 0;; ++i) {
        if (xs.size() >= grid.max_samples)
            throw NonConvergent("transform spectrum did not decay within the sample budget", 0.0, 0.0);
        const double l = h * static_cast<double>(i);
        const cplx v = forward_at(f, m, nu, l, fine);
        xs.push_back(l);
        vs.push_back(v);
        const double wv = std::abs(v) * weight(l);
        block_mass += wv;
        mass += wv;
        if ((i + 1) % block == 0) {
            if (mass == 0.0 || block_mass <= grid.cutoff * mass) {
                if (++quiet == 2) break;
            } else {
                quiet = 0;
            }
            block_mass = 0.0;
        }
    }
    return SampledRadialFunction(std::move(xs), std::move(vs));
}

}  // namespace

RadialFunction transform_function(const RadialFunction& f, const SLMatrix& m, Order nu, const QuadratureSpec& spec,
                                  SpectralGrid grid) {
    return spectrum_samples(f, m, nu, spec, grid).uniform_interpolant(m.chirp_rates().d_over_b);
}

SampledRadialFunction apply_delta_power_spectral(const SLMatrix& m, Order nu, const RadialFunction& f, int k,
                                                 std::span<const double> points, const QuadratureSpec& spec) {
    if (k < 0) throw std::invalid_argument("operator power must be nonnegative");
    if (k == 0) return sample(f, points);
    SpectralGrid grid;
    grid.weight_power = k;
    const SampledRadialFunction s = spectrum_samples(f, m, nu, spec, grid);
    const double b2 = m.b() * m.b();
    std::vector<cplx> v = s.values();
    for (std::size_t i = 0; i < v.size(); ++i) v[i] *= std::pow(-s.grid()[i] * s.grid()[i] / b2, k);
    const RadialFunction g =
        SampledRadialFunction(s.grid(), std::move(v)).uniform_interpolant(m.chirp_rates().d_over_b);
    return inverse(g, m, nu, points, spec);
}

double operational_identity_residual(const SLMatrix& m, Order nu, const RadialFunction& f, double x,
                                     const QuadratureSpec& spec) {
    if (!f.smooth) throw MissingSmoothness("operational formula needs a smooth function");
    QuadratureSpec tight = spec;
    tight.rel_tol = std::min(spec.rel_tol, 1e-14);
    tight.abs_tol = std::min(spec.abs_tol, 1e-16);

    RadialFunction y2f = f;
    y2f.value = [fv = f.value](double y) { return y * y * fv(y); };
    const cplx lhs = forward_at(y2f, m, nu, x, tight);

    x = std::abs(x);
    const double h = 1e-3 * (1.0 + x);
    cplx F[5];
    for (int j = -2; j <= 2; ++j) F[j + 2] = forward_at(f, m, nu, std::abs(x + j * h), tight);
    const cplx d1 = (-F[4] + 8.0 * F[3] - 8.0 * F[1] + F[0]) / (12.0 * h);
    const cplx d2 = (-F[4] + 16.0 * F[3] - 30.0 * F[2] + 16.0 * F[1] - F[0]) / (12.0 * h * h);

    const double p = m.chirp_rates().d_over_b;
    const double v = nu.value();
    cplx delta;
    if (x == 0.0) {
        delta = (2.0 * v + 2.0) * d2 - 2.0 * I * (v + 1.0) * p * F[2];
    } else {
        delta = d2 + ((2.0 * v + 1.0) / x - 2.0 * I * p * x) * d1 - (p * p * x * x + 2.0 * I * (v + 1.0) * p) * F[2];
    }
    return std::abs(lhs + m.b() * m.b() * delta);
}

}  // namespace cfb
