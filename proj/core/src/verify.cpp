#include "cfb/verify.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <thread>

#include <json.hpp>

#include "cfb/catalog.hpp"
#include "cfb/heat.hpp"
#include "cfb/rng.hpp"
#include "cfb/transform.hpp"
#include "cfb/translation.hpp"

namespace cfb {

using cplx = std::complex<double>;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kPi = std::numbers::pi;

struct Context {
    Rng rng;
    QuadratureSpec spec;
};

struct Check {
    const char* id;
    const char* anchor;
    double tolerance;
    std::function<double(Context&)> measure;
};

SLMatrix random_matrix(Rng& r) {
    const double a = r.uniform(-1.5, 1.5);
    const double b = (r.uniform() < 0.5 ? -1.0 : 1.0) * r.uniform(0.4, 1.5);
    const double d = r.uniform(-1.5, 1.5);
    return SLMatrix(a, b, (a * d - 1.0) / b, d);
}

Order random_order(Rng& r) { return Order(r.uniform(-0.45, 2.5)); }

const double kOrders[] = {-0.25, 0.5, 1.7};

std::vector<RadialFunction> corpus() {
    return {chirped_gaussian(1.0, 0.7), gaussian(0.5), bump(2.0), damped_cosine(1.0, 2.0)};
}

double slope(const std::vector<double>& xs, const std::vector<double>& ys) {
    const double n = static_cast<double>(xs.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sx += xs[i];
        sy += ys[i];
        sxx += xs[i] * xs[i];
        sxy += xs[i] * ys[i];
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

// ---- transform ----

double gaussian_closed_form(Context& c) {
    double worst = 0.0;
    const auto pts = linspace(0.0, 4.0, 50);
    for (double nu : {-0.25, 0.0, 0.5, 1.7})
        for (double phi : {kPi / 6, kPi / 3}) {
            const auto m = SLMatrix::rotation(phi);
            const auto r = m.chirp_rates();
            const auto f = chirped_gaussian(0.5, -r.a_over_b);
            const cplx ib_pow = std::exp(-(nu + 1.0) * std::log(cplx(0.0, m.b())));
            double err = 0.0, peak = 0.0;
            for (double x : pts) {
                const cplx exact = ib_pow * std::polar(std::exp(-x * x / (2 * m.b() * m.b())), 0.5 * r.d_over_b * x * x);
                err = std::max(err, std::abs(forward_at(f, m, Order(nu), x, c.spec) - exact));
                peak = std::max(peak, std::abs(exact));
            }
            worst = std::max(worst, err / peak);
        }
    return worst;
}

double reversibility(Context& c) {
    double worst = 0.0;
    const auto m = SLMatrix::rotation(kPi / 3);
    const auto pts = linspace(0.0, 3.0, 40);
    for (double nu : kOrders)
        for (const auto& f : corpus()) {
            const auto g = transform_function(f, m, Order(nu), c.spec);
            const auto back = inverse(g, m, Order(nu), pts, c.spec);
            for (std::size_t i = 0; i < pts.size(); ++i) worst = std::max(worst, std::abs(back.values()[i] - f(pts[i])));
        }
    return worst;
}

double kernel_eigen(Context& c) {
    double worst = 0.0;
    for (int k = 0; k < 50; ++k) {
        const Order nu = random_order(c.rng);
        const auto m = random_matrix(c.rng);
        const double x = c.rng.uniform(0.0, 5.0), y = c.rng.uniform(0.0, 5.0);
        const double s = y * y / (m.b() * m.b());
        const cplx lhs = apply_delta(m, nu, kernel_function(m, nu, y), x);
        worst = std::max(worst, std::abs(lhs + s * kernel(m, nu, x, y)) / (1.0 + s));
    }
    return worst;
}

double operational_identity(Context& c) {
    double worst = 0.0;
    const auto m = SLMatrix::rotation(kPi / 3);
    for (double nu : kOrders)
        for (double x : {0.0, 0.7, 1.9})
            worst = std::max(worst, operational_identity_residual(m, Order(nu), chirped_gaussian(1.0, 0.7), x, c.spec));
    return worst;
}

double babenko_p2(Context& c) {
    double worst = 0.0;
    const auto m = SLMatrix::rotation(kPi / 3);
    for (double nu : kOrders)
        for (const auto& f : {chirped_gaussian(1.0, 0.7), damped_cosine(1.0, 2.0)}) {
            const auto g = transform_function(f, m, Order(nu), c.spec);
            const NormParams p2(2.0, Order(nu));
            const double nf = lp_norm(f, p2, c.spec);
            worst = std::max(worst, std::abs(lp_norm(g, p2, c.spec) - nf) / nf);
        }
    return worst;
}

// ---- translation ----

double product_formula(Context& c) {
    double worst = 0.0;
    for (int k = 0; k < 50; ++k) {
        const Order nu = random_order(c.rng);
        const auto m = random_matrix(c.rng);
        const double x = c.rng.uniform(0.0, 3.0), y0 = c.rng.uniform(0.0, 3.0), z = c.rng.uniform(0.0, 3.0);
        const auto K = kernel_function(m, nu, y0);
        const cplx rhs = std::polar(1.0, -0.5 * m.chirp_rates().a_over_b * y0 * y0) * kernel(m, nu, x, y0) *
                         kernel(m, nu, z, y0);
        worst = std::max(worst, std::abs(translate(m, nu, K, x, z, c.spec) - rhs));
    }
    return worst;
}

double contraction(Context& c) {
    double worst = 0.0;
    const auto fs = corpus();
    for (int k = 0; k < 20; ++k) {
        const double x = c.rng.uniform(0.0, 3.0);
        const Order nu(kOrders[c.rng.index(3)]);
        const auto m = random_matrix(c.rng);
        for (const auto& f : fs) {
            const auto t = translated(m, nu, f, x, c.spec);
            for (double p : {1.0, 2.0}) {
                const NormParams np(p, nu);
                worst = std::max(worst, lp_norm(t, np, c.spec) / lp_norm(f, np, c.spec) - 1.0);
            }
        }
    }
    return std::max(worst, 0.0);
}

double self_adjointness(Context& c) {
    double worst = 0.0;
    const auto f = chirped_gaussian(1.0, 0.4);
    const auto g = bump(1.5);
    for (int k = 0; k < 6; ++k) {
        const auto m = random_matrix(c.rng);
        const Order nu = random_order(c.rng);
        const double x = c.rng.uniform(0.0, 2.5);
        worst = std::max(worst, self_adjointness_residual(m, nu, f, g, x, c.spec));
    }
    return worst;
}

double mass_conservation(Context& c) {
    double worst = 0.0;
    const auto one = constant(1.0);
    for (const auto& f : corpus())
        for (double nu : kOrders) {
            const cplx mass = integrate_halfline_weighted(f.value, Order(nu), c.spec, truncation_radius(f, c.spec));
            const double x = c.rng.uniform(0.0, 2.0);
            worst = std::max(worst, std::abs(convolve_at(SLMatrix::hankel(), Order(nu), f, one, x, c.spec) - mass));
        }
    return worst;
}

double transform_identity(Context& c) {
    double worst = 0.0;
    const auto m = SLMatrix::rotation(kPi / 3);
    const auto f = chirped_gaussian(1.0, 0.7);
    for (int k = 0; k < 8; ++k) {
        const Order nu(kOrders[c.rng.index(3)]);
        const double x = c.rng.uniform(0.0, 2.0), l = c.rng.uniform(0.0, 3.0);
        worst = std::max(worst, translate_transform_residual(m, nu, f, x, l, c.spec));
    }
    return worst;
}

double convolution_theorem(Context& c) {
    double worst = 0.0;
    const auto m = SLMatrix::rotation(kPi / 3);
    const double q = m.chirp_rates().a_over_b;
    const auto pts = linspace(0.0, 3.8, 20);
    const std::pair<double, double> pairs[] = {{1.0, 0.5}, {0.8, 1.2}};
    const double orders[] = {0.5, -0.25};
    for (int i = 0; i < 2; ++i) {
        const auto f = chirped_gaussian(pairs[i].first, -q);
        const auto g = chirped_gaussian(pairs[i].second, -q);
        worst = std::max(worst, convolution_theorem_sides(m, Order(orders[i]), f, g, pts, c.spec).max_residual());
    }
    return worst;
}

double young(Context& c) {
    double worst = -kInf;
    const auto fs = corpus();
    const double triples[3][3] = {{1, 1, 1}, {1, 2, 2}, {2, 2, kInf}};
    for (int k = 0; k < 10; ++k) {
        const auto& f = fs[c.rng.index(fs.size())];
        const auto& g = fs[c.rng.index(fs.size())];
        const Order nu(kOrders[c.rng.index(3)]);
        const auto m = random_matrix(c.rng);
        const double R = f.radius(1e-12, 30.0) + g.radius(1e-12, 30.0);
        const auto grid = linspace(0.0, R, static_cast<std::size_t>(std::ceil(R / 0.08)) + 1);
        const auto h = convolve(m, nu, f, g, grid, c.spec).uniform_interpolant(0.0);
        for (const auto& t : triples) {
            const double lhs = lp_norm(h, NormParams(t[2], nu), c.spec);
            const double rhs = lp_norm(f, NormParams(t[0], nu), c.spec) * lp_norm(g, NormParams(t[1], nu), c.spec);
            worst = std::max(worst, (lhs - rhs) / rhs);
        }
    }
    return std::max(worst, 0.0);
}

double commutativity(Context& c) {
    double worst = 0.0;
    const auto f = chirped_gaussian(1.0, 0.3);
    for (int k = 0; k < 5; ++k) {
        const auto m = random_matrix(c.rng);
        const Order nu = random_order(c.rng);
        const double x = c.rng.uniform(0.0, 1.5), y = c.rng.uniform(0.0, 1.5), z = c.rng.uniform(0.0, 1.5);
        const cplx a = translate(m, nu, translated(m, nu, f, y, c.spec), x, z, c.spec);
        const cplx b = translate(m, nu, translated(m, nu, f, x, c.spec), y, z, c.spec);
        worst = std::max(worst, std::abs(a - b));
    }
    return worst;
}

double compact_support(Context& c) {
    double worst = 0.0;
    for (int k = 0; k < 20; ++k) {
        const double R = c.rng.uniform(0.5, 2.0);
        const auto f = k % 2 ? bump(R) : box(R);
        const auto m = random_matrix(c.rng);
        const Order nu = random_order(c.rng);
        const double x = c.rng.uniform(0.0, 4.0);
        const double y = c.rng.uniform() < 0.5 ? x + R + c.rng.uniform(0.0, 2.0) : std::max(0.0, x - R - c.rng.uniform(0.0, 2.0));
        if (std::abs(x - y) < R) continue;
        worst = std::max(worst, std::abs(translate(m, nu, f, x, y, c.spec)));
    }
    return worst;
}

double kernel_route(Context& c) {
    double worst = 0.0;
    const auto f = chirped_gaussian(1.0, 0.3);
    for (int k = 0; k < 10; ++k) {
        const auto m = random_matrix(c.rng);
        const Order nu(c.rng.uniform(0.5, 2.5));
        const double x = c.rng.uniform(0.1, 2.0), y = c.rng.uniform(0.1, 2.0);
        worst = std::max(worst, std::abs(translate_via_kernel(m, nu, f, x, y, c.spec) - translate(m, nu, f, x, y, c.spec)));
    }
    return worst;
}

double small_shift(Context& c) {
    const auto m = SLMatrix::rotation(kPi / 3);
    const auto pts = linspace(0.0, 4.0, 41);
    double last = 0.0;
    std::vector<double> gaps;
    for (int k = 0; k <= 6; ++k) {
        const double y = 0.1 * std::ldexp(1.0, -k);
        double gap = 0.0;
        for (const auto& f : corpus())
            for (double nu : kOrders)
                for (double x : pts) gap = std::max(gap, std::abs(translate(m, Order(nu), f, y, x, c.spec) - f(x)));
        if (!gaps.empty() && !(gap < gaps.back())) return kInf;
        gaps.push_back(gap);
        last = gap;
    }
    return last;
}

// ---- heat ----

double gaussian_bessel(Context& c) {
    double worst = 0.0;
    for (cplx delta : {cplx(1.0), cplx(1.0, 0.5), cplx(0.3, 2.0)})
        for (int k = 0; k < 4; ++k) {
            const double r = c.rng.uniform(), s = c.rng.uniform();
            const Order nu(kOrders[c.rng.index(3)]);
            worst = std::max(worst, weber_schafheitlin_residual(nu, delta, r, s, c.spec));
        }
    return worst;
}

double heat_normalization(Context& c) {
    double worst = 0.0;
    const std::pair<double, double> fixed[] = {{0.0, 0.5}, {2.0, 0.1}, {5.0, 0.01}};
    for (auto [x, st] : fixed)
        worst = std::max(worst, heat_normalization_residual(SLMatrix::rotation(0.9), Order(0.5), {1.0, st}, x, c.spec));
    for (int k = 0; k < 20; ++k) {
        const auto m = random_matrix(c.rng);
        const Order nu = random_order(c.rng);
        const HeatConfig cfg{c.rng.uniform(0.2, 2.0), c.rng.uniform(0.05, 1.0)};
        worst = std::max(worst, heat_normalization_residual(m, nu, cfg, c.rng.uniform(0.0, 3.0), c.spec));
    }
    return worst;
}

double heat_bound(Context& c) {
    double worst = 0.0;
    for (int k = 0; k < 200; ++k) {
        const auto m = random_matrix(c.rng);
        const Order nu = random_order(c.rng);
        const HeatConfig cfg{c.rng.uniform(0.1, 2.0), c.rng.uniform(1e-3, 2.0)};
        const double x = c.rng.uniform(0.0, 5.0), y = c.rng.uniform(0.0, 5.0);
        worst = std::max(worst, std::abs(heat_kernel(m, nu, cfg, x, y)) - heat_kernel_bound(nu, cfg, x, y));
    }
    return std::max(worst, 0.0);
}

double heat_semigroup(Context& c) {
    double worst = 0.0;
    for (int k = 0; k < 20; ++k) {
        const auto m = random_matrix(c.rng);
        const Order nu = random_order(c.rng);
        const double sigma = c.rng.uniform(0.3, 1.5), t = c.rng.uniform(0.05, 0.6), s = c.rng.uniform(0.05, 0.6);
        const double x = c.rng.uniform(0.0, 2.0), y = c.rng.uniform(0.0, 2.0);
        worst = std::max(worst, semigroup_residual(m, nu, sigma, t, s, x, y, c.spec));
    }
    return worst;
}

double heat_translation_route(Context& c) {
    double worst = 0.0;
    for (int k = 0; k < 30; ++k) {
        const auto m = random_matrix(c.rng);
        const Order nu = random_order(c.rng);
        const HeatConfig cfg{c.rng.uniform(0.2, 1.5), c.rng.uniform(0.05, 1.0)};
        const double x = c.rng.uniform(0.0, 3.0), y = c.rng.uniform(0.0, 3.0);
        const cplx G = heat_kernel(m, nu, cfg, x, y);
        const cplx T = translate(m.inverse(), nu, p_kernel_function(m, nu, cfg), x, y, c.spec);
        worst = std::max(worst, std::abs(T - G) / (1.0 + std::abs(G)));
    }
    return worst;
}

double heat_pde(Context& c) {
    double worst = pde_residual(SLMatrix::rotation(kPi / 4), Order(0.8), {1.0, 0.2}, 1.0, 0.5);
    for (int k = 0; k < 30; ++k) {
        const auto m = random_matrix(c.rng);
        const Order nu = random_order(c.rng);
        const HeatConfig cfg{c.rng.uniform(0.2, 1.5), c.rng.uniform(0.05, 1.0)};
        const double x = c.rng.uniform(0.0, 3.0), y = c.rng.uniform(0.0, 3.0);
        worst = std::max(worst, pde_residual(m, nu, cfg, x, y));
    }
    return worst;
}

double heat_time_difference(Context&) {
    const auto m = SLMatrix::rotation(kPi / 4);
    const HeatConfig cfg{1.0, 0.2};
    std::vector<double> lh, le;
    for (double h : {0.02, 0.01, 0.005, 0.0025}) {
        lh.push_back(std::log(h));
        le.push_back(std::log(time_difference_error(m, Order(0.8), cfg, 1.0, 0.5, h)));
    }
    return std::abs(slope(lh, le) - 2.0);
}

double golden_evolution(Context& c) {
    double worst = 0.0;
    const auto m = SLMatrix::rotation(kPi / 3);
    const double sigma = 0.8;
    const auto f = gaussian_initial_datum(m, sigma);
    const auto pts = linspace(0.0, 4.0, 21);
    for (double nu : kOrders)
        for (double t : {0.1, 0.5, 1.0, 2.0})
            for (double x : pts) {
                const cplx exact = gaussian_solution(m, Order(nu), sigma, t, x);
                worst = std::max(worst, std::abs(evolve_at(m, Order(nu), sigma, f, t, x, c.spec) - exact) / std::abs(exact));
            }
    return worst;
}

double taylor_slope(Context& c) {
    const auto m = SLMatrix::rotation(kPi / 3);
    const double sigma = 0.8, x = 0.7;
    const Order nu(0.5);
    const auto f = gaussian_initial_datum(m, sigma);
    const auto terms = short_time_terms(m, nu, sigma, f, x, 1, c.spec);
    std::vector<double> lt, le;
    for (int k = 4; k <= 9; ++k) {
        const double t = std::ldexp(1.0, -k);
        lt.push_back(std::log(t));
        le.push_back(std::log(short_time_expansion_error(m, nu, sigma, f, x, t, terms, c.spec)));
    }
    return std::abs(slope(lt, le) - 2.0);
}

double small_time_recovery(Context& c) {
    const auto m = SLMatrix::rotation(0.8);
    const Order nu(0.3);
    const double sigma = 1.0;
    const auto f = damped_cosine(1.0, 1.5);
    double prev = kInf;
    for (double t : {1e-1, 1e-2, 1e-3, 1e-4}) {
        RadialFunction diff;
        diff.value = [&, t](double x) { return evolve_at(m, nu, sigma, f, t, x, c.spec) - f(x); };
        diff.decay_radius = f.decay_radius;
        const double n2 = lp_norm(diff, NormParams(2.0, nu), c.spec);
        if (!(n2 < prev)) return kInf;
        prev = n2;
    }
    return prev;
}

// ---- Hankel reduction ----

double hankel_reduction(Context& c) {
    const auto h = SLMatrix::hankel();
    double worst = 0.0;
    auto bits = [&](cplx a, cplx b) {
        if (!(a == b)) worst = kInf;
    };
    const auto f = gaussian(0.5);
    for (double v : kOrders) {
        const Order nu(v);
        for (double x : {0.0, 0.4, 1.3, 2.9}) {
            const double y = 1.1;
            bits(kernel(h, nu, x, y), j_nu(nu, x * y));
            bits(translate(h, nu, f, x, y, c.spec), classical_translate(nu, f, x, y, c.spec));
            const HeatConfig cfg{0.7, 0.3};
            const double st = cfg.sigma * cfg.t;
            bits(heat_kernel(h, nu, cfg, x, y),
                 heat_prefactor(nu, cfg) * std::exp(-(x - y) * (x - y) / (4 * st)) * j_nu_scaled(nu, x * y / (2 * st)));
            const auto K = kernel_function(h, nu, y);
            if (x > 0.0) {
                const double s = 2.0 * v + 1.0;
                bits(apply_delta(h, nu, K, x), K.deriv2(x) + (s / x) * K.deriv1(x));
            }
            // Classical self-dual Gaussian: F e^{-y^2/2} = e^{-i pi (nu+1)/2} e^{-x^2/2}.
            const cplx ref = std::polar(std::exp(-x * x / 2), -kPi * (v + 1.0) / 2);
            worst = std::max(worst, std::abs(forward_at(f, h, nu, x, c.spec) - ref));
            // Classical convolution against the W-kernel route, where that
            // kernel is bounded.
            if (v >= 0.5) {
                const auto g = bump(1.5);
                const cplx conv = convolve_at(h, nu, f, g, x, c.spec);
                ComplexFn via_w = [&](double yy) { return translate_via_kernel(h, nu, f, x, yy, c.spec) * g.value(yy); };
                const cplx ref_conv = integrate_halfline_weighted(via_w, nu, c.spec, 1.5);
                worst = std::max(worst, std::abs(conv - ref_conv));
            }
        }
    }
    return worst;
}

double bessel_ode(Context& c) {
    double worst = 0.0;
    for (int k = 0; k < 50; ++k) {
        const Order nu = random_order(c.rng);
        const double y = c.rng.uniform(0.0, 5.0), x = c.rng.uniform(0.01, 5.0);
        worst = std::max(worst, std::abs(bessel_ode_residual(nu, y, x)) / (1.0 + y * y));
    }
    return worst;
}

const std::vector<Check>& registry() {
    static const std::vector<Check> checks = [] {
        std::vector<Check> v = {
            {"hankel.reduction", "chirp-free reduction for m = (0,1;-1,0)", 1e-10, hankel_reduction},
            {"heat.gaussian_bessel_lemma", "Gaussian-Bessel product integral closed form", 1e-8, gaussian_bessel},
            {"heat.golden_evolution", "exact evolution of the matched chirped Gaussian", 1e-7, golden_evolution},
            {"heat.kernel_bound", "heat kernel modulus bound", 1e-12, heat_bound},
            {"heat.normalization", "heat kernel normalization", 1e-8, heat_normalization},
            {"heat.pde_residual", "heat kernel solves the heat equation", 1e-8, heat_pde},
            {"heat.semigroup", "heat kernel semigroup property", 1e-7, heat_semigroup},
            {"heat.small_time_recovery", "solution tends to the datum as t -> 0", 1e-3, small_time_recovery},
            {"heat.taylor_slope", "short-time Taylor remainder order", 0.2, taylor_slope},
            {"heat.time_difference_slope", "centered time difference converges at order 2", 0.1, heat_time_difference},
            {"heat.translation_route", "heat kernel as a translate of P_t", 1e-9, heat_translation_route},
            {"specfun.bessel_ode", "Bessel eigen-equation for j_nu", 1e-10, bessel_ode},
            {"transform.babenko_p2", "Plancherel identity for the transform", 1e-6, babenko_p2},
            {"transform.gaussian_closed_form", "transform of the matched chirped Gaussian", 1e-8, gaussian_closed_form},
            {"transform.kernel_eigen", "kernel eigen-equation", 1e-8, kernel_eigen},
            {"transform.operational_identity", "transform of y^2 f versus the operator", 1e-6, operational_identity},
            {"transform.reversibility", "inverse transform recovers f", 1e-6, reversibility},
            {"translation.commutativity", "double translations commute", 1e-7, commutativity},
            {"translation.compact_support", "translation preserves compact support", 0.0, compact_support},
            {"translation.contraction", "translation is an L^p contraction", 1e-8, contraction},
            {"translation.convolution_theorem", "transform turns convolution into a product", 1e-6, convolution_theorem},
            {"translation.kernel_route", "translation through the triangle kernel", 1e-8, kernel_route},
            {"translation.mass_conservation", "translation conserves mass", 1e-7, mass_conservation},
            {"translation.product_formula", "product formula for the chirped kernel", 1e-8, product_formula},
            {"translation.self_adjointness", "translation is self-adjoint", 1e-7, self_adjointness},
            {"translation.small_shift_continuity", "small translations converge to the identity", 1e-3, small_shift},
            {"translation.transform_identity", "transform of a translate", 1e-6, transform_identity},
            {"translation.young", "Young's inequality instances", 1e-6, young},
        };
        std::sort(v.begin(), v.end(), [](const Check& a, const Check& b) { return std::string(a.id) < b.id; });
        return v;
    }();
    return checks;
}

}  // namespace

bool VerifyReport::all_pass() const {
    return std::all_of(entries.begin(), entries.end(), [](const CheckResult& r) { return r.pass; });
}

std::string VerifyReport::to_json(int indent) const {
    nlohmann::ordered_json j;
    j["version"] = 1;
    j["entries"] = nlohmann::ordered_json::array();
    for (const auto& e : entries) {
        nlohmann::ordered_json o;
        o["check_id"] = e.check_id;
        o["paper_anchor"] = e.paper_anchor;
        if (std::isfinite(e.max_error))
            o["max_error"] = e.max_error;
        else
            o["max_error"] = nullptr;
        o["tolerance"] = e.tolerance;
        o["pass"] = e.pass;
        o["runtime_ms"] = e.runtime_ms;
        j["entries"].push_back(std::move(o));
    }
    return j.dump(indent);
}

std::vector<CheckInfo> registered_checks() {
    std::vector<CheckInfo> out;
    for (const auto& c : registry()) out.push_back({c.id, c.anchor, c.tolerance});
    return out;
}

VerifyReport run_verify(const VerifyOptions& options) {
    options.spec.validate();
    std::vector<const Check*> chosen;
    if (options.selection.empty()) {
        for (const auto& c : registry()) chosen.push_back(&c);
    } else {
        for (const auto& id : options.selection) {
            auto it = std::find_if(registry().begin(), registry().end(), [&](const Check& c) { return id == c.id; });
            if (it == registry().end()) throw std::invalid_argument("unknown check id '" + id + "'");
            if (std::find(chosen.begin(), chosen.end(), &*it) == chosen.end()) chosen.push_back(&*it);
        }
        std::sort(chosen.begin(), chosen.end(), [](const Check* a, const Check* b) { return std::string(a->id) < b->id; });
    }
    for (const auto& [id, tol] : options.tolerance_overrides)
        if (std::none_of(registry().begin(), registry().end(), [&](const Check& c) { return id == c.id; }))
            throw std::invalid_argument("tolerance override for unknown check id '" + id + "'");

    VerifyReport report;
    report.entries.resize(chosen.size());
    auto run_one = [&](std::size_t i) {
        const Check& c = *chosen[i];
        CheckResult r;
        r.check_id = c.id;
        r.paper_anchor = c.anchor;
        auto ov = options.tolerance_overrides.find(c.id);
        r.tolerance = ov == options.tolerance_overrides.end() ? c.tolerance : ov->second;
        Context ctx{Rng(options.seed, c.id), options.spec};
        const auto start = std::chrono::steady_clock::now();
        try {
            r.max_error = c.measure(ctx);
        } catch (const std::exception&) {
            r.max_error = kInf;
        }
        r.runtime_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
        r.pass = r.max_error <= r.tolerance;
        report.entries[i] = std::move(r);
    };

    const unsigned jobs = std::max(1u, std::min<unsigned>(options.jobs, static_cast<unsigned>(chosen.size())));
    if (jobs <= 1) {
        for (std::size_t i = 0; i < chosen.size(); ++i) run_one(i);
    } else {
        std::atomic<std::size_t> next{0};
        std::vector<std::thread> pool;
        for (unsigned w = 0; w < jobs; ++w)
            pool.emplace_back([&] {
                for (std::size_t i; (i = next++) < chosen.size();) run_one(i);
            });
        for (auto& t : pool) t.join();
    }
    return report;
}

}  // namespace cfb
