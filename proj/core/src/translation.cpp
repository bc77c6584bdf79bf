#include "cfb/translation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "cfb/transform.hpp"

namespace cfb {

using cplx = std::complex<double>;

namespace {

constexpr cplx I(0.0, 1.0);
constexpr double kInf = std::numeric_limits<double>::infinity();

cplx chirp(double rate, double x) { return std::polar(1.0, 0.5 * rate * x * x); }

double mehler(Order nu) {
    const double v = nu.value();
    return std::exp(log_gamma(v + 1.0) - log_gamma(v + 0.5)) / std::sqrt(std::numbers::pi);
}

// Radius beyond which f vanishes identically, or +inf.
double support_radius(const RadialFunction& f) {
    if (!f.decay_radius) return kInf;
    const double r = f.decay_radius(0.0);
    return std::isfinite(r) ? r : kInf;
}

cplx translate_impl(double p, Order nu, const RadialFunction& f, double x, double y, const QuadratureSpec& spec) {
    x = std::abs(x);
    y = std::abs(y);
    if (x == 0.0) return f(y);
    if (y == 0.0) return f(x);

    const double support = support_radius(f);
    if (std::abs(x - y) >= support) return 0.0;

    const double d = x - y;
    const double xy2 = 2.0 * x * y;
    auto arg = [=](double u) { return std::sqrt(d * d + xy2 * (1.0 - u)); };

    if (f.smooth || !std::isfinite(support) || x + y <= support) {
        ComplexFn h;
        if (p == 0.0) {
            h = [&](double u) { return f.value(arg(u)); };
        } else {
            h = [&](double u) { return std::polar(1.0, p * x * y * u) * f.value(arg(u)); };
        }
        return mehler(nu) * cos_theta_integral(h, nu, spec);
    }

    // Non-smooth f with its support edge inside the averaging range: split
    // the theta integral where the argument crosses the edge.
    const double v = nu.value();
    const double c = std::clamp((x * x + y * y - support * support) / xy2, -1.0, 1.0);
    const double split = std::acos(c);
    ComplexFn g = [&](double t) {
        const double u = std::cos(t);
        const double s = std::sin(t);
        const cplx w = v == 0.0 ? cplx(1.0) : cplx(std::pow(s, 2.0 * v));
        const cplx ph = p == 0.0 ? cplx(1.0) : std::polar(1.0, p * x * y * u);
        return w * ph * f.value(arg(u));
    };
    std::vector<double> bp{0.0};
    if (split > 0.0 && split < std::numbers::pi) bp.push_back(split);
    bp.push_back(std::numbers::pi);
    return mehler(nu) * integrate_partitioned(g, bp, spec).value;
}

double oscillation_width(double omega, double R) {
    return omega > 0.0 ? std::min(R, 2.0 * std::numbers::pi / omega) : R;
}

}  // namespace

RadialFunction chirp_mul(ChirpRate a, const RadialFunction& f) {
    const double r = a.a;
    RadialFunction g = f;
    g.value = [r, fv = f.value](double x) { return chirp(r, x) * fv(x); };
    if (f.has_derivatives()) {
        g.deriv1 = [r, fv = f.value, f1 = f.deriv1](double x) {
            return chirp(r, x) * (I * r * x * fv(x) + f1(x));
        };
        g.deriv2 = [r, fv = f.value, f1 = f.deriv1, f2 = f.deriv2](double x) {
            const cplx irx = I * r * x;
            return chirp(r, x) * ((irx * irx + I * r) * fv(x) + 2.0 * irx * f1(x) + f2(x));
        };
    }
    g.chirp_hint = f.chirp_hint + r;
    return g;
}

RadialFunction dilate(double a, Order nu, const RadialFunction& f) {
    if (a == 0.0 || !std::isfinite(a)) throw std::domain_error("dilation factor must be finite and nonzero");
    const double s = std::pow(std::abs(a), -(nu.value() + 1.0));
    RadialFunction g;
    g.value = [=, fv = f.value](double x) { return s * fv(x / a); };
    if (f.has_derivatives()) {
        g.deriv1 = [=, f1 = f.deriv1](double x) { return s / a * f1(x / a); };
        g.deriv2 = [=, f2 = f.deriv2](double x) { return s / (a * a) * f2(x / a); };
    }
    if (f.decay_radius) g.decay_radius = [a, r = f.decay_radius](double eps) { return std::abs(a) * r(eps); };
    g.smooth = f.smooth;
    g.chirp_hint = f.chirp_hint / (a * a);
    return g;
}

cplx classical_translate(Order nu, const RadialFunction& f, double x, double y, const QuadratureSpec& spec) {
    return translate_impl(0.0, nu, f, x, y, spec);
}

cplx translate(const SLMatrix& m, Order nu, const RadialFunction& f, double x, double y, const QuadratureSpec& spec) {
    return translate_impl(m.chirp_rates().d_over_b, nu, f, x, y, spec);
}

RadialFunction translated(const SLMatrix& m, Order nu, const RadialFunction& f, double x,
                          const QuadratureSpec& spec) {
    const double p = m.chirp_rates().d_over_b;
    x = std::abs(x);
    RadialFunction g;
    g.value = [=](double y) { return translate_impl(p, nu, f, x, y, spec); };
    if (f.decay_radius) g.decay_radius = [x, r = f.decay_radius](double eps) { return x + r(eps); };
    g.smooth = f.smooth;
    g.chirp_hint = f.chirp_hint;
    return g;
}

double w_kernel_classical(Order nu, double x, double y, double z) {
    x = std::abs(x);
    y = std::abs(y);
    z = std::abs(z);
    if (!(z > std::abs(x - y) && z < x + y)) return 0.0;
    const double v = nu.value();
    const double a16 = (x + y + z) * (x + y - z) * (x - y + z) * (y + z - x);
    if (!(a16 > 0.0)) return 0.0;
    const double log_area = 0.5 * std::log(a16) - std::log(4.0);
    const double log_w = (2.0 * v - 1.0) * std::numbers::ln2 + std::log(mehler(nu)) + (2.0 * v - 1.0) * log_area -
                         2.0 * v * (std::log(x) + std::log(y) + std::log(z));
    return std::exp(log_w);
}

cplx w_kernel(const SLMatrix& m, Order nu, double x, double y, double z) {
    const double w = w_kernel_classical(nu, x, y, z);
    const double p = m.chirp_rates().d_over_b;
    if (w == 0.0 || p == 0.0) return w;
    return std::polar(w, 0.5 * p * (x * x + y * y + z * z));
}

cplx translate_via_kernel(const SLMatrix& m, Order nu, const RadialFunction& f, double x, double y,
                          const QuadratureSpec& spec) {
    x = std::abs(x);
    y = std::abs(y);
    if (x == 0.0) return f(y);
    if (y == 0.0) return f(x);
    const double p = m.chirp_rates().d_over_b;
    const double lo = std::abs(x - y);
    const double hi = std::min(x + y, support_radius(f));
    if (!(hi > lo)) return 0.0;

    const double v = nu.value();
    ComplexFn h = [&](double z) {
        const cplx w = w_kernel(m, nu, x, y, z) * (p == 0.0 ? cplx(1.0) : chirp(-2.0 * p, z));
        return w * f.value(z) * std::pow(z, 2.0 * v + 1.0);
    };
    const double omega = std::abs(f.chirp_hint) * hi;
    std::vector<double> bp{lo, hi};
    return integrate_partitioned(h, bp, spec, oscillation_width(omega, hi - lo)).value;
}

double convolution_radius(const RadialFunction& f, const RadialFunction& g, const QuadratureSpec& spec) {
    if (!f.decay_radius && !g.decay_radius) return spec.default_truncation;
    return truncation_radius(f, spec) + truncation_radius(g, spec);
}

cplx convolve_at(const SLMatrix& m, Order nu, const RadialFunction& f, const RadialFunction& g, double x,
                 const QuadratureSpec& spec) {
    x = std::abs(x);
    const double p = m.chirp_rates().d_over_b;
    const double Rf = truncation_radius(f, spec);
    const double Rg = truncation_radius(g, spec);
    const double lo = f.decay_radius ? std::max(0.0, x - Rf) : 0.0;
    const double hi = f.decay_radius ? std::min(x + Rf, Rg) : Rg;
    if (!(hi > lo)) return 0.0;

    ComplexFn h = [&](double y) {
        const cplx t = translate_impl(p, nu, f, x, y, spec);
        const cplx e = p == 0.0 ? cplx(1.0) : chirp(-2.0 * p, y);
        return t * e * g.value(y);
    };

    std::vector<double> bp;
    auto add = [&](double t) {
        if (t > 0.0 && t < hi) bp.push_back(t);
    };
    add(lo);
    if (!f.smooth) {
        add(std::abs(x - Rf));
        add(x + Rf);
    }
    if (!g.smooth) add(support_radius(g));
    std::sort(bp.begin(), bp.end());
    bp.erase(std::unique(bp.begin(), bp.end()), bp.end());

    const double omega = (std::abs(p) + std::abs(f.chirp_hint) + std::abs(g.chirp_hint)) * hi + std::abs(p) * x;
    return integrate_halfline_weighted(h, nu, spec, hi, oscillation_width(omega, hi), bp);
}

SampledRadialFunction convolve(const SLMatrix& m, Order nu, const RadialFunction& f, const RadialFunction& g,
                               std::span<const double> points, const QuadratureSpec& spec) {
    std::vector<double> xs(points.begin(), points.end());
    std::vector<cplx> vs(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i) vs[i] = convolve_at(m, nu, f, g, xs[i], spec);
    return SampledRadialFunction(std::move(xs), std::move(vs));
}

double self_adjointness_residual(const SLMatrix& m, Order nu, const RadialFunction& f, const RadialFunction& g,
                                 double x, const QuadratureSpec& spec) {
    return std::abs(convolve_at(m, nu, f, g, x, spec) - convolve_at(m, nu, g, f, x, spec));
}

double translate_transform_residual(const SLMatrix& m, Order nu, const RadialFunction& f, double x, double lambda,
                                    const QuadratureSpec& spec) {
    const SLMatrix mi = m.inverse();
    const RadialFunction t = translated(mi, nu, f, x, spec);
    const cplx lhs = forward_at(t, m, nu, lambda, spec);
    const cplx rhs = chirp(m.chirp_rates().d_over_b, lambda) * kernel(mi, nu, x, lambda) * forward_at(f, m, nu, lambda, spec);
    return std::abs(lhs - rhs);
}

double TheoremSides::max_residual() const {
    double r = 0.0;
    for (std::size_t i = 0; i < lhs.values().size(); ++i) r = std::max(r, std::abs(lhs.values()[i] - rhs.values()[i]));
    return r;
}

TheoremSides convolution_theorem_sides(const SLMatrix& m, Order nu, const RadialFunction& f, const RadialFunction& g,
                                       std::span<const double> points, const QuadratureSpec& spec) {
    const SLMatrix mi = m.inverse();
    const double R = convolution_radius(f, g, spec);
    // Resolution of the smaller of the two decay scales.
    const double scale = std::min(f.radius(1e-4, spec.default_truncation), g.radius(1e-4, spec.default_truncation));
    const double h = std::min(0.05, 0.02 * scale);
    const std::size_t n = std::max<std::size_t>(8, static_cast<std::size_t>(std::ceil(R / h)) + 1);
    const std::vector<double> grid = linspace(0.0, R, n);
    const SampledRadialFunction conv = convolve(mi, nu, f, g, grid, spec);
    const RadialFunction hf = conv.uniform_interpolant(mi.chirp_rates().d_over_b);

    const cplx c = normalization_constant(m, nu);
    const double p = m.chirp_rates().d_over_b;
    std::vector<double> xs(points.begin(), points.end());
    std::vector<cplx> lv(xs.size()), rv(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i) {
        lv[i] = c * forward_at(hf, m, nu, xs[i], spec);
        rv[i] = chirp(-p, xs[i]) * forward_at(f, m, nu, xs[i], spec) * forward_at(g, m, nu, xs[i], spec);
    }
    return TheoremSides{SampledRadialFunction(xs, std::move(lv)), SampledRadialFunction(xs, std::move(rv))};
}

double convolution_theorem_residual(const SLMatrix& m, Order nu, const RadialFunction& f, const RadialFunction& g,
                                    double x, const QuadratureSpec& spec) {
    const double pts[1] = {x};
    return convolution_theorem_sides(m, nu, f, g, pts, spec).max_residual();
}

}  // namespace cfb
