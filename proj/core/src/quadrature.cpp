#include "cfb/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <mutex>
#include <numbers>
#include <queue>
#include <stdexcept>
#include <tuple>

#include <Eigen/Eigenvalues>

#include "cfb/errors.hpp"

namespace cfb {

namespace {

using cplx = std::complex<double>;

constexpr double kEps = std::numeric_limits<double>::epsilon();

// 15-point Kronrod abscissae; odd indices are the 7-point Gauss nodes.
constexpr double kXgk[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.0};
constexpr double kWgk[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr double kWg[4] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
    double lo;
    double hi;
    cplx value;
    double error;
    double resabs;  // integral of |f|, used for the roundoff floor
};

Panel gk15(const ComplexFn& f, double lo, double hi) {
    const double centr = 0.5 * (lo + hi);
    const double hlgth = 0.5 * (hi - lo);
    const double dhlgth = std::abs(hlgth);

    cplx fv1[7];
    cplx fv2[7];
    const cplx fc = f(centr);
    cplx resg = fc * kWg[3];
    cplx resk = fc * kWgk[7];
    double resabs = std::abs(fc) * kWgk[7];

    for (int j = 0; j < 7; ++j) {
        const double absc = hlgth * kXgk[j];
        const cplx f1 = f(centr - absc);
        const cplx f2 = f(centr + absc);
        fv1[j] = f1;
        fv2[j] = f2;
        resk += kWgk[j] * (f1 + f2);
        resabs += kWgk[j] * (std::abs(f1) + std::abs(f2));
        if (j % 2 == 1) resg += kWg[j / 2] * (f1 + f2);
    }

    const cplx reskh = resk * 0.5;
    double resasc = kWgk[7] * std::abs(fc - reskh);
    for (int j = 0; j < 7; ++j)
        resasc += kWgk[j] * (std::abs(fv1[j] - reskh) + std::abs(fv2[j] - reskh));

    Panel p;
    p.lo = lo;
    p.hi = hi;
    p.value = resk * hlgth;
    resabs *= dhlgth;
    resasc *= dhlgth;
    double err = std::abs((resk - resg) * hlgth);
    if (resasc != 0.0 && err != 0.0) err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
    if (resabs > std::numeric_limits<double>::min() / (50.0 * kEps))
        err = std::max(50.0 * kEps * resabs, err);
    p.error = err;
    p.resabs = resabs;
    return p;
}

struct ByError {
    const std::vector<Panel>* panels;
    bool operator()(std::size_t a, std::size_t b) const {
        const Panel& pa = (*panels)[a];
        const Panel& pb = (*panels)[b];
        if (pa.error != pb.error) return pa.error < pb.error;
        return pa.lo > pb.lo;
    }
};

}  // namespace

void QuadratureSpec::validate() const {
    if (!(rel_tol > 0.0) || !(abs_tol > 0.0)) throw std::invalid_argument("quadrature tolerances must be positive");
    if (max_panels < 1) throw std::invalid_argument("max_panels must be at least 1");
    if (!(default_truncation > 0.0)) throw std::invalid_argument("default_truncation must be positive");
}

QuadResult integrate_partitioned(const ComplexFn& f, std::span<const double> breakpoints,
                                 const QuadratureSpec& spec, double max_width) {
    if (breakpoints.size() < 2) throw std::invalid_argument("need at least two breakpoints");
    for (std::size_t i = 1; i < breakpoints.size(); ++i)
        if (!(breakpoints[i] > breakpoints[i - 1]))
            throw std::invalid_argument("breakpoints must be strictly increasing");

    std::vector<Panel> panels;
    for (std::size_t i = 1; i < breakpoints.size(); ++i) {
        const double a = breakpoints[i - 1];
        const double b = breakpoints[i];
        int pieces = 1;
        if (std::isfinite(max_width) && max_width > 0.0)
            pieces = static_cast<int>(std::min(std::ceil((b - a) / max_width), 1.0e6));
        pieces = std::max(pieces, 1);
        for (int k = 0; k < pieces; ++k) {
            const double lo = a + (b - a) * k / pieces;
            const double hi = k + 1 == pieces ? b : a + (b - a) * (k + 1) / pieces;
            panels.push_back(gk15(f, lo, hi));
        }
    }
    const int budget = std::max(spec.max_panels, static_cast<int>(panels.size()) * 2);

    cplx total = 0.0;
    double total_err = 0.0;
    double total_abs = 0.0;
    for (const auto& p : panels) {
        total += p.value;
        total_err += p.error;
        total_abs += p.resabs;
    }

    auto tolerance = [&](cplx v, double absmass) {
        return std::max({spec.abs_tol, spec.rel_tol * std::abs(v), 200.0 * kEps * absmass});
    };

    std::priority_queue<std::size_t, std::vector<std::size_t>, ByError> heap(ByError{&panels});
    for (std::size_t i = 0; i < panels.size(); ++i) heap.push(i);

    while (total_err > tolerance(total, total_abs)) {
        if (heap.empty()) break;  // every remaining panel is at roundoff width
        if (static_cast<int>(panels.size()) >= budget) {
            throw NonConvergent("adaptive quadrature exceeded its panel budget", total, total_err);
        }
        const std::size_t idx = heap.top();
        heap.pop();
        const Panel worst = panels[idx];
        const double mid = 0.5 * (worst.lo + worst.hi);
        const double scale = std::max(std::abs(worst.lo), std::abs(worst.hi));
        if (!(mid > worst.lo && mid < worst.hi) || worst.hi - worst.lo < 1e3 * kEps * std::max(scale, 1e-300)) {
            continue;
        }
        Panel left = gk15(f, worst.lo, mid);
        Panel right = gk15(f, mid, worst.hi);
        total += left.value + right.value - worst.value;
        total_err += left.error + right.error - worst.error;
        total_abs += left.resabs + right.resabs - worst.resabs;
        panels[idx] = left;
        panels.push_back(right);
        heap.push(idx);
        heap.push(panels.size() - 1);

        // Running sums drift; recompute once they claim convergence.
        if (total_err <= tolerance(total, total_abs)) {
            total = 0.0;
            total_err = 0.0;
            total_abs = 0.0;
            for (const auto& p : panels) {
                total += p.value;
                total_err += p.error;
                total_abs += p.resabs;
            }
        }
    }

    // Sum in position order so the result does not depend on refinement history.
    std::vector<std::size_t> order(panels.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return panels[a].lo < panels[b].lo; });
    QuadResult r;
    r.value = 0.0;
    r.error = 0.0;
    for (std::size_t i : order) {
        r.value += panels[i].value;
        r.error += panels[i].error;
    }
    return r;
}

QuadResult integrate_finite(const ComplexFn& f, double lo, double hi, const QuadratureSpec& spec) {
    if (lo == hi) return {0.0, 0.0};
    if (!(lo < hi)) throw std::invalid_argument("integrate_finite requires lo < hi");
    const double bp[2] = {lo, hi};
    return integrate_partitioned(f, bp, spec);
}

std::complex<double> integrate_halfline_weighted(const ComplexFn& f, Order nu, const QuadratureSpec& spec,
                                                 double decay_radius, double max_width,
                                                 std::span<const double> breakpoints) {
    if (!(decay_radius > 0.0)) return 0.0;
    const double w = 2.0 * nu.value() + 1.0;
    ComplexFn integrand = [&f, w](double y) -> cplx {
        if (y <= 0.0) return 0.0;
        return f(y) * std::pow(y, w);
    };
    std::vector<double> bp{0.0};
    for (double b : breakpoints)
        if (b > bp.back() && b < decay_radius) bp.push_back(b);
    bp.push_back(decay_radius);
    return integrate_partitioned(integrand, bp, spec, max_width).value;
}

std::shared_ptr<const GaussRule> gauss_jacobi(double alpha, double beta, int n) {
    if (!(alpha > -1.0) || !(beta > -1.0)) throw std::invalid_argument("gauss_jacobi needs alpha, beta > -1");
    if (n < 1) throw std::invalid_argument("gauss_jacobi needs n >= 1");

    static std::mutex mu;
    static std::map<std::tuple<double, double, int>, std::shared_ptr<const GaussRule>> cache;
    const auto key = std::make_tuple(alpha, beta, n);
    {
        std::lock_guard<std::mutex> lock(mu);
        auto it = cache.find(key);
        if (it != cache.end()) return it->second;
    }

    const double s = alpha + beta;
    Eigen::VectorXd diag(n);
    Eigen::VectorXd sub(std::max(n - 1, 1));
    diag(0) = (beta - alpha) / (s + 2.0);
    for (int k = 1; k < n; ++k) {
        const double t = 2.0 * k + s;
        diag(k) = (beta * beta - alpha * alpha) / (t * (t + 2.0));
    }
    for (int k = 1; k < n; ++k) {
        const double t = 2.0 * k + s;
        double b2;
        if (k == 1) {
            b2 = 4.0 * (1.0 + alpha) * (1.0 + beta) / ((2.0 + s) * (2.0 + s) * (3.0 + s));
        } else {
            b2 = 4.0 * k * (k + alpha) * (k + beta) * (k + s) / (t * t * (t + 1.0) * (t - 1.0));
        }
        sub(k - 1) = std::sqrt(b2);
    }

    std::vector<double> x(n);
    if (n == 1) {
        x[0] = diag(0);
    } else {
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
        es.computeFromTridiagonal(diag, sub.head(n - 1), Eigen::EigenvaluesOnly);
        for (int i = 0; i < n; ++i) x[i] = es.eigenvalues()(i);
    }

    // P_n^{(alpha,beta)}(z) and P_{n-1} by the three-term recurrence, in
    // extended precision: near the endpoints the recurrence loses several
    // digits when alpha or beta is close to -1.
    using ld = long double;
    const ld A = alpha, B = beta, S = s;
    auto jacobi = [&](ld z, ld& pn, ld& pn1) {
        ld p0 = 1.0L;
        ld p1 = (A + 1.0L) + (S + 2.0L) * (z - 1.0L) / 2.0L;
        for (int k = 2; k <= n; ++k) {
            const ld t = 2.0L * k + S;
            const ld a1 = 2.0L * k * (k + S) * (t - 2.0L);
            const ld a2 = (t - 1.0L) * (A * A - B * B);
            const ld a3 = (t - 2.0L) * (t - 1.0L) * t;
            const ld a4 = 2.0L * (k + A - 1.0L) * (k + B - 1.0L) * t;
            const ld p2 = ((a2 + a3 * z) * p1 - a4 * p0) / a1;
            p0 = p1;
            p1 = p2;
        }
        pn = p1;
        pn1 = p0;
    };
    // (1 - z^2) P_n'(z)
    auto deriv_scaled = [&](ld z, ld pn, ld pn1) {
        const ld t = 2.0L * n + S;
        return (n * ((A - B) - t * z) * pn + 2.0L * (n + A) * (n + B) * pn1) / t;
    };

    auto rule = std::make_shared<GaussRule>();
    rule->nodes.resize(n);
    rule->weights.resize(n);
    // Shapes from 1/((1-x^2) P_n'^2), scaled to the exact zeroth moment; the
    // closed-form constant loses digits to log-gamma cancellation at large n.
    ld total = 0.0L;
    std::vector<ld> w(n);
    for (int i = 0; i < n; ++i) {
        ld z = x[i];
        for (int it = 0; it < 4; ++it) {
            ld pn, pn1;
            jacobi(z, pn, pn1);
            const ld step = pn * (1.0L - z) * (1.0L + z) / deriv_scaled(z, pn, pn1);
            const ld zn = z - step;
            if (!(zn > -1.0L && zn < 1.0L)) break;
            z = zn;
            if (std::abs(step) < 1e-19L) break;
        }
        ld pn, pn1;
        jacobi(z, pn, pn1);
        const ld d = deriv_scaled(z, pn, pn1);
        rule->nodes[i] = static_cast<double>(z);
        w[i] = (1.0L - z) * (1.0L + z) / (d * d);
        total += w[i];
    }
    const double mass =
        std::exp((s + 1.0) * std::log(2.0) + log_gamma(alpha + 1.0) + log_gamma(beta + 1.0) - log_gamma(s + 2.0));
    for (int i = 0; i < n; ++i) rule->weights[i] = static_cast<double>(w[i] * (mass / total));

    std::lock_guard<std::mutex> lock(mu);
    auto [it, inserted] = cache.emplace(key, rule);
    return it->second;
}

std::complex<double> cos_theta_integral(const ComplexFn& h, Order nu, const QuadratureSpec& spec) {
    const double a = nu.value() - 0.5;
    cplx prev = 0.0;
    bool have_prev = false;
    for (int n = 16; n <= 1024; n *= 2) {
        const auto rule = gauss_jacobi(a, a, n);
        cplx sum = 0.0;
        for (int i = 0; i < n; ++i) sum += rule->weights[i] * h(rule->nodes[i]);
        if (have_prev && std::abs(sum - prev) <= std::max(spec.abs_tol, spec.rel_tol * std::abs(sum))) return sum;
        prev = sum;
        have_prev = true;
    }
    const double p = 2.0 * nu.value();
    ComplexFn g = [&h, p](double th) -> cplx {
        const double sn = std::sin(th);
        if (sn <= 0.0) return 0.0;
        return h(std::cos(th)) * std::pow(sn, p);
    };
    return integrate_finite(g, 0.0, std::numbers::pi, spec).value;
}

std::complex<double> theta_integral(const ComplexFn& g, Order nu, const QuadratureSpec& spec) {
    ComplexFn h = [&g](double u) { return g(std::acos(std::clamp(u, -1.0, 1.0))); };
    return cos_theta_integral(h, nu, spec);
}

NormParams::NormParams(double p_, Order nu_) : p(p_), nu(nu_) {
    if (!(p_ >= 1.0)) throw std::invalid_argument("norm exponent must satisfy p >= 1");
}

double truncation_radius(const RadialFunction& f, const QuadratureSpec& spec) {
    return f.radius(spec.abs_tol * 1e-3, spec.default_truncation);
}

double lp_norm(const RadialFunction& f, const NormParams& params, const QuadratureSpec& spec) {
    const double R = truncation_radius(f, spec);
    if (std::isinf(params.p)) {
        constexpr int kSamples = 4001;
        double m = 0.0;
        for (int i = 0; i < kSamples; ++i) m = std::max(m, std::abs(f(R * i / (kSamples - 1))));
        return m;
    }
    const double p = params.p;
    ComplexFn g = [&f, p](double y) -> cplx {
        const double v = std::abs(f(y));
        return p == 1.0 ? v : (p == 2.0 ? v * v : std::pow(v, p));
    };
    const double I = integrate_halfline_weighted(g, params.nu, spec, R).real();
    return std::pow(std::max(I, 0.0), 1.0 / p);
}

}  // namespace cfb
