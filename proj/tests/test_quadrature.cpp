#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>

#include "cfb/errors.hpp"
#include "cfb/quadrature.hpp"

using cfb::Order;
using cplx = std::complex<double>;

namespace {

double cos_moment(int n, double nu) {
    if (n % 2) return 0.0;
    return std::exp(std::lgamma((n + 1) / 2.0) + std::lgamma(nu + 0.5) - std::lgamma(n / 2.0 + nu + 1.0));
}

cfb::RadialFunction gaussian(double beta) {
    cfb::RadialFunction f;
    f.value = [beta](double y) { return cplx(std::exp(-beta * y * y)); };
    f.decay_radius = [beta](double eps) { return std::sqrt(-std::log(eps) / beta) + 2.0; };
    return f;
}

cfb::RadialFunction box(double R) {
    cfb::RadialFunction f;
    f.value = [R](double y) { return cplx(y <= R ? 1.0 : 0.0); };
    f.decay_radius = [R](double) { return R; };
    f.smooth = false;
    return f;
}

}  // namespace

TEST_CASE("integrate_finite basics") {
    cfb::QuadratureSpec spec;
    auto r = cfb::integrate_finite([](double x) { return cplx(x); }, 0.0, 1.0, spec);
    CHECK(std::abs(r.value - 0.5) < 1e-15);
    r = cfb::integrate_finite([](double t) { return std::polar(1.0, t); }, 0.0, std::numbers::pi, spec);
    CHECK(std::abs(r.value - cplx(0.0, 2.0)) < 1e-14);
    CHECK(r.error <= std::max(spec.abs_tol, spec.rel_tol * 2.0));
}

TEST_CASE("integrate_finite on a chirp matches a composite Simpson oracle") {
    auto f = [](double x) { return std::polar(1.0, 50.0 * x * x); };
    const int n = 1000000;
    cplx s = f(0.0) + f(1.0);
    for (int i = 1; i < n; ++i) s += (i % 2 ? 4.0 : 2.0) * f(static_cast<double>(i) / n);
    s /= 3.0 * n;
    cfb::QuadratureSpec spec;
    const auto r = cfb::integrate_finite(f, 0.0, 1.0, spec);
    CHECK(std::abs(r.value - s) <= 1e-9);
}

TEST_CASE("integrate_finite is deterministic and reports budget exhaustion") {
    cfb::QuadratureSpec spec;
    auto f = [](double x) { return cplx(std::cos(30 * x) * std::exp(-x), std::sqrt(x)); };
    const auto a = cfb::integrate_finite(f, 0.0, 5.0, spec);
    const auto b = cfb::integrate_finite(f, 0.0, 5.0, spec);
    CHECK(a.value == b.value);
    CHECK(a.error == b.error);

    cfb::QuadratureSpec tight;
    tight.max_panels = 3;
    CHECK_THROWS_AS(cfb::integrate_finite([](double x) { return std::polar(1.0, 2000.0 * x * x); }, 0.0, 1.0, tight),
                    cfb::NonConvergent);
}

TEST_CASE("QuadratureSpec validation") {
    cfb::QuadratureSpec s;
    CHECK_NOTHROW(s.validate());
    s.rel_tol = 0.0;
    CHECK_THROWS_AS(s.validate(), std::invalid_argument);
    s = cfb::QuadratureSpec{};
    s.max_panels = 0;
    CHECK_THROWS_AS(s.validate(), std::invalid_argument);
}

TEST_CASE("half-line weighted integrals") {
    cfb::QuadratureSpec spec;
    for (double nu : {-0.25, 0.0, 0.5, 1.7}) {
        const auto g = gaussian(1.0);
        const double R = cfb::truncation_radius(g, spec);
        const auto v = cfb::integrate_halfline_weighted(g.value, Order(nu), spec, R);
        CHECK(std::abs(v - std::tgamma(nu + 1) / 2) <= 1e-12);
        // Tail control: doubling the truncation radius changes nothing beyond abs_tol.
        const auto v2 = cfb::integrate_halfline_weighted(g.value, Order(nu), spec, 2 * R);
        CHECK(std::abs(v - v2) <= spec.abs_tol);

        const auto b = box(1.0);
        const auto vb = cfb::integrate_halfline_weighted(b.value, Order(nu), spec, 1.0);
        CHECK(std::abs(vb - 1.0 / (2 * nu + 2)) <= 1e-12);
    }
    CHECK(cfb::integrate_halfline_weighted([](double) { return cplx(0.0); }, Order(0.3), spec, 10.0) == cplx(0.0));
}

TEST_CASE("Gauss-Jacobi rules integrate polynomials exactly") {
    for (auto [a, b] : {std::pair{-0.5, -0.5}, {0.0, 0.0}, {-0.75, -0.75}, {1.2, 1.2}, {0.0, 1.5}, {-0.3, 0.8}}) {
        const auto rule = cfb::gauss_jacobi(a, b, 12);
        double sum = 0.0;
        for (double w : rule->weights) sum += w;
        const double mass = std::exp((a + b + 1) * std::log(2.0) + std::lgamma(a + 1) + std::lgamma(b + 1) -
                                     std::lgamma(a + b + 2));
        CHECK(sum == doctest::Approx(mass).epsilon(1e-14));
        // First moment of (1-u)^a (1+u)^b is mass * (b - a) / (a + b + 2).
        double m1 = 0.0;
        for (std::size_t i = 0; i < rule->nodes.size(); ++i) m1 += rule->weights[i] * rule->nodes[i];
        CHECK(m1 == doctest::Approx(mass * (b - a) / (a + b + 2)).epsilon(1e-13).scale(1.0));
    }
    const auto big = cfb::gauss_jacobi(0.2, 0.2, 1024);
    double sum = 0.0;
    for (double w : big->weights) sum += w;
    CHECK(sum == doctest::Approx(std::exp(1.4 * std::log(2.0) + 2 * std::lgamma(1.2) - std::lgamma(2.4))).epsilon(1e-13));
    CHECK(cfb::gauss_jacobi(0.2, 0.2, 1024) == big);
}

TEST_CASE("theta integral reproduces the cosine-moment table") {
    cfb::QuadratureSpec spec;
    double worst = 0.0;
    for (double nu : {-0.25, 0.0, 0.5, 1.7})
        for (int n = 0; n <= 8; ++n) {
            const auto v = cfb::theta_integral([n](double t) { return cplx(std::pow(std::cos(t), n)); }, Order(nu), spec);
            const double ref = cos_moment(n, nu);
            const double err = n % 2 ? std::abs(v) : std::abs(v - ref) / ref;
            worst = std::max(worst, err);
        }
    CHECK(worst <= 1e-12);
    const auto v = cfb::theta_integral([](double) { return cplx(1.0); }, Order(0.5), spec);
    CHECK(std::abs(v - 2.0) < 1e-14);
}

TEST_CASE("theta integral falls back to adaptive quadrature for jumps") {
    cfb::QuadratureSpec spec;
    // int_0^{pi/3} sin theta dtheta = 1/2 for nu = 1/2.
    const auto v = cfb::theta_integral([](double t) { return cplx(t <= std::numbers::pi / 3 ? 1.0 : 0.0); },
                                       Order(0.5), spec);
    CHECK(std::abs(v - 0.5) <= 1e-9);
}

TEST_CASE("weighted Lp norms") {
    cfb::QuadratureSpec spec;
    for (double nu : {-0.25, 0.0, 1.7}) {
        const Order o(nu);
        CHECK(cfb::lp_norm(gaussian(1.0), cfb::NormParams(1.0, o), spec) ==
              doctest::Approx(std::tgamma(nu + 1) / 2).epsilon(1e-11));
        CHECK(cfb::lp_norm(box(1.0), cfb::NormParams(2.0, o), spec) ==
              doctest::Approx(std::sqrt(1.0 / (2 * nu + 2))).epsilon(1e-11));
        CHECK(cfb::lp_norm(gaussian(1.0), cfb::NormParams(INFINITY, o), spec) == 1.0);
    }
    cfb::RadialFunction zero;
    zero.value = [](double) { return cplx(0.0); };
    zero.decay_radius = [](double) { return 1.0; };
    CHECK(cfb::lp_norm(zero, cfb::NormParams(2.0, Order(0.0)), spec) == 0.0);
    CHECK_THROWS_AS(cfb::NormParams(0.5, Order(0.0)), std::invalid_argument);
}
