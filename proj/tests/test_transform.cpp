#include <doctest.h>

#include <boost/math/special_functions/bessel.hpp>
#include <boost/math/special_functions/gamma.hpp>
#include <cmath>
#include <complex>
#include <numbers>

#include "cfb/catalog.hpp"
#include "cfb/errors.hpp"
#include "cfb/transform.hpp"

using cfb::Order;
using cfb::SLMatrix;
using cplx = std::complex<double>;

TEST_CASE("SL(2) matrices: construction, inverse, rotation, parsing") {
    const SLMatrix m(2.0, 1.0, 1.0, 1.0);
    CHECK(m.inverse().inverse() == m);
    const auto inv = m.inverse();
    CHECK(inv.a() == 1.0);
    CHECK(inv.b() == -1.0);
    CHECK(inv.c() == -1.0);
    CHECK(inv.d() == 2.0);
    CHECK(m.chirp_rates().d_over_b == 1.0);
    CHECK(m.chirp_rates().a_over_b == 2.0);
    CHECK(inv.chirp_rates().d_over_b == -m.chirp_rates().a_over_b);

    CHECK_THROWS_AS(SLMatrix(1.0, 1.0, 1.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(SLMatrix(1.0, 0.0, 0.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(SLMatrix::rotation(0.0), std::invalid_argument);
    CHECK_THROWS_AS(SLMatrix::rotation(std::numbers::pi), std::invalid_argument);

    const auto r = SLMatrix::rotation(std::numbers::pi / 3);
    CHECK(r.a() * r.d() - r.b() * r.c() == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(SLMatrix::hankel() == SLMatrix(0.0, 1.0, -1.0, 0.0));
    CHECK(SLMatrix::parse("2,1,1,1") == m);
    CHECK_THROWS_AS(SLMatrix::parse("2,1,1"), std::invalid_argument);
    CHECK_THROWS_AS(SLMatrix::parse("2,1,1,x"), std::invalid_argument);
}

TEST_CASE("function specs parse, validate and round-trip") {
    const auto s = cfb::parse_function("damped_cosine:beta=0.5,omega=3");
    CHECK(s.shape == cfb::Shape::damped_cosine);
    CHECK(s.param("beta") == 0.5);
    CHECK(s.param("omega") == 3.0);
    CHECK(cfb::parse_function(s.to_string()).params == s.params);

    CHECK(cfb::parse_function("gaussian").param("beta") == 1.0);
    CHECK(cfb::parse_function("chirped_gaussian:beta=2").param("chirp") == 0.0);

    CHECK_THROWS_AS(cfb::parse_function("lorentzian"), cfb::ParseError);
    CHECK_THROWS_AS(cfb::parse_function("gaussian:gamma=1"), cfb::ParseError);
    CHECK_THROWS_AS(cfb::parse_function("gaussian:beta="), cfb::ParseError);
    CHECK_THROWS_AS(cfb::make_function(cfb::parse_function("gaussian:beta=-1")), cfb::ValidationError);
    CHECK_THROWS_AS(cfb::make_function(cfb::parse_function("bump:R=0")), cfb::ValidationError);
}

TEST_CASE("catalog functions: values, analytic derivatives, decay radii") {
    const auto f = cfb::damped_cosine(0.7, 2.0);
    const double h = 1e-4;
    for (double y : {0.3, 1.1, 2.4}) {
        CHECK(std::abs(f(y) - std::exp(-0.7 * y * y) * std::cos(2.0 * y)) < 1e-15);
        const cplx fd1 = (f(y + h) - f(y - h)) / (2 * h);
        const cplx fd2 = (f(y + h) - 2.0 * f(y) + f(y - h)) / (h * h);
        CHECK(std::abs(f.deriv1(y) - fd1) < 1e-7);
        CHECK(std::abs(f.deriv2(y) - fd2) < 1e-5);
    }
    for (const auto& g : {cfb::gaussian(0.4), cfb::chirped_gaussian(1.0, 0.7), cfb::bump(2.0), cfb::box(1.5)}) {
        const double R = g.decay_radius(1e-10);
        CHECK(std::abs(g(std::nextafter(R, 2 * R))) <= 1e-10);
        CHECK(std::abs(g(1.3 * R + 0.1)) <= 1e-10);
    }
    CHECK(cfb::box(1.5)(1.5) == cplx(1.0));
    CHECK(cfb::box(1.5)(1.5000001) == cplx(0.0));
    CHECK_FALSE(cfb::box(1.0).smooth);
    CHECK(cfb::bump(2.0)(2.0) == cplx(0.0));
}

TEST_CASE("kernel matches a Boost Bessel oracle") {
    const SLMatrix m(1.2, -0.7, (1.2 * 0.4 - 1.0) / -0.7, 0.4);
    for (double nu : {-0.25, 0.0, 0.5, 1.7, 3.2})
        for (double x : {0.0, 0.4, 2.0, 7.5})
            for (double y : {0.1, 1.3, 5.0}) {
                const double z = x * y / m.b();
                const double j = z == 0.0 ? 1.0
                                          : boost::math::tgamma(nu + 1.0) * std::pow(2.0 / std::abs(z), nu) *
                                                boost::math::cyl_bessel_j(nu, std::abs(z));
                const cplx expect = std::polar(j, 0.5 * (m.d() / m.b() * x * x + m.a() / m.b() * y * y));
                CHECK(std::abs(cfb::kernel(m, Order(nu), x, y) - expect) < 1e-13 * std::max(1.0, std::abs(expect)));
            }
}

TEST_CASE("normalization constant uses the principal branch") {
    for (double b : {0.5, -0.5, 2.0})
        for (double nu : {-0.25, 1.5}) {
            const SLMatrix m(0.0, b, -1.0 / b, 0.0);
            const double cnu = 1.0 / (std::pow(2.0, nu) * boost::math::tgamma(nu + 1.0));
            const cplx ib_pow = std::polar(std::pow(std::abs(b), nu + 1.0), (nu + 1.0) * std::copysign(0.5, b) *
                                                                                std::numbers::pi);
            CHECK(std::abs(cfb::normalization_constant(m, Order(nu)) - cnu / ib_pow) < 1e-14);
        }
}

TEST_CASE("Hankel transform of the standard Gaussian is self-dual up to a phase") {
    const cfb::QuadratureSpec spec;
    const auto f = cfb::gaussian(0.5);
    for (double nu : {-0.25, 0.0, 1.7})
        for (double x : {0.0, 0.8, 2.5}) {
            const cplx expect = std::polar(std::exp(-0.5 * x * x), -0.5 * std::numbers::pi * (nu + 1.0));
            CHECK(std::abs(cfb::forward_at(f, SLMatrix::hankel(), Order(nu), x, spec) - expect) < 1e-11);
        }
}

TEST_CASE("Plancherel: the transform is an isometry of the weighted L^2") {
    const cfb::QuadratureSpec spec;
    const SLMatrix m = SLMatrix::rotation(1.0);
    for (double nu : {-0.25, 0.5, 1.7})
        for (const auto& f : {cfb::gaussian(0.3), cfb::damped_cosine(1.0, 2.0), cfb::bump(2.0)}) {
            const cfb::NormParams p2(2.0, Order(nu));
            const double lhs = cfb::lp_norm(cfb::transform_function(f, m, Order(nu), spec), p2, spec);
            const double rhs = cfb::lp_norm(f, p2, spec);
            CHECK(lhs == doctest::Approx(rhs).epsilon(1e-7));
        }
}

TEST_CASE("inverse undoes forward") {
    const cfb::QuadratureSpec spec;
    const SLMatrix m(0.8, 1.1, (0.8 * -0.3 - 1.0) / 1.1, -0.3);
    const auto f = cfb::chirped_gaussian(1.0, 0.7);
    const auto g = cfb::transform_function(f, m, Order(0.5), spec);
    const auto pts = cfb::linspace(0.0, 3.0, 13);
    const auto back = cfb::inverse(g, m, Order(0.5), pts, spec);
    for (std::size_t i = 0; i < pts.size(); ++i) CHECK(std::abs(back.values()[i] - f(pts[i])) < 1e-7);
}

TEST_CASE("apply_delta: chirp-free reduction, the x = 0 limit, and missing derivatives") {
    const auto f = cfb::gaussian(0.6);
    const Order nu(1.3);
    for (double x : {0.5, 1.4}) {
        const cplx expect = f.deriv2(x) + (2 * 1.3 + 1) / x * f.deriv1(x);
        CHECK(cfb::apply_delta(SLMatrix::hankel(), nu, f, x) == expect);
    }
    const SLMatrix m = SLMatrix::rotation(0.9);
    const cplx at0 = cfb::apply_delta(m, nu, f, 0.0);
    const cplx near0 = cfb::apply_delta(m, nu, f, 1e-5);
    CHECK(std::abs(at0 - near0) < 1e-6);

    cfb::RadialFunction bare;
    bare.value = [](double y) { return cplx(std::exp(-y * y)); };
    CHECK_THROWS_AS(cfb::apply_delta(m, nu, bare, 1.0), cfb::MissingDerivatives);
}

TEST_CASE("operational identity and its smoothness requirement") {
    const cfb::QuadratureSpec spec;
    const SLMatrix m = SLMatrix::rotation(0.7);
    for (double x : {0.3, 1.5}) CHECK(cfb::operational_identity_residual(m, Order(0.5), cfb::gaussian(0.5), x, spec) < 1e-6);
    CHECK_THROWS_AS(cfb::operational_identity_residual(m, Order(0.5), cfb::box(1.0), 1.0, spec), cfb::MissingSmoothness);
}

TEST_CASE("spectral Delta power agrees with the analytic operator") {
    const cfb::QuadratureSpec spec;
    const SLMatrix m = SLMatrix::rotation(0.8);
    const auto f = cfb::chirped_gaussian(0.5, -m.inverse().chirp_rates().a_over_b);
    const auto pts = cfb::linspace(0.2, 2.0, 5);
    const auto s = cfb::apply_delta_power_spectral(m, Order(0.5), f, 1, pts, spec);
    for (std::size_t i = 0; i < pts.size(); ++i) {
        const cplx direct = cfb::apply_delta(m.inverse(), Order(0.5), f, pts[i]);
        CHECK(std::abs(s.values()[i] - direct) < 1e-6 * std::max(1.0, std::abs(direct)));
    }
}
