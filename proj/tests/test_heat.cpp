#include <doctest.h>

#include <boost/math/special_functions/bessel.hpp>
#include <boost/math/special_functions/gamma.hpp>
#include <cmath>
#include <complex>
#include <numbers>
#include <random>

#include "cfb/catalog.hpp"
#include "cfb/heat.hpp"
#include "cfb/transform.hpp"
#include "cfb/translation.hpp"

using cfb::HeatConfig;
using cfb::Order;
using cfb::SLMatrix;
using cplx = std::complex<double>;

namespace {

// Chirp-free kernel through Boost's I_nu.
double classical_oracle(double nu, double sigma, double t, double x, double y) {
    const double st = sigma * t;
    const double N = 2.0 / (boost::math::tgamma(nu + 1.0) * std::pow(4.0 * st, nu + 1.0));
    const double u = x * y / (2.0 * st);
    const double j = u == 0.0 ? 1.0 : boost::math::tgamma(nu + 1.0) * std::pow(2.0 / u, nu) * boost::math::cyl_bessel_i(nu, u);
    return N * std::exp(-(x * x + y * y) / (4.0 * st)) * j;
}

}  // namespace

TEST_CASE("heat config validation") {
    CHECK_THROWS_AS(HeatConfig({0.0, 1.0}).validate(), std::invalid_argument);
    CHECK_THROWS_AS(HeatConfig({1.0, -1.0}).validate(), std::invalid_argument);
    CHECK_THROWS_AS(HeatConfig({1.0, std::nan("")}).validate(), std::invalid_argument);
    CHECK_NOTHROW(HeatConfig({0.5, 2.0}).validate());
}

TEST_CASE("P_t: value at the origin, unit mass and transform factorization") {
    const cfb::QuadratureSpec spec;
    const auto m = SLMatrix::rotation(std::numbers::pi / 4);
    for (double nu : {-0.25, 0.0, 1.3}) {
        const HeatConfig cfg{0.7, 0.4};
        const double N = 2.0 / (std::tgamma(nu + 1.0) * std::pow(4.0 * 0.7 * 0.4, nu + 1.0));
        CHECK(std::abs(cfb::p_kernel(m, Order(nu), cfg, 0.0) - N) <= 1e-13 * N);
        const auto P = cfb::p_kernel_function(m, Order(nu), cfg);
        CHECK(cfb::lp_norm(P, cfb::NormParams(1.0, Order(nu)), spec) == doctest::Approx(1.0).epsilon(1e-10));
        const double d_b = m.chirp_rates().d_over_b, b = m.b();
        for (double x : {0.0, 0.8, 2.1}) {
            const cplx got = cfb::forward_at(P, m, Order(nu), x, spec);
            const cplx ref = cfb::normalization_constant(m, Order(nu)) * std::polar(1.0, 0.5 * d_b * x * x) *
                             std::exp(-0.7 * 0.4 * x * x / (b * b));
            CHECK(std::abs(got - ref) <= 1e-10);
        }
    }
}

TEST_CASE("heat kernel closed form, bound and translation route") {
    const cfb::QuadratureSpec spec;
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> U(0.0, 1.0);
    for (int k = 0; k < 30; ++k) {
        const double nu = -0.4 + 2.4 * U(rng);
        const auto m = SLMatrix::rotation(0.2 + 1.3 * U(rng));
        const HeatConfig cfg{0.2 + U(rng), 0.05 + U(rng)};
        const double x = 3.0 * U(rng), y = 3.0 * U(rng);
        const cplx G = cfb::heat_kernel(m, Order(nu), cfg, x, y);
        const double ref = classical_oracle(nu, cfg.sigma, cfg.t, x, y);
        CHECK(std::abs(std::abs(G) - ref) <= 1e-12 * (1.0 + ref));
        CHECK(std::abs(G) <= cfb::heat_kernel_bound(Order(nu), cfg, x, y) + 1e-12);
        const auto P = cfb::p_kernel_function(m, Order(nu), cfg);
        const cplx T = cfb::translate(m.inverse(), Order(nu), P, x, y, spec);
        CHECK(std::abs(T - G) <= 1e-9 * (1.0 + std::abs(G)));
    }
    const auto m = SLMatrix::rotation(0.6);
    const HeatConfig cfg{0.5, 0.3};
    CHECK(std::abs(cfb::heat_kernel(m, Order(0.4), cfg, 1.2, 0.0) - cfb::p_kernel(m, Order(0.4), cfg, 1.2)) <= 1e-14);
    // Large sigma t: G(1,1) -> prefactor e^{-i (a/b)}.
    const HeatConfig wide{1.0, 1e6};
    const cplx g = cfb::heat_kernel(m, Order(0.4), wide, 1.0, 1.0);
    const double N = cfb::heat_prefactor(Order(0.4), wide);
    CHECK(std::abs(g / N - std::polar(1.0, -m.chirp_rates().a_over_b)) <= 1e-6);
}

TEST_CASE("no overflow for tiny sigma t") {
    const auto m = SLMatrix::rotation(1.0);
    const HeatConfig cfg{1.0, 1e-4};
    const cplx g = cfb::heat_kernel(m, Order(0.5), cfg, 5.0, 5.0);
    CHECK(std::isfinite(std::abs(g)));
    CHECK(std::abs(g) > 0.0);
}

TEST_CASE("heat kernel normalization") {
    const cfb::QuadratureSpec spec;
    const auto m = SLMatrix::rotation(0.9);
    for (double nu : {-0.3, 0.5, 1.8}) {
        CHECK(cfb::heat_normalization_residual(m, Order(nu), {1.0, 0.5}, 0.0, spec) <= 1e-10);
        CHECK(cfb::heat_normalization_residual(m, Order(nu), {1.0, 0.1}, 2.0, spec) <= 1e-8);
        CHECK(cfb::heat_normalization_residual(m, Order(nu), {1.0, 0.01}, 5.0, spec) <= 1e-7);
    }
}

TEST_CASE("heat semigroup") {
    const cfb::QuadratureSpec spec;
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> U(0.0, 1.0);
    CHECK(cfb::semigroup_residual(SLMatrix::rotation(0.5), Order(0.2), 1.0, 0.3, 0.3, 0.0, 0.0, spec) <= 1e-9);
    CHECK(cfb::semigroup_residual(SLMatrix::rotation(0.5), Order(0.2), 1.0, 0.3, 0.3, 1.0, 1.0, spec) <= 1e-9);
    for (int k = 0; k < 10; ++k) {
        const double nu = -0.4 + 2.4 * U(rng);
        const auto m = SLMatrix::rotation(0.2 + 1.3 * U(rng));
        const double sigma = 0.3 + U(rng), t = 0.05 + 0.5 * U(rng), s = 0.05 + 0.5 * U(rng);
        const double x = 2.0 * U(rng), y = 2.0 * U(rng);
        CHECK(cfb::semigroup_residual(m, Order(nu), sigma, t, s, x, y, spec) <= 1e-7);
    }
}

TEST_CASE("heat kernel x-derivatives match finite differences") {
    const auto m = SLMatrix::rotation(0.7);
    const auto G = cfb::heat_kernel_function(m, Order(0.8), {0.6, 0.3}, 0.9);
    const double h = 1e-5;
    for (double x : {0.2, 0.9, 1.7}) {
        CHECK(std::abs(G(x) - cfb::heat_kernel(m, Order(0.8), {0.6, 0.3}, x, 0.9)) <= 1e-14);
        CHECK(std::abs((G(x + h) - G(x - h)) / (2 * h) - G.deriv1(x)) <= 1e-7);
        CHECK(std::abs((G.deriv1(x + h) - G.deriv1(x - h)) / (2 * h) - G.deriv2(x)) <= 1e-6);
    }
}

TEST_CASE("heat equation residual and centered time difference") {
    const auto m = SLMatrix::rotation(std::numbers::pi / 4);
    const HeatConfig cfg{1.0, 0.2};
    CHECK(cfb::pde_residual(m, Order(0.8), cfg, 1.0, 0.5) <= 1e-10);
    for (double nu : {-0.3, 0.0, 2.0}) {
        CHECK(cfb::pde_residual(m, Order(nu), cfg, 0.7, 0.0) <= 1e-10);
        CHECK(cfb::pde_residual(m, Order(nu), cfg, 0.0, 0.6) <= 1e-10);
        CHECK(cfb::pde_residual(m, Order(nu), {0.5, 0.05}, 2.0, 1.5) <= 1e-10);
    }
    const double e1 = cfb::time_difference_error(m, Order(0.8), cfg, 1.0, 0.5, 0.02);
    const double e2 = cfb::time_difference_error(m, Order(0.8), cfg, 1.0, 0.5, 0.01);
    CHECK(std::log2(e1 / e2) == doctest::Approx(2.0).epsilon(0.05));
}

TEST_CASE("evolution of the matched chirped Gaussian") {
    const cfb::QuadratureSpec spec;
    const auto m = SLMatrix::rotation(std::numbers::pi / 3);
    const double sigma = 0.8;
    const auto f = cfb::gaussian_initial_datum(m, sigma);
    for (double nu : {-0.25, 0.5, 1.7})
        for (double t : {0.1, 0.5, 1.0, 2.0})
            for (double x : {0.0, 1.0, 2.5, 4.0}) {
                const cplx u = cfb::evolve_at(m, Order(nu), sigma, f, t, x, spec);
                const cplx ref = cfb::gaussian_solution(m, Order(nu), sigma, t, x);
                CHECK(std::abs(u - ref) <= 1e-7 * std::abs(ref));
            }
    CHECK(cfb::evolve_at(m, Order(0.3), sigma, cfb::zero_function(), 0.5, 1.0, spec) == cplx(0.0));
}

TEST_CASE("smoothing bound and budget agreement") {
    const cfb::QuadratureSpec spec;
    cfb::QuadratureSpec loose = spec;
    loose.rel_tol = 1e-8;
    loose.abs_tol = 1e-11;
    const auto m = SLMatrix::rotation(1.1);
    const double nu = 0.6, sigma = 0.5, t = 0.2;
    const auto f = cfb::bump(1.5);
    const double l1 = cfb::lp_norm(f, cfb::NormParams(1.0, Order(nu)), spec);
    const double bound = cfb::heat_prefactor(Order(nu), {sigma, t}) * l1;
    for (double x : {0.0, 0.5, 1.2, 2.0}) {
        const cplx a = cfb::evolve_at(m, Order(nu), sigma, f, t, x, spec);
        const cplx b = cfb::evolve_at(m, Order(nu), sigma, f, t, x, loose);
        CHECK(std::abs(a) <= bound * (1.0 + 1e-9));
        CHECK(std::abs(a - b) <= 1e-7);
    }
}

TEST_CASE("Gaussian-Bessel integral") {
    const cfb::QuadratureSpec spec;
    // Elementary oracle at nu = 1/2: int e^{-x^2} sin^2 x dx = sqrt(pi)/4 (1 - e^{-1}).
    const cplx c = cfb::gaussian_bessel_closed_form(Order(0.5), 1.0, 0.5, 0.5);
    CHECK(std::abs(c - std::sqrt(std::numbers::pi) / 4.0 * (1.0 - std::exp(-1.0))) <= 1e-14);
    for (double nu : {-0.3, 0.5, 0.8, 2.0})
        for (cplx delta : {cplx(1.0), cplx(1.0, 0.5), cplx(0.3, 2.0)})
            for (auto [r, s] : {std::pair{0.7, 0.3}, std::pair{0.0, 0.9}, std::pair{1.0, 1.0}})
                CHECK(cfb::weber_schafheitlin_residual(Order(nu), delta, r, s, spec) <= 1e-8);
    // s = 0 is the Gaussian integral.
    const cplx g = cfb::gaussian_bessel_closed_form(Order(1.0), cplx(2.0), 0.0, 0.0);
    CHECK(std::abs(g - 1.0 / 8.0) <= 1e-15);
    CHECK_THROWS_AS(cfb::weber_schafheitlin_residual(Order(0.0), cplx(-1.0, 1.0), 0.5, 0.5, spec), std::domain_error);
}

TEST_CASE("short-time expansion") {
    const cfb::QuadratureSpec spec;
    const auto m = SLMatrix::rotation(std::numbers::pi / 3);
    const double sigma = 0.8, nu = 0.5, x = 0.7;
    const auto f = cfb::gaussian_initial_datum(m, sigma);
    const auto terms = cfb::short_time_terms(m, Order(nu), sigma, f, x, 1, spec);
    // Leading error of the n = 0 truncation is t sigma Delta f.
    const double t0 = 1e-3;
    const double e0 = cfb::short_time_expansion_error(m, Order(nu), sigma, f, x, t0,
                                                      std::span(terms.data(), 1), spec);
    CHECK(e0 == doctest::Approx(t0 * std::abs(terms[1])).epsilon(0.1));
    const double ta = std::pow(2.0, -4), tb = std::pow(2.0, -9);
    const double ea = cfb::short_time_expansion_error(m, Order(nu), sigma, f, x, ta, terms, spec);
    const double eb = cfb::short_time_expansion_error(m, Order(nu), sigma, f, x, tb, terms, spec);
    const double slope = std::log(ea / eb) / std::log(ta / tb);
    CHECK(slope >= 1.8);
    CHECK(slope <= 2.2);
}

TEST_CASE("evolution recovers the datum as t -> 0") {
    const cfb::QuadratureSpec spec;
    const auto m = SLMatrix::rotation(0.8);
    const double nu = 0.3, sigma = 1.0;
    const auto f = cfb::damped_cosine(1.0, 1.5);
    double prev = std::numeric_limits<double>::infinity();
    for (double t : {1e-1, 1e-2, 1e-3, 1e-4}) {
        cfb::RadialFunction diff;
        diff.value = [&, t](double x) { return cfb::evolve_at(m, Order(nu), sigma, f, t, x, spec) - f(x); };
        diff.decay_radius = f.decay_radius;
        const double n2 = cfb::lp_norm(diff, cfb::NormParams(2.0, Order(nu)), spec);
        CHECK(n2 < prev);
        prev = n2;
    }
    CHECK(prev <= 1e-3);
}
