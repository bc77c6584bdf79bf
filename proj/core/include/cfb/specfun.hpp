#pragma once

#include <complex>

namespace cfb {

/// Bessel order; always strictly greater than -1/2.
class Order {
public:
    explicit Order(double nu);

    double value() const noexcept { return nu_; }
    Order shifted(int k) const { return Order(nu_ + k); }

    friend bool operator==(const Order&, const Order&) = default;

private:
    double nu_;
};

/// ln Gamma(x) for x > 0. Throws std::domain_error otherwise.
double log_gamma(double x);

/// Normalized Bessel function j_nu(z) = 2^nu Gamma(nu+1) J_nu(z) / z^nu.
///
/// Entire and even in z, with j_nu(0) = 1. Small arguments use the power
/// series; larger real or complex arguments use the Mehler cosine integral on
/// a Gauss-Jacobi rule, and very large ones the Hankel asymptotic expansion.
/// Throws std::overflow_error when |Im z| is too large for e^{|Im z|}.
std::complex<double> j_nu(Order order, std::complex<double> z);
double j_nu(Order order, double x);

/// j_nu evaluated from the Mehler representation
///   j_nu(x) = 2 Gamma(nu+1) / (sqrt(pi) Gamma(nu+1/2)) * int_0^1 (1-t^2)^{nu-1/2} cos(xt) dt.
/// Independent of the series/asymptotic path; intended for |x| <= 100.
double j_nu_mehler(Order order, double x);

/// First derivative: j_nu'(z) = -z / (2(nu+1)) * j_{nu+1}(z).
std::complex<double> j_nu_deriv(Order order, std::complex<double> z);
double j_nu_deriv(Order order, double x);

/// Second derivative from the order recurrence (not from the ODE):
///   j_nu''(z) = -j_{nu+1}(z) / (2(nu+1)) + z^2 j_{nu+2}(z) / (4(nu+1)(nu+2)).
std::complex<double> j_nu_deriv2(Order order, std::complex<double> z);
double j_nu_deriv2(Order order, double x);

/// e^{-u} j_nu(iu) for u >= 0, computed without forming e^{u} for large u.
/// The result lies in (0, 1].
double j_nu_scaled(Order order, double u);

/// Residual Delta_nu[j_nu(y .)](x) + y^2 j_nu(yx) of the Bessel eigen-equation,
/// with derivatives taken from j_nu_deriv / j_nu_deriv2.
std::complex<double> bessel_ode_residual(Order order, double y, double x);

namespace detail {

// Exposed for regime-agreement tests and benchmarks.
std::complex<double> j_nu_series(double nu, std::complex<double> z);
std::complex<double> j_nu_hankel_asymptotic(double nu, std::complex<double> z);
std::complex<double> j_nu_mehler_complex(double nu, std::complex<double> z, int nodes);
double j_nu_scaled_series(double nu, double u);
double j_nu_scaled_peak_series(double nu, double u);
double j_nu_scaled_asymptotic(double nu, double u);

inline constexpr double kSeriesSwitch = 8.0;

}  // namespace detail

}  // namespace cfb
