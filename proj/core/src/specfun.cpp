#include "cfb/specfun.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

#include "cfb/quadrature.hpp"

namespace cfb {

namespace {

using cplx = std::complex<double>;
constexpr double kPi = std::numbers::pi;

// zeta(k) - 1 for k = 2..41.
constexpr std::array<double, 40> kZetaMinusOne = {
    6.44934066848226406e-01, 2.02056903159594292e-01, 8.23232337111381857e-02,
    3.69277551433699266e-02, 1.73430619844491402e-02, 8.34927738192282713e-03,
    4.07735619794433960e-03, 2.00839282608221426e-03, 9.94575127818085256e-04,
    4.94188604119464529e-04, 2.46086553308048320e-04, 1.22713347578489145e-04,
    6.12481350587048277e-05, 3.05882363070204933e-05, 1.52822594086518710e-05,
    7.63719763789976257e-06, 3.81729326499984022e-06, 1.90821271655393897e-06,
    9.53962033872796212e-07, 4.76932986787806447e-07, 2.38450502727733004e-07,
    1.19219925965311064e-07, 5.96081890512594801e-08, 2.98035035146522793e-08,
    1.49015548283650427e-08, 7.45071178983543006e-09, 3.72533402478845728e-09,
    1.86265972351304914e-09, 9.31327432419668166e-10, 4.65662906503378366e-10,
    2.32831183367650534e-10, 1.16415501727005193e-10, 5.82077208790270145e-11,
    2.91038504449710001e-11, 1.45519218910419849e-11, 7.27595983505748180e-12,
    3.63797954737865086e-12, 1.81898965030706607e-12, 9.09494784026388841e-13,
    4.54747378304215422e-13,
};

constexpr double kEulerGamma = 0.57721566490153286061;

// ln Gamma(1 + eps) for |eps| <= 1/2, Taylor series around 1 with the
// zeta(k) = 1 + (zeta(k) - 1) split so the leading part sums to eps - log1p(eps).
double log_gamma_near_one(double eps) {
    double tail = 0.0;
    double pw = -eps;  // (-eps)^k
    for (std::size_t i = 0; i < kZetaMinusOne.size(); ++i) {
        pw *= -eps;
        const double term = pw * kZetaMinusOne[i] / static_cast<double>(i + 2);
        tail += term;
        if (std::abs(term) < 1e-18 * std::abs(eps)) break;
    }
    return -kEulerGamma * eps + (eps - std::log1p(eps)) + tail;
}

double log_gamma_stirling(double x) {
    constexpr std::array<double, 8> c = {
        1.0 / 12.0,   -1.0 / 360.0,  1.0 / 1260.0,    -1.0 / 1680.0,
        1.0 / 1188.0, -691.0 / 360360.0, 1.0 / 156.0, -3617.0 / 122400.0,
    };
    const double inv = 1.0 / x;
    const double inv2 = inv * inv;
    double s = 0.0;
    double pw = inv;
    for (double ck : c) {
        s += ck * pw;
        pw *= inv2;
    }
    return (x - 0.5) * std::log(x) - x + 0.5 * std::log(2.0 * kPi) + s;
}

// Neumaier compensated accumulator for complex sums.
struct CompensatedSum {
    double re = 0.0, im = 0.0, cre = 0.0, cim = 0.0;

    static void add1(double& s, double& c, double v) {
        const double t = s + v;
        if (std::abs(s) >= std::abs(v))
            c += (s - t) + v;
        else
            c += (v - t) + s;
        s = t;
    }
    void add(cplx v) {
        add1(re, cre, v.real());
        add1(im, cim, v.imag());
    }
    cplx value() const { return {re + cre, im + cim}; }
};

// Order-dependent constants, remembered per thread for the last order seen.
struct OrderConstants {
    double nu = std::numeric_limits<double>::quiet_NaN();
    double norm = 0.0;    // 2^nu Gamma(nu+1)
    double mehler = 0.0;  // Gamma(nu+1) / (sqrt(pi) Gamma(nu+1/2))
};

const OrderConstants& constants(double nu) {
    thread_local OrderConstants slots[3];
    thread_local int next = 0;
    for (const auto& c : slots)
        if (c.nu == nu) return c;
    OrderConstants& c = slots[next];
    next = (next + 1) % 3;
    c.nu = nu;
    c.norm = std::exp(nu * std::numbers::ln2 + log_gamma(nu + 1.0));
    c.mehler = std::exp(log_gamma(nu + 1.0) - log_gamma(nu + 0.5)) / std::sqrt(std::numbers::pi);
    return c;
}

double bessel_norm(double nu) { return constants(nu).norm; }

int mehler_nodes(double absz) {
    const int n = static_cast<int>(std::ceil((0.75 * absz + 32.0) / 16.0)) * 16;
    return std::max(n, 32);
}

// Below this the asymptotic expansion cannot reach double precision for any order.
constexpr double kAsymptoticFloor = 18.0;

double asymptotic_threshold(double nu) { return 50.0 + 2.0 * nu * nu; }

// 2 Gamma(nu+1) / (sqrt(pi) Gamma(nu+1/2)), halved because the rule spans [-1, 1].
double mehler_constant(double nu) { return constants(nu).mehler; }

// Hankel large-argument expansion. Returns false when the terms stop
// decreasing before reaching double precision.
bool hankel_asymptotic(double nu, cplx z, cplx& out) {
    if (z.real() < 0.0) z = -z;
    const double mu = 4.0 * nu * nu;
    const cplx inv = 1.0 / z;
    cplx p = 1.0, q = 0.0;
    double a = 1.0;
    cplx pw = 1.0;
    double last = std::numeric_limits<double>::infinity();
    bool converged = false;
    for (int k = 1; k < 200; ++k) {
        const double odd = 2.0 * k - 1.0;
        a *= (mu - odd * odd) / (8.0 * k);
        pw *= inv;
        const cplx t = a * pw;
        const double at = std::abs(t);
        if (at > last) break;  // asymptotic series started to diverge
        last = at;
        // P collects (-1)^{k/2} a_k z^{-k} for even k, Q (-1)^{(k-1)/2} a_k z^{-k} for odd k.
        const int r = k % 4;
        if (r == 1) q += t;
        else if (r == 2) p -= t;
        else if (r == 3) q -= t;
        else p += t;
        if (at < 1e-17) {
            converged = true;
            break;
        }
    }
    const cplx chi = z - (0.5 * nu + 0.25) * kPi;
    const cplx bessel_j = std::sqrt(2.0 / (kPi * z)) * (p * std::cos(chi) - q * std::sin(chi));
    out = bessel_norm(nu) * bessel_j * std::exp(-nu * std::log(z));
    return converged;
}

}  // namespace

Order::Order(double nu) : nu_(nu) {
    if (!(nu > -0.5) || !std::isfinite(nu))
        throw std::domain_error("Bessel order must satisfy nu > -1/2, got " + std::to_string(nu));
}

double log_gamma(double x) {
    if (!(x > 0.0) || std::isinf(x))
        throw std::domain_error("log_gamma requires a finite x > 0");
    if (x < 0.5) return log_gamma(x + 1.0) - std::log(x);
    if (x < 1.5) return log_gamma_near_one(x - 1.0);
    if (x < 2.5) {
        const double eps = x - 2.0;
        return std::log1p(eps) + log_gamma_near_one(eps);
    }
    if (x < 10.0) {
        double prod = 1.0;
        double y = x;
        while (y >= 2.5) {
            y -= 1.0;
            prod *= y;
        }
        return std::log(prod) + log_gamma(y);
    }
    return log_gamma_stirling(x);
}

namespace detail {

cplx j_nu_series(double nu, cplx z) {
    const cplx w = -(z * z) / 4.0;
    const double half_abs = std::abs(z) / 2.0;
    CompensatedSum sum;
    sum.add(1.0);
    cplx term = 1.0;
    for (int n = 1; n < 1000; ++n) {
        term *= w / (n * (n + nu));
        sum.add(term);
        if (n > half_abs) {
            const double at = std::abs(term);
            if (at <= 1e-17 * std::abs(sum.value()) || at < 1e-300) break;
        }
    }
    return sum.value();
}

cplx j_nu_hankel_asymptotic(double nu, cplx z) {
    cplx out;
    hankel_asymptotic(nu, z, out);
    return out;
}

cplx j_nu_mehler_complex(double nu, cplx z, int nodes) {
    const auto rule = gauss_jacobi(nu - 0.5, nu - 0.5, nodes);
    CompensatedSum sum;
    for (std::size_t i = 0; i < rule->nodes.size(); ++i)
        sum.add(rule->weights[i] * std::cos(z * rule->nodes[i]));
    return mehler_constant(nu) * sum.value();
}

double j_nu_scaled_series(double nu, double u) {
    const double w = 0.25 * u * u;
    CompensatedSum sum;
    sum.add(1.0);
    double term = 1.0;
    for (int n = 1; n < 2000; ++n) {
        term *= w / (n * (n + nu));
        sum.add(term);
        if (n > u / 2.0 && term <= 1e-17 * sum.value().real()) break;
    }
    return std::exp(-u) * sum.value().real();
}

double j_nu_scaled_peak_series(double nu, double u) {
    const double w = 0.25 * u * u;
    const double npeak = 0.5 * (std::sqrt(nu * nu + u * u) - nu);
    const int n0 = std::max(0, static_cast<int>(std::lround(npeak)));
    const double log_t0 = 2.0 * n0 * std::log(0.5 * u) + log_gamma(nu + 1.0) -
                          log_gamma(n0 + 1.0) - log_gamma(n0 + nu + 1.0) - u;
    const double t0 = std::exp(log_t0);
    CompensatedSum sum;
    sum.add(t0);
    double t = t0;
    for (int n = n0 + 1;; ++n) {
        t *= w / (n * (n + nu));
        sum.add(t);
        if (t <= 1e-18 * sum.value().real()) break;
    }
    t = t0;
    for (int n = n0; n > 0; --n) {
        t *= (n * (n + nu)) / w;
        sum.add(t);
        if (t <= 1e-18 * sum.value().real()) break;
    }
    return sum.value().real();
}

double j_nu_scaled_asymptotic(double nu, double u) {
    // e^{-u} I_nu(u) ~ (2 pi u)^{-1/2} sum_k (-1)^k a_k(nu) u^{-k}
    const double mu = 4.0 * nu * nu;
    double s = 1.0;
    double a = 1.0;
    double last = std::numeric_limits<double>::infinity();
    for (int k = 1; k < 200; ++k) {
        const double odd = 2.0 * k - 1.0;
        a *= -(mu - odd * odd) / (8.0 * k * u);
        const double aa = std::abs(a);
        if (aa > last) break;
        last = aa;
        s += a;
        if (aa < 1e-17 * std::abs(s)) break;
    }
    const double log_pref = nu * std::numbers::ln2 + log_gamma(nu + 1.0) - nu * std::log(u) -
                            0.5 * std::log(2.0 * kPi * u);
    return std::exp(log_pref) * s;
}

}  // namespace detail

double j_nu(Order order, double x) {
    const double nu = order.value();
    const double ax = std::abs(x);
    if (ax <= detail::kSeriesSwitch) return detail::j_nu_series(nu, ax).real();
    if (ax >= kAsymptoticFloor) {
        cplx v;
        if (hankel_asymptotic(nu, ax, v) || ax >= asymptotic_threshold(nu)) return v.real();
    }
    return detail::j_nu_mehler_complex(nu, ax, mehler_nodes(ax)).real();
}

cplx j_nu(Order order, cplx z) {
    if (z.imag() == 0.0) return j_nu(order, z.real());
    const double nu = order.value();
    const double az = std::abs(z);
    if (az <= detail::kSeriesSwitch) return detail::j_nu_series(nu, z);
    const double growth = std::abs(z.imag());
    if (growth > 700.0)
        throw std::overflow_error("j_nu: |Im z| too large, e^{|Im z|} is not representable");
    if (z.real() == 0.0) return std::exp(growth) * j_nu_scaled(order, growth);
    if (az >= kAsymptoticFloor) {
        cplx v;
        if (hankel_asymptotic(nu, z, v) || az >= asymptotic_threshold(nu)) return v;
    }
    return detail::j_nu_mehler_complex(nu, z, mehler_nodes(az));
}

double j_nu_mehler(Order order, double x) {
    const double ax = std::abs(x);
    return detail::j_nu_mehler_complex(order.value(), ax, mehler_nodes(ax)).real();
}

cplx j_nu_deriv(Order order, cplx z) {
    const double nu = order.value();
    return -z / (2.0 * (nu + 1.0)) * j_nu(order.shifted(1), z);
}

double j_nu_deriv(Order order, double x) {
    const double nu = order.value();
    return -x / (2.0 * (nu + 1.0)) * j_nu(order.shifted(1), x);
}

cplx j_nu_deriv2(Order order, cplx z) {
    const double nu = order.value();
    return -j_nu(order.shifted(1), z) / (2.0 * (nu + 1.0)) +
           z * z * j_nu(order.shifted(2), z) / (4.0 * (nu + 1.0) * (nu + 2.0));
}

double j_nu_deriv2(Order order, double x) {
    const double nu = order.value();
    return -j_nu(order.shifted(1), x) / (2.0 * (nu + 1.0)) +
           x * x * j_nu(order.shifted(2), x) / (4.0 * (nu + 1.0) * (nu + 2.0));
}

double j_nu_scaled(Order order, double u) {
    const double nu = order.value();
    u = std::abs(u);
    if (u <= 30.0) return detail::j_nu_scaled_series(nu, u);
    if (u < std::max(100.0, 50.0 + 4.0 * nu * nu)) return detail::j_nu_scaled_peak_series(nu, u);
    return detail::j_nu_scaled_asymptotic(nu, u);
}

cplx bessel_ode_residual(Order order, double y, double x) {
    if (!(x > 0.0)) throw std::domain_error("bessel_ode_residual requires x > 0");
    const double nu = order.value();
    const double z = y * x;
    const double f = j_nu(order, z);
    const double f1 = y * j_nu_deriv(order, z);
    const double f2 = y * y * j_nu_deriv2(order, z);
    return f2 + (2.0 * nu + 1.0) / x * f1 + y * y * f;
}

}  // namespace cfb
