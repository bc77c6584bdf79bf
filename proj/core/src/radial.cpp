#include "cfb/radial.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <stdexcept>

namespace cfb {

using cplx = std::complex<double>;

double RadialFunction::radius(double eps, double fallback) const {
    return decay_radius ? decay_radius(eps) : fallback;
}

SampledRadialFunction::SampledRadialFunction(std::vector<double> grid, std::vector<cplx> values)
    : grid_(std::move(grid)), values_(std::move(values)) {
    if (grid_.size() != values_.size()) throw std::invalid_argument("grid and values differ in length");
    if (!grid_.empty() && !(grid_.front() >= 0.0)) throw std::invalid_argument("grid must be nonnegative");
    for (std::size_t i = 1; i < grid_.size(); ++i)
        if (!(grid_[i] > grid_[i - 1])) throw std::invalid_argument("grid must be strictly increasing");
}

double SampledRadialFunction::sup_norm() const {
    double m = 0.0;
    for (const auto& v : values_) m = std::max(m, std::abs(v));
    return m;
}

namespace {

struct Spline {
    std::vector<double> x;
    std::vector<cplx> y;
    std::vector<cplx> m;  // second derivatives at the knots
    double chirp = 0.0;

    cplx eval(double t) const {
        if (t < x.front() || t > x.back()) return 0.0;
        const std::size_t n = x.size();
        if (n == 1) return y[0];
        std::size_t k = static_cast<std::size_t>(std::upper_bound(x.begin(), x.end(), t) - x.begin());
        k = std::clamp<std::size_t>(k, 1, n - 1);
        const double h = x[k] - x[k - 1];
        const double A = (x[k] - t) / h;
        const double B = 1.0 - A;
        const cplx env = A * y[k - 1] + B * y[k] +
                         ((A * A * A - A) * m[k - 1] + (B * B * B - B) * m[k]) * (h * h / 6.0);
        if (chirp == 0.0) return env;
        return env * std::polar(1.0, 0.5 * chirp * t * t);
    }
};

// Cubic spline second derivatives; clamped with zero slope at x[0] == 0,
// natural otherwise and at the right end.
std::vector<cplx> spline_moments(const std::vector<double>& x, const std::vector<cplx>& y) {
    const std::size_t n = x.size();
    std::vector<cplx> m(n, 0.0);
    if (n < 3) return m;
    const bool clamped = x[0] == 0.0;

    std::vector<double> diag(n), upper(n), lower(n);
    std::vector<cplx> rhs(n);
    if (clamped) {
        const double h0 = x[1] - x[0];
        diag[0] = h0 / 3.0;
        upper[0] = h0 / 6.0;
        rhs[0] = (y[1] - y[0]) / h0;
    } else {
        diag[0] = 1.0;
        upper[0] = 0.0;
        rhs[0] = 0.0;
    }
    for (std::size_t i = 1; i + 1 < n; ++i) {
        const double hl = x[i] - x[i - 1];
        const double hr = x[i + 1] - x[i];
        lower[i] = hl / 6.0;
        diag[i] = (hl + hr) / 3.0;
        upper[i] = hr / 6.0;
        rhs[i] = (y[i + 1] - y[i]) / hr - (y[i] - y[i - 1]) / hl;
    }
    lower[n - 1] = 0.0;
    diag[n - 1] = 1.0;
    rhs[n - 1] = 0.0;

    // Thomas algorithm.
    std::vector<double> c(n);
    std::vector<cplx> d(n);
    c[0] = upper[0] / diag[0];
    d[0] = rhs[0] / diag[0];
    for (std::size_t i = 1; i < n; ++i) {
        const double den = diag[i] - lower[i] * c[i - 1];
        c[i] = upper[i] / den;
        d[i] = (rhs[i] - lower[i] * d[i - 1]) / den;
    }
    m[n - 1] = d[n - 1];
    for (std::size_t i = n - 1; i-- > 0;) m[i] = d[i] - c[i] * m[i + 1];
    return m;
}

}  // namespace

RadialFunction SampledRadialFunction::interpolant(double chirp) const {
    if (grid_.empty()) throw std::invalid_argument("cannot interpolate an empty sample");
    auto sp = std::make_shared<Spline>();
    sp->x = grid_;
    sp->y = values_;
    sp->chirp = chirp;
    if (chirp != 0.0)
        for (std::size_t i = 0; i < grid_.size(); ++i) sp->y[i] *= std::polar(1.0, -0.5 * chirp * grid_[i] * grid_[i]);
    sp->m = spline_moments(sp->x, sp->y);

    RadialFunction f;
    f.value = [sp](double t) { return sp->eval(t); };
    const double last = grid_.back();
    f.decay_radius = [last](double) { return last; };
    f.smooth = true;
    f.chirp_hint = chirp;
    return f;
}

RadialFunction SampledRadialFunction::uniform_interpolant(double chirp) const {
    const std::size_t n = grid_.size();
    if (n < 8 || grid_.front() != 0.0) throw std::invalid_argument("uniform interpolant needs >= 8 samples from 0");
    const double h = grid_.back() / static_cast<double>(n - 1);
    for (std::size_t i = 0; i < n; ++i)
        if (std::abs(grid_[i] - h * static_cast<double>(i)) > 1e-9 * h)
            throw std::invalid_argument("uniform interpolant needs an evenly spaced grid");

    auto env = std::make_shared<std::vector<cplx>>(values_);
    if (chirp != 0.0)
        for (std::size_t i = 0; i < n; ++i) (*env)[i] *= std::polar(1.0, -0.5 * chirp * grid_[i] * grid_[i]);

    const double last = grid_.back();
    RadialFunction f;
    f.value = [env, h, n, last, chirp](double t) -> cplx {
        if (t < 0.0) t = -t;
        if (t > last) return 0.0;
        const auto& v = *env;
        auto at = [&](long k) -> cplx {
            if (k < 0) k = -k;
            return k < static_cast<long>(n) ? v[static_cast<std::size_t>(k)] : cplx(0.0);
        };
        const double s = t / h;
        const long base = static_cast<long>(std::floor(s)) - 3;  // nodes base .. base+7
        const double u = s - static_cast<double>(base);
        long exact = -1;
        for (int j = 0; j < 8; ++j)
            if (u == static_cast<double>(j)) exact = j;
        cplx out;
        if (exact >= 0) {
            out = at(base + exact);
        } else {
            // Barycentric form; the weights for equispaced nodes are (-1)^j C(7, j).
            static constexpr double w[8] = {1, -7, 21, -35, 35, -21, 7, -1};
            cplx num = 0.0;
            double den = 0.0;
            for (int j = 0; j < 8; ++j) {
                const double c = w[j] / (u - j);
                num += c * at(base + j);
                den += c;
            }
            out = num / den;
        }
        return chirp == 0.0 ? out : out * std::polar(1.0, 0.5 * chirp * t * t);
    };
    f.decay_radius = [last](double) { return last; };
    f.smooth = true;
    f.chirp_hint = chirp;
    return f;
}

std::vector<double> linspace(double lo, double hi, std::size_t n) {
    std::vector<double> v(n);
    if (n == 1) {
        v[0] = lo;
        return v;
    }
    for (std::size_t i = 0; i < n; ++i) v[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
    if (n > 1) v.back() = hi;
    return v;
}

SampledRadialFunction sample(const RadialFunction& f, std::span<const double> points) {
    std::vector<double> g(points.begin(), points.end());
    std::vector<cplx> v(g.size());
    for (std::size_t i = 0; i < g.size(); ++i) v[i] = f(g[i]);
    return SampledRadialFunction(std::move(g), std::move(v));
}

}  // namespace cfb
