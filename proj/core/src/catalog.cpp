#include "cfb/catalog.hpp"

#include <charconv>
#include <cmath>
#include <set>
#include <sstream>

namespace cfb {

using cplx = std::complex<double>;

namespace {

struct ShapeInfo {
    Shape shape;
    const char* name;
    std::set<std::string> keys;
};

const std::vector<ShapeInfo>& shapes() {
    static const std::vector<ShapeInfo> table = {
        {Shape::gaussian, "gaussian", {"beta"}},
        {Shape::chirped_gaussian, "chirped_gaussian", {"beta", "chirp"}},
        {Shape::bump, "bump", {"R"}},
        {Shape::box, "box", {"R"}},
        {Shape::damped_cosine, "damped_cosine", {"beta", "omega"}},
    };
    return table;
}

const ShapeInfo& info(Shape s) {
    for (const auto& i : shapes())
        if (i.shape == s) return i;
    throw std::logic_error("unknown shape");
}

double default_param(const std::string& key) {
    if (key == "chirp") return 0.0;
    return 1.0;
}

std::function<double(double)> gaussian_radius(double beta) {
    return [beta](double eps) { return std::sqrt(std::max(-std::log(eps), 0.0) / beta) + 2.0; };
}

}  // namespace

std::string FunctionSpec::to_string() const {
    std::ostringstream os;
    os.precision(17);
    os << info(shape).name;
    char sep = ':';
    for (const auto& [k, v] : params) {
        os << sep << k << '=' << v;
        sep = ',';
    }
    return os.str();
}

FunctionSpec parse_function(std::string_view text) {
    const std::size_t colon = text.find(':');
    const std::string_view name = text.substr(0, colon);
    const ShapeInfo* found = nullptr;
    for (const auto& i : shapes())
        if (name == i.name) found = &i;
    if (!found) throw ParseError("unknown function name '" + std::string(name) + "'", 0);

    FunctionSpec spec{found->shape, {}};
    if (colon != std::string_view::npos) {
        std::size_t pos = colon + 1;
        if (pos >= text.size()) throw ParseError("expected key=value", pos);
        while (pos < text.size()) {
            const std::size_t eq = text.find('=', pos);
            const std::size_t comma = text.find(',', pos);
            if (eq == std::string_view::npos || (comma != std::string_view::npos && comma < eq))
                throw ParseError("expected key=value", pos);
            const std::string key(text.substr(pos, eq - pos));
            if (!found->keys.count(key)) throw ParseError("unknown parameter '" + key + "'", pos);
            if (spec.params.count(key)) throw ParseError("duplicate parameter '" + key + "'", pos);
            const std::size_t vstart = eq + 1;
            const std::size_t vend = comma == std::string_view::npos ? text.size() : comma;
            const char* first = text.data() + vstart;
            const char* last = text.data() + vend;
            if (first < last && *first == '+') ++first;
            double v = 0.0;
            auto [ptr, ec] = std::from_chars(first, last, v);
            if (ec != std::errc() || ptr != last || first == last) throw ParseError("invalid number", vstart);
            spec.params[key] = v;
            pos = vend == text.size() ? vend : vend + 1;
            if (vend != text.size() && pos == text.size()) throw ParseError("trailing comma", vend);
        }
    }
    for (const auto& k : found->keys)
        if (!spec.params.count(k)) spec.params[k] = default_param(k);
    validate(spec);
    return spec;
}

void validate(const FunctionSpec& spec) {
    for (const auto& [k, v] : spec.params) {
        if (!std::isfinite(v)) throw ValidationError("parameter '" + k + "' must be finite");
        if ((k == "beta" || k == "R") && !(v > 0.0)) throw ValidationError("parameter '" + k + "' must be positive");
    }
}

RadialFunction make_function(const FunctionSpec& spec) {
    validate(spec);
    switch (spec.shape) {
        case Shape::gaussian: return gaussian(spec.param("beta"));
        case Shape::chirped_gaussian: return chirped_gaussian(spec.param("beta"), spec.param("chirp"));
        case Shape::bump: return bump(spec.param("R"));
        case Shape::box: return box(spec.param("R"));
        case Shape::damped_cosine: return damped_cosine(spec.param("beta"), spec.param("omega"));
    }
    throw std::logic_error("unknown shape");
}

RadialFunction gaussian(double beta) { return chirped_gaussian(beta, 0.0); }

RadialFunction chirped_gaussian(double beta, double chirp) {
    if (!(beta > 0.0)) throw ValidationError("beta must be positive");
    const cplx g(beta, -0.5 * chirp);  // f = e^{-g y^2}
    RadialFunction f;
    f.value = [g](double y) { return std::exp(-g * (y * y)); };
    f.deriv1 = [g](double y) { return -2.0 * g * y * std::exp(-g * (y * y)); };
    f.deriv2 = [g](double y) { return (4.0 * g * g * (y * y) - 2.0 * g) * std::exp(-g * (y * y)); };
    f.decay_radius = gaussian_radius(beta);
    f.chirp_hint = chirp;
    return f;
}

RadialFunction bump(double R) {
    if (!(R > 0.0)) throw ValidationError("R must be positive");
    const double R2 = R * R;
    RadialFunction f;
    f.value = [R2](double y) -> cplx {
        const double u = R2 - y * y;
        if (u <= 0.0) return 0.0;
        return std::exp(-R2 / u);
    };
    f.deriv1 = [R2](double y) -> cplx {
        const double u = R2 - y * y;
        if (u <= 0.0) return 0.0;
        const double e = std::exp(-R2 / u);
        if (e == 0.0) return 0.0;
        return -2.0 * y * R2 / (u * u) * e;
    };
    f.deriv2 = [R2](double y) -> cplx {
        const double u = R2 - y * y;
        if (u <= 0.0) return 0.0;
        const double e = std::exp(-R2 / u);
        if (e == 0.0) return 0.0;
        const double g1 = -2.0 * y * R2 / (u * u);
        const double g2 = -2.0 * R2 / (u * u) - 8.0 * y * y * R2 / (u * u * u);
        return (g2 + g1 * g1) * e;
    };
    f.decay_radius = [R](double) { return R; };
    return f;
}

RadialFunction box(double R) {
    if (!(R > 0.0)) throw ValidationError("R must be positive");
    RadialFunction f;
    f.value = [R](double y) { return cplx(y <= R ? 1.0 : 0.0); };
    f.decay_radius = [R](double) { return R; };
    f.smooth = false;
    return f;
}

RadialFunction damped_cosine(double beta, double omega) {
    if (!(beta > 0.0)) throw ValidationError("beta must be positive");
    RadialFunction f;
    f.value = [beta, omega](double y) { return cplx(std::exp(-beta * y * y) * std::cos(omega * y)); };
    f.deriv1 = [beta, omega](double y) {
        const double e = std::exp(-beta * y * y);
        return cplx(e * (-2.0 * beta * y * std::cos(omega * y) - omega * std::sin(omega * y)));
    };
    f.deriv2 = [beta, omega](double y) {
        const double e = std::exp(-beta * y * y);
        return cplx(e * ((4.0 * beta * beta * y * y - 2.0 * beta - omega * omega) * std::cos(omega * y) +
                         4.0 * beta * omega * y * std::sin(omega * y)));
    };
    f.decay_radius = gaussian_radius(beta);
    return f;
}

RadialFunction constant(cplx c) {
    RadialFunction f;
    f.value = [c](double) { return c; };
    f.deriv1 = [](double) { return cplx(0.0); };
    f.deriv2 = [](double) { return cplx(0.0); };
    return f;
}

RadialFunction zero_function() {
    RadialFunction f = constant(0.0);
    f.decay_radius = [](double) { return 1.0; };
    return f;
}

}  // namespace cfb
