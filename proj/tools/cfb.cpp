#include <CLI11.hpp>

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "cfb/catalog.hpp"
#include "cfb/errors.hpp"
#include "cfb/heat.hpp"
#include "cfb/transform.hpp"
#include "cfb/translation.hpp"
#include "cfb/verify.hpp"

namespace {

enum Exit { kOk = 0, kChecksFailed = 1, kUsage = 2, kNumerical = 3 };

struct Globals {
    std::string matrix;
    std::optional<double> rotation;
    double nu = 0.0;
    double rel_tol = cfb::QuadratureSpec{}.rel_tol;
    double abs_tol = cfb::QuadratureSpec{}.abs_tol;
    int max_panels = cfb::QuadratureSpec{}.max_panels;
    std::uint64_t seed = 0;
    std::string out;

    cfb::SLMatrix sl_matrix() const {
        if (rotation) return cfb::SLMatrix::rotation(*rotation);
        if (!matrix.empty()) return cfb::SLMatrix::parse(matrix);
        return cfb::SLMatrix::hankel();
    }
    cfb::QuadratureSpec spec() const {
        cfb::QuadratureSpec s;
        s.rel_tol = rel_tol;
        s.abs_tol = abs_tol;
        s.max_panels = max_panels;
        s.validate();
        return s;
    }
};

std::vector<double> parse_points(const std::string& text) {
    std::vector<std::string> parts;
    std::stringstream ss(text);
    for (std::string p; std::getline(ss, p, ':');) parts.push_back(p);
    if (parts.size() != 3) throw std::invalid_argument("--points expects lo:hi:n");
    std::size_t used = 0;
    const double lo = std::stod(parts[0], &used);
    if (used != parts[0].size()) throw std::invalid_argument("bad lower bound in --points");
    const double hi = std::stod(parts[1], &used);
    if (used != parts[1].size()) throw std::invalid_argument("bad upper bound in --points");
    const long n = std::stol(parts[2], &used);
    if (used != parts[2].size() || n < 1) throw std::invalid_argument("--points needs a positive count");
    if (!std::isfinite(lo) || !std::isfinite(hi) || (n > 1 && !(hi > lo)))
        throw std::invalid_argument("--points needs finite lo < hi");
    return cfb::linspace(lo, hi, static_cast<std::size_t>(n));
}

std::vector<double> parse_list(const std::string& text) {
    std::vector<double> v;
    std::stringstream ss(text);
    for (std::string p; std::getline(ss, p, ',');) {
        std::size_t used = 0;
        v.push_back(std::stod(p, &used));
        if (used != p.size()) throw std::invalid_argument("bad number '" + p + "'");
    }
    return v;
}

std::string csv(const cfb::SampledRadialFunction& s) {
    std::string out = "x,re,im\n";
    char buf[96];
    for (std::size_t i = 0; i < s.grid().size(); ++i) {
        std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g\n", s.grid()[i], s.values()[i].real(), s.values()[i].imag());
        out += buf;
    }
    return out;
}

void emit(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open '" + path + "' for writing");
    f << text;
}

// Shortest text that reads back to the same double.
std::string shortest(double v) {
    char buf[32];
    const auto r = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, r.ptr);
}

// out.csv, t = 0.5 -> out_t0.5.csv
std::string snapshot_path(const std::string& base, double t) {
    const std::string tag = "_t" + shortest(t);
    const auto slash = base.find_last_of('/');
    const auto dot = base.find_last_of('.');
    if (dot == std::string::npos || (slash != std::string::npos && dot < slash)) return base + tag;
    return base.substr(0, dot) + tag + base.substr(dot);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Canonical Fourier-Bessel transform, translation, convolution and heat toolkit"};
    app.require_subcommand(1);
    app.fallthrough();
    app.set_config("--config", "", "Read `key = value` lines mirroring the flags; flags override the file");

    Globals g;
    auto* mopt = app.add_option("--matrix", g.matrix, "SL(2,R) parameter as a,b,c,d (b != 0)");
    auto* ropt = app.add_option("--rotation", g.rotation, "Use the rotation matrix of angle phi");
    mopt->excludes(ropt);
    app.add_option("--nu", g.nu, "Bessel order, > -1/2")->capture_default_str();
    app.add_option("--rel-tol", g.rel_tol, "Relative quadrature tolerance")->capture_default_str();
    app.add_option("--abs-tol", g.abs_tol, "Absolute quadrature tolerance")->capture_default_str();
    app.add_option("--max-panels", g.max_panels, "Adaptive panel budget per integral")->capture_default_str();
    app.add_option("--seed", g.seed, "Seed for randomized checks")->capture_default_str();
    app.add_option("--out", g.out, "Output path (default stdout)");

    std::string function = "gaussian:beta=1", gfun = "gaussian:beta=1", points = "0:4:41", snapshots;
    double x = 0.0, sigma = 1.0, t = 1.0;
    bool inverse_flag = false;

    auto* tr = app.add_subcommand("transform", "Evaluate the transform of a catalog function");
    tr->add_option("--function", function, "name:key=value,...")->capture_default_str();
    tr->add_option("--points", points, "Output grid lo:hi:n")->capture_default_str();
    tr->add_flag("--inverse", inverse_flag, "Apply the inverse transform instead");

    auto* tl = app.add_subcommand("translate", "Evaluate the generalized translation y -> T_x f(y)");
    tl->add_option("--function", function, "name:key=value,...")->capture_default_str();
    tl->add_option("--x", x, "Translation amount")->capture_default_str();
    tl->add_option("--points", points, "Grid of y values lo:hi:n")->capture_default_str();

    auto* cv = app.add_subcommand("convolve", "Evaluate the generalized convolution f * g");
    cv->add_option("--function", function, "f as name:key=value,...")->capture_default_str();
    cv->add_option("--g", gfun, "g as name:key=value,...")->capture_default_str();
    cv->add_option("--points", points, "Output grid lo:hi:n")->capture_default_str();

    auto* ht = app.add_subcommand("heat", "Evolve initial data under the generalized heat equation");
    ht->add_option("--function", function, "Initial datum name:key=value,...")->capture_default_str();
    ht->add_option("--sigma", sigma, "Conductivity")->capture_default_str();
    ht->add_option("--t", t, "Time")->capture_default_str();
    ht->add_option("--points", points, "Output grid lo:hi:n")->capture_default_str();
    ht->add_option("--snapshots", snapshots, "Comma-separated times; one CSV per time");

    std::vector<std::string> select, overrides;
    unsigned jobs = 1;
    bool list = false;
    auto* vf = app.add_subcommand("verify", "Run the property suite and write a JSON report");
    vf->add_option("--select", select, "Check ids to run (default: all)")->delimiter(',');
    vf->add_option("--tolerance", overrides, "Override a tolerance as id=value")->delimiter(',');
    vf->add_option("--jobs", jobs, "Checks run concurrently")->capture_default_str();
    vf->add_flag("--list", list, "List check ids and exit");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? kOk : kUsage;
    }

    try {
        const cfb::Order nu(g.nu);
        const auto m = g.sl_matrix();
        const auto spec = g.spec();

        if (*tr) {
            const auto f = cfb::make_function(cfb::parse_function(function));
            const auto pts = parse_points(points);
            emit(g.out, csv(inverse_flag ? cfb::inverse(f, m, nu, pts, spec) : cfb::forward(f, m, nu, pts, spec)));
        } else if (*tl) {
            const auto f = cfb::make_function(cfb::parse_function(function));
            const auto pts = parse_points(points);
            emit(g.out, csv(cfb::sample(cfb::translated(m, nu, f, x, spec), pts)));
        } else if (*cv) {
            const auto f = cfb::make_function(cfb::parse_function(function));
            const auto h = cfb::make_function(cfb::parse_function(gfun));
            emit(g.out, csv(cfb::convolve(m, nu, f, h, parse_points(points), spec)));
        } else if (*ht) {
            const auto f = cfb::make_function(cfb::parse_function(function));
            const auto pts = parse_points(points);
            if (snapshots.empty()) {
                emit(g.out, csv(cfb::evolve(m, nu, sigma, f, t, pts, spec)));
            } else {
                std::string joined;
                for (double ts : parse_list(snapshots)) {
                    const std::string body = csv(cfb::evolve(m, nu, sigma, f, ts, pts, spec));
                    if (g.out.empty() || g.out == "-") {
                        joined += "# t=" + shortest(ts) + "\n" + body + "\n";
                    } else {
                        emit(snapshot_path(g.out, ts), body);
                    }
                }
                if (!joined.empty()) emit("", joined);
            }
        } else if (*vf) {
            if (list) {
                std::string text;
                for (const auto& c : cfb::registered_checks()) text += c.id + "\t" + c.anchor + "\n";
                emit(g.out, text);
                return kOk;
            }
            cfb::VerifyOptions opt;
            opt.selection = select;
            opt.seed = g.seed;
            opt.spec = spec;
            opt.jobs = jobs;
            for (const auto& o : overrides) {
                const auto eq = o.find('=');
                if (eq == std::string::npos) throw std::invalid_argument("--tolerance expects id=value");
                opt.tolerance_overrides[o.substr(0, eq)] = std::stod(o.substr(eq + 1));
            }
            const auto report = cfb::run_verify(opt);
            emit(g.out, report.to_json() + "\n");
            return report.all_pass() ? kOk : kChecksFailed;
        }
    } catch (const cfb::NonConvergent& e) {
        std::cerr << "cfb: " << e.what() << "\n";
        return kNumerical;
    } catch (const std::exception& e) {
        std::cerr << "cfb: " << e.what() << "\n";
        return kUsage;
    }
    return kOk;
}
