#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <json.hpp>
#include <limits>
#include <set>

#include "cfb/rng.hpp"
#include "cfb/verify.hpp"

TEST_CASE("named RNG streams are deterministic and independent") {
    cfb::Rng a(7, "x"), b(7, "x"), c(7, "y"), d(8, "x");
    bool differs_name = false, differs_seed = false;
    for (int i = 0; i < 16; ++i) {
        const double va = a.uniform();
        CHECK(va == b.uniform());
        CHECK(va >= 0.0);
        CHECK(va < 1.0);
        differs_name |= va != c.uniform();
        differs_seed |= va != d.uniform();
    }
    CHECK(differs_name);
    CHECK(differs_seed);
    cfb::Rng r(1, "range");
    for (int i = 0; i < 1000; ++i) {
        const double u = r.uniform(-2.0, 3.0);
        CHECK((u >= -2.0 && u < 3.0));
        CHECK(r.index(5) < 5u);
    }
}

TEST_CASE("registered checks are sorted, unique and have positive or zero tolerances") {
    const auto checks = cfb::registered_checks();
    REQUIRE(checks.size() >= 16);
    std::set<std::string> ids;
    for (const auto& c : checks) {
        ids.insert(c.id);
        CHECK(c.tolerance >= 0.0);
        CHECK_FALSE(c.anchor.empty());
    }
    CHECK(ids.size() == checks.size());
    CHECK(std::is_sorted(checks.begin(), checks.end(), [](const auto& a, const auto& b) { return a.id < b.id; }));
}

TEST_CASE("run_verify: selection, overrides, unknown ids, determinism") {
    cfb::VerifyOptions opt;
    opt.selection = {"heat.kernel_bound", "hankel.reduction"};
    opt.seed = 3;
    const auto first = cfb::run_verify(opt);
    REQUIRE(first.entries.size() == 2);
    CHECK(first.entries[0].check_id == "hankel.reduction");
    CHECK(first.entries[1].check_id == "heat.kernel_bound");
    CHECK(first.all_pass());

    const auto again = cfb::run_verify(opt);
    for (std::size_t i = 0; i < 2; ++i) CHECK(first.entries[i].max_error == again.entries[i].max_error);

    opt.selection = {"heat.gaussian_bessel_lemma"};
    opt.tolerance_overrides["heat.gaussian_bessel_lemma"] = 1e-300;
    const auto strict = cfb::run_verify(opt);
    CHECK(strict.entries[0].tolerance == 1e-300);
    CHECK_FALSE(strict.all_pass());

    opt.selection = {"no.such.check"};
    CHECK_THROWS_AS(cfb::run_verify(opt), std::invalid_argument);
    opt.selection = {"heat.kernel_bound"};
    opt.tolerance_overrides = {{"no.such.check", 1.0}};
    CHECK_THROWS_AS(cfb::run_verify(opt), std::invalid_argument);
}

TEST_CASE("report JSON layout and non-finite errors") {
    cfb::VerifyReport r;
    r.entries.push_back({"a.first", "anchor one", 1.5e-9, 1e-8, true, 2.0});
    r.entries.push_back({"b.second", "anchor two", std::numeric_limits<double>::infinity(), 1e-8, false, 3.0});
    CHECK_FALSE(r.all_pass());
    const auto j = nlohmann::json::parse(r.to_json());
    CHECK(j["version"] == 1);
    REQUIRE(j["entries"].size() == 2);
    CHECK(j["entries"][0]["check_id"] == "a.first");
    CHECK(j["entries"][0]["paper_anchor"] == "anchor one");
    CHECK(j["entries"][0]["max_error"].get<double>() == 1.5e-9);
    CHECK(j["entries"][0]["pass"] == true);
    CHECK(j["entries"][1]["max_error"].is_null());
    CHECK(j["entries"][1]["pass"] == false);
    const auto keys = j["entries"][0];
    for (const char* k : {"check_id", "paper_anchor", "max_error", "tolerance", "pass", "runtime_ms"}) CHECK(keys.contains(k));
}
