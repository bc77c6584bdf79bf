#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "cfb/quadrature.hpp"

namespace cfb {

struct CheckResult {
    std::string check_id;
    std::string paper_anchor;
    double max_error = 0.0;  // +inf when a structural condition fails
    double tolerance = 0.0;
    bool pass = false;
    double runtime_ms = 0.0;
};

struct VerifyReport {
    std::vector<CheckResult> entries;  // sorted by check_id

    bool all_pass() const;
    /// {"version": 1, "entries": [...]}; a non-finite max_error is written as null.
    std::string to_json(int indent = 2) const;
};

struct CheckInfo {
    std::string id;
    std::string anchor;
    double tolerance;
};

/// Every registered check, sorted by id.
std::vector<CheckInfo> registered_checks();

struct VerifyOptions {
    std::vector<std::string> selection;  // empty: all checks
    std::uint64_t seed = 0;
    std::map<std::string, double> tolerance_overrides;
    QuadratureSpec spec;
    unsigned jobs = 1;
};

/// Runs the selected checks. Failures and exceptions inside a check become
/// entries with pass = false. Throws std::invalid_argument for an unknown id.
VerifyReport run_verify(const VerifyOptions& options);

}  // namespace cfb
