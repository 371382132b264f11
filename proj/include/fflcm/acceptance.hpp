#pragma once

// The acceptance checks, one result per numbered criterion.

#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

namespace fflcm {

struct CriterionResult {
    int id = 0;
    std::string title;
    bool pass = false;
    std::string detail;
    double seconds = 0;
};

struct AcceptanceOptions {
    std::vector<int> only;  // empty: all
    /// Directory holding locked fixtures; empty: FFLCM_FIXTURES, else the
    /// source tree's tests/fixtures.
    std::string fixture_dir;
    /// Write a missing trend fixture after its values have been verified
    /// against the oracle.
    bool lock = false;
    std::ostream* progress = nullptr;
};

std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& opts = {});

/// One "criterion N: PASS|FAIL  title  (detail, seconds)" line per result.
std::string format_results(const std::vector<CriterionResult>& results);
nlohmann::ordered_json results_json(const std::vector<CriterionResult>& results);

}  // namespace fflcm
