#pragma once

// Experiment configuration shared by the command line and --config files.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

namespace fflcm {

struct NRange {
    int lo = 0, hi = 0;
    friend bool operator==(const NRange&, const NRange&) = default;
};

/// "a..b" or a single integer.
NRange parse_n_range(const std::string& text);
std::string format_n_range(const NRange& r);

struct ExperimentConfig {
    std::string command;  // vf, special, rho, sweep, report, avgroots, fixtures
    std::string action;   // special: detect or construct
    std::string field = "2";
    std::string modulus;  // empty: default modulus
    std::vector<std::string> f;
    std::optional<int> n;
    std::optional<NRange> n_range;
    int kmax = 8;
    std::string prime;
    std::uint64_t seed = 0;
    std::uint64_t budget = std::uint64_t{1} << 20;
    bool paranoid = false;
    int vf_brute = -1;  // brute-force V_f up to this T-degree; negative: off

    // special construct
    std::string fd = "1";
    std::string A = "0";
    std::string C = "T";
    int m = 1, l = 1, v = 0;
    std::vector<std::string> V;  // elements of V, empty: {0}

    // fixtures
    std::vector<int> criteria;  // empty: all
    bool lock = false;

    std::string out, csv;

    friend bool operator==(const ExperimentConfig&, const ExperimentConfig&) = default;
};

/// Full field literal, e.g. "9" or "3^2 modulus=\"a^2+1\"".
std::string field_literal(const ExperimentConfig& c);

/// Literals rewritten in canonical form; throws ValidationError on bad input.
ExperimentConfig canonical(const ExperimentConfig& c);

/// Every key, fixed order.  Output paths are left out when with_paths is
/// false so that results do not depend on where they are written.
nlohmann::ordered_json to_json(const ExperimentConfig& c, bool with_paths = true);
/// Unknown keys and ill-typed values raise ValidationError.
ExperimentConfig config_from_json(const nlohmann::json& j);
ExperimentConfig load_config(const std::string& path);

}  // namespace fflcm
