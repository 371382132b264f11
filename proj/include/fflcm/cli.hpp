#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "fflcm/config.hpp"

namespace fflcm {

/// Exit codes of the command line.
inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;  // fixtures failed, or an internal error
inline constexpr int kExitValidation = 2;
inline constexpr int kExitResource = 3;

/// Parses args (without the program name) and runs the command.  JSON goes to
/// out unless --out is given; diagnostics go to err.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Executes a parsed configuration; returns the JSON document and fills csv
/// when the command has a tabular form.
nlohmann::ordered_json execute(const ExperimentConfig& cfg, std::string& csv, std::ostream& err);

}  // namespace fflcm
