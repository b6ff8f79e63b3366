#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "json.hpp"

namespace merokit::cli {

inline constexpr int kExitHolds = 0;
inline constexpr int kExitFails = 1;
inline constexpr int kExitInconclusive = 2;
inline constexpr int kExitUsage = 64;

/// Runs one command. `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Runs every suite item (isolated from each other) and returns the aggregate
/// JSON. A summary table is written to `table`. `exit_code` is 0 when every
/// item matched its expected verdict.
nlohmann::json batch_report(const nlohmann::json& suite, int jobs, std::ostream& table, int& exit_code);

}  // namespace merokit::cli
