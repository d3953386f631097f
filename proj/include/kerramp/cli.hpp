#pragma once

#include "kerramp/config.hpp"

#include <ostream>
#include <string>
#include <string_view>
#include <vector>

namespace kerramp {

[[nodiscard]] const std::vector<std::string>& subcommand_names();

/// Fixed CSV columns of a subcommand. Throws ValidationError for unknown names.
[[nodiscard]] std::vector<std::string> csv_columns(std::string_view subcommand);

/// Runs one subcommand, writing its CSV table to `csv` and progress or
/// diagnostics to `log`. Returns 0 on success; on failure writes
/// "<subcommand>: <error>" to `log` and returns 1.
int run_subcommand(std::string_view name, const RunConfig& config, std::ostream& csv,
                   std::ostream& log);

}  // namespace kerramp
