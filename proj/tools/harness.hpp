#pragma once

#include "config.hpp"

#include <filesystem>
#include <string>
#include <vector>

namespace mgl::harness {

std::string version();

struct RunOutcome {
  int exit_code = 0;                // 0 ok, 1 a verification failed
  std::vector<std::string> messages; // human-readable summary / witnesses
  std::vector<std::string> artifacts;
};

/// Runs one mode and writes report.json plus the mode's CSV files into
/// out_dir. Output bytes depend only on the config (seed included).
RunOutcome run(const RunConfig& config, const std::filesystem::path& out_dir);

/// Splits one CSV line on commas (the emitted files never quote).
std::vector<std::string> split_csv_line(const std::string& line);

}  // namespace mgl::harness
