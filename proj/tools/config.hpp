#pragma once

#include "json.hpp"
#include "mgl/chern.hpp"
#include "mgl/frequency.hpp"
#include "mgl/spectral.hpp"

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace mgl::harness {

extern const char* const kConfigSchema;
extern const char* const kReportSchema;

const nlohmann::json& config_schema();
const nlohmann::json& report_schema();

/// Raised for anything that makes a config unusable; maps to exit status 2.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(std::vector<std::string> diagnostics);
  const std::vector<std::string>& diagnostics() const { return diagnostics_; }

 private:
  std::vector<std::string> diagnostics_;
};

struct ChainConfig {
  std::string kind = "trivial";
  std::vector<long> degrees;
  std::size_t depth = 1;
  long max_index = 64;
  std::vector<std::vector<std::vector<long>>> levels;
};

struct PotentialConfig {
  std::size_t level = 1;
  std::vector<Rational> values;
  Rational coupling = 0;
  std::vector<std::int64_t> base_point;
};

struct SpectralConfig {
  std::vector<std::size_t> volumes;
  double delta = 0.05;
  std::optional<double> tol;
  long q_max = 12;
  double eps = 0.5 / 144;  // default: half the minimum spacing of fractions with q <= q_max
  std::size_t j_max = 1;
  Boundary boundary = Boundary::Periodic;
  std::size_t dense_limit = 4096;
};

struct ChernTerm {
  IndexSet indices;
  Rational coeff;
};

struct ChernConfig {
  std::size_t n = 1;
  std::vector<ChernTerm> terms;
};

struct ButterflyConfig {
  std::size_t q_max = 8;
  std::size_t volume = 24;
};

/// Fully resolved run configuration: every default is filled in.
struct RunConfig {
  int schema_version = 1;
  std::string mode;
  std::size_t p = 2;
  std::vector<Rational> theta;
  ChainConfig chain;
  std::size_t levels = 1;
  PotentialConfig potential;
  SpectralConfig spectral;
  std::optional<ChernConfig> chern;
  ButterflyConfig butterfly;
  std::uint64_t seed = 0;
  std::size_t jobs = 1;

  SubgroupChain build_chain() const;
  MagneticMatrix build_theta() const;
  HamiltonianSpec hamiltonian() const;
  ExteriorElement chern_element() const;
};

/// Parses JSON text; syntax errors become ConfigError with the line/column.
nlohmann::json parse_config_text(const std::string& text);

/// Schema check, then defaults and semantic checks. `mode` (from the command
/// line) must agree with the config's own mode field when both are present.
RunConfig resolve_config(const nlohmann::json& raw, const std::string& mode);

nlohmann::json to_json(const RunConfig& config);

}  // namespace mgl::harness
