#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "lfq/jump_distribution.hpp"
#include "lfq/verification.hpp"

namespace lfq {

/// Configuration problem, already prefixed with "origin:line:" when the
/// offending node is known.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class VacationSetting { none, direct_eta, work_during_vacation };

struct ModelBlock {
  double drift = 0.0;
  double jump_rate = 0.0;
  std::optional<JumpDistribution> jump_law;
  double service_rate = 1.0;
  double failure_rate = 0.0;
  std::optional<JumpDistribution> repair_law;
  VacationSetting vacation = VacationSetting::none;
  std::optional<JumpDistribution> vacation_law;
  double initial_workload = 0.0;
};

struct RunBlock {
  double horizon = 1e4;
  std::optional<double> warmup;
  std::size_t samples = 100000;
  std::optional<double> spacing;
  std::size_t replications = 10000;
  std::vector<double> theta_grid;
  std::vector<double> x_grid;
  std::uint64_t seed = 0;
  /// Breakdown pairs simulated to estimate W± when p > 0.
  std::size_t embedding_samples = 100000;
};

struct OutputBlock {
  std::string directory = "out";
  std::vector<std::string> formats{"csv", "json"};
};

struct ExperimentConfig {
  ModelBlock model;
  RunBlock run;
  OutputBlock output;
  /// FNV-1a of the source text, as 16 hex digits.
  std::string hash;
  std::string origin;

  /// Builds the verified object; throws ConfigError (with the model block's
  /// line) when the parameters are invalid or unstable.
  SuiteTarget target() const;

  bool wants(std::string_view format) const;

 private:
  friend ExperimentConfig parse_config(std::string_view text, std::string_view origin);
  int model_line_ = 0;
};

/// Parses a YAML document with `model`, `run` and `output` blocks. Unknown
/// keys, missing required keys and a missing run.seed are errors.
ExperimentConfig parse_config(std::string_view text, std::string_view origin);

ExperimentConfig load_config(const std::filesystem::path& path);

/// The reference configurations "A", "B" and "C" shipped with the tool.
std::string_view bundled_config_text(std::string_view name);
std::vector<std::string> bundled_config_names();

std::string config_hash(std::string_view text);

}  // namespace lfq
