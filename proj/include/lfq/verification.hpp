#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "lfq/queue_model.hpp"
#include "lfq/random.hpp"

namespace lfq {

/// One theory-vs-simulation comparison. `pass` holds iff statistic ≤ threshold.
struct ComparisonReport {
  std::string name;
  std::vector<double> theory;
  std::vector<double> empirical;
  std::vector<double> se;
  double statistic = 0.0;
  double threshold = 0.0;
  bool pass = false;
  double runtime_seconds = 0.0;
  std::uint64_t seed = 0;
  /// What the statistic measures, plus any numerics worth auditing.
  std::string note;
};

ComparisonReport make_report(std::string name, std::vector<double> theory,
                             std::vector<double> empirical, std::vector<double> se,
                             double statistic, double threshold, std::string note);

enum class Budget { smoke, standard, thorough };

/// Accepts "smoke", "default" and "thorough".
Budget parse_budget(std::string_view text);
const char* to_string(Budget budget);
/// Sample-size multiplier: 0.1, 1 and 4.
double budget_scale(Budget budget);

/// What the suite verifies: a reflected net input alone, or a full queue.
struct SuiteTarget {
  std::string label;
  NetInputModel net;
  std::optional<QueueModel> model;
};

struct SuiteOptions {
  Budget budget = Budget::standard;
  std::uint64_t seed = 1;
  /// Shift every theory value by ten times its tolerance (calibration control).
  bool perturb_theory = false;
};

/// Mean of the Kella-Whitt statistic over `reps` independent paths for each
/// (θ, t); passes iff 0 lies inside every 99.9% CI. `varphi_scale` multiplies
/// φ̄(θ) to build the sensitivity control.
ComparisonReport martingale_zero_test(const QueueModel& model, std::span<const double> thetas,
                                      std::span<const double> times, std::size_t reps,
                                      const StreamSeeds& seeds, double varphi_scale = 1.0);

/// Runs every check that applies to the target. Deterministic given the
/// target and options; reports are sorted by name. Failing checks are
/// recorded, never thrown.
std::vector<ComparisonReport> run_verification_suite(const SuiteTarget& target,
                                                     const SuiteOptions& options);

std::size_t count_failures(std::span<const ComparisonReport> reports);

/// Fixed-width table for terminals.
std::string format_table(std::span<const ComparisonReport> reports);

}  // namespace lfq
