#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "lfq/detail/path_engine.hpp"
#include "lfq/queue_model.hpp"
#include "lfq/random.hpp"

namespace lfq {

/// Workload just before (W⁻) and just after (W⁺) a repair jump.
struct BreakdownPair {
  double before;
  double after;
};

/// One simulated trajectory of the queue over [0, horizon].
struct PathResult {
  double horizon = 0.0;
  double drain_rate = 0.0;
  double initial_workload = 0.0;
  double final_workload = 0.0;
  std::vector<PathEvent> events;
  std::vector<double> sample_times;
  std::vector<double> samples;
  std::vector<BreakdownPair> breakdowns;
  std::vector<double> vacation_jumps;
  /// Time between consecutive zero hits (first incomplete cycle dropped).
  std::vector<double> busy_periods;
  std::size_t breakdown_count = 0;
  std::size_t vacation_count = 0;
  /// θ values for which ∫₀^horizon e^{-θ W_s} ds was accumulated, the
  /// accumulated integrals, and φ̄(θ) of the generating model.
  std::vector<double> theta_grid;
  std::vector<double> exp_integrals;
  std::vector<double> varphi_values;
};

/// Simulates the queue from its initial workload up to `horizon`, recording
/// the event log, W at `sample_times`, breakdown pairs, vacation jumps and
/// the exact exponential functionals for every θ in `theta_grid`.
/// Throws std::invalid_argument if horizon ≤ 0.
PathResult simulate_path(const QueueModel& model, double horizon,
                         std::span<const double> theta_grid, RandomStream& rng,
                         std::span<const double> sample_times = {});

struct SamplingPlan {
  double warmup;
  std::size_t count;
  double spacing;
};

/// Mean busy-period scale used to size warmup and spacing defaults.
double busy_time_scale(const QueueModel& model);
double busy_time_scale(const NetInputModel& net);

/// Warmup of 50 and spacing of 5 mean busy periods.
SamplingPlan default_plan(const QueueModel& model, std::size_t count);
SamplingPlan default_plan(const NetInputModel& net, std::size_t count);

struct StationarySample {
  std::vector<double> values;
  /// Sample autocorrelation at lag one spacing.
  double lag_autocorrelation = 0.0;
};

StationarySample stationary_samples(const QueueModel& model, const SamplingPlan& plan,
                                    RandomStream& rng);

/// Reflected net input (stays at zero until the next input jump).
StationarySample simulate_reflected(const NetInputModel& net, const SamplingPlan& plan,
                                    RandomStream& rng);

/// Breakdown pairs collected after `warmup` until `count` pairs are seen.
std::vector<BreakdownPair> collect_breakdown_pairs(const QueueModel& model, double warmup,
                                                   std::size_t count, RandomStream& rng);

struct BusyPeriod {
  double duration;
  bool censored;
};

inline constexpr std::uint64_t kBusyEventCap = 1'000'000;

/// First zero-hit time starting from `initial`, failures active, no vacation
/// at the terminal hit. Runs exceeding the event cap come back censored.
BusyPeriod simulate_busy_period(const QueueModel& model, double initial, RandomStream& rng,
                                std::uint64_t event_cap = kBusyEventCap);

/// Busy period started by n i.i.d. draws of `initial_law`.
BusyPeriod simulate_n_order_busy(const QueueModel& model, int n,
                                 const JumpDistribution& initial_law, RandomStream& rng);

/// First time the net input reaches -level (it creeps down, so the hit is exact).
double simulate_first_passage(const NetInputModel& net, double level, RandomStream& rng);

/// W_T started from W₀ = x with T ~ Exp(γ) independent of the path.
double killed_sample(const QueueModel& model, double x, double gamma, RandomStream& rng);

/// Kella-Whitt statistic M_t assembled from the event log. θ must be one of
/// the path's accumulated θ values; t must lie in [0, horizon].
double kella_whitt_statistic(const PathResult& path, double theta, double t);

/// Same statistic with an explicit φ̄(θ), used for sensitivity controls.
double kella_whitt_statistic(const PathResult& path, double theta, double t,
                             double varphi_value);

/// ∫₀ᵗ e^{-θ W_s} ds reconstructed exactly from the event log.
double exp_integral_from_log(const PathResult& path, double theta, double t);

}  // namespace lfq
