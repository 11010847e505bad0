#include "lfq/simulation.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "lfq/net_input.hpp"

namespace lfq {

const char* to_string(EventKind kind) {
  switch (kind) {
    case EventKind::input_jump:
      return "input_jump";
    case EventKind::breakdown:
      return "breakdown";
    case EventKind::vacation_trigger:
      return "vacation_trigger";
  }
  return "unknown";
}

namespace {

struct PathRecorder {
  PathResult* out;
  double last_zero_hit = -1.0;

  void segment(double t0, double t1, double w0, double w1) {
    for (std::size_t i = 0; i < out->theta_grid.size(); ++i) {
      out->exp_integrals[i] += detail::exp_integral(out->theta_grid[i], t0, t1, w0, w1);
    }
  }

  void event(const PathEvent& e) {
    out->events.push_back(e);
    if (e.kind == EventKind::breakdown) {
      out->breakdowns.push_back({e.w_before, e.w_after});
      ++out->breakdown_count;
    } else if (e.kind == EventKind::vacation_trigger) {
      out->vacation_jumps.push_back(e.size);
      ++out->vacation_count;
      if (last_zero_hit >= 0.0) out->busy_periods.push_back(e.time - last_zero_hit);
      last_zero_hit = e.time;
    }
  }
};

double lag_one_autocorrelation(const std::vector<double>& x) {
  const std::size_t n = x.size();
  if (n < 3) return 0.0;
  const double mean = std::accumulate(x.begin(), x.end(), 0.0) / static_cast<double>(n);
  double num = 0.0;
  double den = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double d = x[i] - mean;
    den += d * d;
    if (i + 1 < n) num += d * (x[i + 1] - mean);
  }
  return den > 0.0 ? num / den : 0.0;
}

void check_plan(const SamplingPlan& plan) {
  if (!(plan.warmup >= 0.0)) throw std::invalid_argument("warmup must be nonnegative");
  if (!(plan.spacing > 0.0)) throw std::invalid_argument("spacing must be positive");
}

StationarySample sample_engine(detail::PathEngine& engine, const SamplingPlan& plan) {
  check_plan(plan);
  StationarySample out;
  out.values.reserve(plan.count);
  for (std::size_t i = 0; i < plan.count; ++i) {
    engine.advance_to(plan.warmup + static_cast<double>(i) * plan.spacing);
    out.values.push_back(engine.workload());
  }
  out.lag_autocorrelation = lag_one_autocorrelation(out.values);
  return out;
}

std::size_t theta_index(const PathResult& path, double theta) {
  for (std::size_t i = 0; i < path.theta_grid.size(); ++i) {
    const double g = path.theta_grid[i];
    if (g == theta || std::abs(g - theta) <= 1e-14 * std::max(1.0, std::abs(theta))) return i;
  }
  throw std::invalid_argument("kella_whitt_statistic: θ was not accumulated on this path");
}

// W_t from the log: drain from the last event at or before t.
double workload_at(const PathResult& path, double t) {
  if (t >= path.horizon) return path.final_workload;
  double t0 = 0.0;
  double w0 = path.initial_workload;
  for (const auto& e : path.events) {
    if (e.time > t) break;
    t0 = e.time;
    w0 = e.w_after;
  }
  return std::max(0.0, w0 - path.drain_rate * (t - t0));
}

}  // namespace

PathResult simulate_path(const QueueModel& model, double horizon,
                         std::span<const double> theta_grid, RandomStream& rng,
                         std::span<const double> sample_times) {
  if (!(horizon > 0.0) || !std::isfinite(horizon)) {
    throw std::invalid_argument("simulate_path: horizon must be positive");
  }
  if (!std::is_sorted(sample_times.begin(), sample_times.end())) {
    throw std::invalid_argument("simulate_path: sample times must be sorted");
  }
  for (double th : theta_grid) {
    if (!(th >= 0.0)) throw std::invalid_argument("simulate_path: θ values must be nonnegative");
  }

  PathResult out;
  out.horizon = horizon;
  out.drain_rate = model.net().drain_rate();
  out.initial_workload = model.initial_workload();
  out.theta_grid.assign(theta_grid.begin(), theta_grid.end());
  out.exp_integrals.assign(theta_grid.size(), 0.0);
  for (double th : theta_grid) out.varphi_values.push_back(varphi(model.net(), th));

  PathRecorder recorder{&out};
  detail::PathEngine engine(detail::parameters_of(model), detail::ZeroPolicy::vacation,
                            model.initial_workload(), rng);
  for (double ts : sample_times) {
    if (ts < 0.0 || ts > horizon) {
      throw std::invalid_argument("simulate_path: sample time outside [0, horizon]");
    }
    engine.advance_to(ts, recorder);
    out.sample_times.push_back(ts);
    out.samples.push_back(engine.workload());
  }
  engine.advance_to(horizon, recorder);
  out.final_workload = engine.workload();
  return out;
}

double busy_time_scale(const NetInputModel& net) {
  const double d1 = varphi_derivatives_at_zero(net).first;
  if (net.jump_rate() > 0.0) return net.jump_law().mean() / d1;
  return 1.0 / d1;
}

double busy_time_scale(const QueueModel& model) {
  // Mean workload under Poisson failures (W⁻ distributed as W), used only to
  // size warmup and spacing.
  const auto d = varphi_derivatives_at_zero(model.net());
  const double p = model.repair_share();
  const auto& xi = model.repair_law();
  const auto& eta = model.vacation();
  const double reflected = d.second / (2.0 * d.first);
  const double repair = model.failure_rate() > 0.0 ? p * xi.moment(2) / (2.0 * xi.mean()) : 0.0;
  const double vacation = (1.0 - p) * eta.moment(2) / (2.0 * eta.mean());
  const double mean_workload = (reflected + repair + vacation) / (1.0 - p);
  return std::max(mean_workload, eta.mean()) / ((1.0 - p) * d.first);
}

SamplingPlan default_plan(const QueueModel& model, std::size_t count) {
  const double scale = busy_time_scale(model);
  return {50.0 * scale, count, 5.0 * scale};
}

SamplingPlan default_plan(const NetInputModel& net, std::size_t count) {
  const double scale = busy_time_scale(net);
  return {50.0 * scale, count, 5.0 * scale};
}

StationarySample stationary_samples(const QueueModel& model, const SamplingPlan& plan,
                                    RandomStream& rng) {
  detail::PathEngine engine(detail::parameters_of(model), detail::ZeroPolicy::vacation,
                            model.initial_workload(), rng);
  return sample_engine(engine, plan);
}

StationarySample simulate_reflected(const NetInputModel& net, const SamplingPlan& plan,
                                    RandomStream& rng) {
  detail::PathEngine engine(detail::parameters_of(net), detail::ZeroPolicy::reflect, 0.0, rng);
  return sample_engine(engine, plan);
}

std::vector<BreakdownPair> collect_breakdown_pairs(const QueueModel& model, double warmup,
                                                   std::size_t count, RandomStream& rng) {
  if (!(model.failure_rate() > 0.0)) {
    throw std::invalid_argument("collect_breakdown_pairs: model has no failures");
  }
  struct Collector {
    std::vector<BreakdownPair>* pairs;
    double warmup;
    std::size_t count;
    void segment(double, double, double, double) {}
    void event(const PathEvent& e) {
      if (e.kind == EventKind::breakdown && e.time >= warmup && pairs->size() < count) {
        pairs->push_back({e.w_before, e.w_after});
      }
    }
  };
  std::vector<BreakdownPair> pairs;
  pairs.reserve(count);
  Collector collector{&pairs, warmup, count};
  detail::PathEngine engine(detail::parameters_of(model), detail::ZeroPolicy::vacation,
                            model.initial_workload(), rng);
  engine.advance_to(warmup, collector);
  const double chunk = 1024.0 / model.failure_rate();
  while (pairs.size() < count) engine.advance_to(engine.time() + chunk, collector);
  return pairs;
}

BusyPeriod simulate_busy_period(const QueueModel& model, double initial, RandomStream& rng,
                                std::uint64_t event_cap) {
  if (!(initial >= 0.0)) throw std::invalid_argument("busy period needs a nonnegative start");
  if (initial == 0.0) return {0.0, false};
  detail::PathEngine engine(detail::parameters_of(model), detail::ZeroPolicy::stop, initial, rng);
  detail::NullObserver none;
  const auto status =
      engine.advance_to(std::numeric_limits<double>::infinity(), none, event_cap);
  return {engine.time(), status != detail::AdvanceStatus::hit_zero};
}

BusyPeriod simulate_n_order_busy(const QueueModel& model, int n,
                                 const JumpDistribution& initial_law, RandomStream& rng) {
  if (n < 0) throw std::invalid_argument("n-order busy period needs n ≥ 0");
  double start = 0.0;
  for (int i = 0; i < n; ++i) start += initial_law.sample(rng);
  return simulate_busy_period(model, start, rng);
}

double simulate_first_passage(const NetInputModel& net, double level, RandomStream& rng) {
  if (!(level > 0.0)) throw std::invalid_argument("first passage level must be positive");
  detail::PathEngine engine(detail::parameters_of(net), detail::ZeroPolicy::stop, level, rng);
  engine.advance_to(std::numeric_limits<double>::infinity());
  return engine.time();
}

double killed_sample(const QueueModel& model, double x, double gamma, RandomStream& rng) {
  if (!(gamma > 0.0)) throw std::invalid_argument("killing rate must be positive");
  if (!(x >= 0.0)) throw std::invalid_argument("killed_sample needs x ≥ 0");
  const double horizon = rng.exponential(gamma);
  detail::PathEngine engine(detail::parameters_of(model), detail::ZeroPolicy::vacation, x, rng);
  engine.advance_to(horizon);
  return engine.workload();
}

double exp_integral_from_log(const PathResult& path, double theta, double t) {
  if (!(t >= 0.0) || t > path.horizon) {
    throw std::invalid_argument("exp_integral_from_log: t outside [0, horizon]");
  }
  double acc = 0.0;
  double t0 = 0.0;
  double w0 = path.initial_workload;
  for (const auto& e : path.events) {
    if (e.time > t) break;
    acc += detail::exp_integral(theta, t0, e.time, w0, e.w_before);
    t0 = e.time;
    w0 = e.w_after;
  }
  acc += detail::exp_integral(theta, t0, t, w0, workload_at(path, t));
  return acc;
}

double kella_whitt_statistic(const PathResult& path, double theta, double t) {
  const std::size_t i = theta_index(path, theta);
  return kella_whitt_statistic(path, theta, t, path.varphi_values[i]);
}

double kella_whitt_statistic(const PathResult& path, double theta, double t,
                             double varphi_value) {
  const std::size_t i = theta_index(path, theta);
  if (!(t >= 0.0) || t > path.horizon) {
    throw std::invalid_argument("kella_whitt_statistic: t outside [0, horizon]");
  }
  const double integral =
      t == path.horizon ? path.exp_integrals[i] : exp_integral_from_log(path, theta, t);
  double jumps = 0.0;
  for (const auto& e : path.events) {
    if (e.time > t) break;
    if (e.kind == EventKind::breakdown) {
      jumps += std::exp(-theta * e.w_before) * -std::expm1(-theta * e.size);
    } else if (e.kind == EventKind::vacation_trigger) {
      jumps += -std::expm1(-theta * e.size);
    }
  }
  const double w_t = workload_at(path, t);
  return varphi_value * integral + std::exp(-theta * path.initial_workload) -
         std::exp(-theta * w_t) - jumps;
}

}  // namespace lfq
