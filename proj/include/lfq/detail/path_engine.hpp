#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>

#include "lfq/queue_model.hpp"
#include "lfq/random.hpp"

namespace lfq {

enum class EventKind { input_jump, breakdown, vacation_trigger };

const char* to_string(EventKind kind);

struct PathEvent {
  double time;
  EventKind kind;
  double size;
  double w_before;
  double w_after;
};

namespace detail {

/// What happens when the workload reaches zero.
enum class ZeroPolicy {
  vacation,  // add a vacation jump η immediately
  reflect,   // stay at zero until the next input jump
  stop,      // report the hit and stop
};

enum class AdvanceStatus { reached_target, hit_zero, event_cap };

struct EngineParameters {
  const NetInputModel* net = nullptr;
  double failure_rate = 0.0;
  const JumpDistribution* repair_law = nullptr;
  const VacationJumpLaw* vacation = nullptr;
};

inline EngineParameters parameters_of(const QueueModel& model) {
  return {&model.net(), model.failure_rate(), &model.repair_law(), &model.vacation()};
}

inline EngineParameters parameters_of(const NetInputModel& net) { return {&net, 0.0, nullptr, nullptr}; }

struct NullObserver {
  void segment(double, double, double, double) {}
  void event(const PathEvent&) {}
};

/// Exact event-driven evolution of the workload. Between events the workload
/// is affine with slope -(r - a); zero hits are located in closed form.
///
/// Ties resolve as: zero hit, then its vacation jump, then clock events. An
/// event at exactly the target time is processed before returning, so the
/// state after `advance_to(t)` is the right-continuous value W(t).
class PathEngine {
 public:
  PathEngine(EngineParameters params, ZeroPolicy policy, double initial_workload,
             RandomStream& rng, double start_time = 0.0)
      : p_(params), policy_(policy), rng_(rng), t_(start_time), w_(initial_workload),
        drain_(params.net->drain_rate()) {
    jump_t_ = t_ + rng_.exponential(p_.net->jump_rate());
    fail_t_ = t_ + rng_.exponential(p_.failure_rate);
  }

  double time() const { return t_; }
  double workload() const { return w_; }
  std::uint64_t events() const { return events_; }

  template <class Observer>
  AdvanceStatus advance_to(double target, Observer& obs,
                           std::uint64_t event_cap = std::numeric_limits<std::uint64_t>::max()) {
    constexpr double inf = std::numeric_limits<double>::infinity();
    for (;;) {
      double zero_t = inf;
      if (w_ > 0.0) {
        zero_t = t_ + w_ / drain_;
      } else if (policy_ != ZeroPolicy::reflect) {
        zero_t = t_;
      }
      const double clock_t = std::min(jump_t_, fail_t_);

      if (zero_t <= clock_t && zero_t <= target) {
        if (zero_t > t_) obs.segment(t_, zero_t, w_, 0.0);
        t_ = zero_t;
        w_ = 0.0;
        if (policy_ == ZeroPolicy::stop) return AdvanceStatus::hit_zero;
        if (policy_ == ZeroPolicy::vacation) {
          const double eta = p_.vacation->sample(rng_);
          obs.event(PathEvent{t_, EventKind::vacation_trigger, eta, 0.0, eta});
          w_ = eta;
          if (++events_ >= event_cap) return AdvanceStatus::event_cap;
        }
        continue;
      }

      if (clock_t > target) {
        drift_to(target, obs);
        return AdvanceStatus::reached_target;
      }

      drift_to(clock_t, obs);
      if (jump_t_ <= fail_t_) {
        const double size = p_.net->jump_law().sample(rng_);
        obs.event(PathEvent{t_, EventKind::input_jump, size, w_, w_ + size});
        w_ += size;
        jump_t_ = t_ + rng_.exponential(p_.net->jump_rate());
      } else {
        const double size = p_.repair_law->sample(rng_);
        obs.event(PathEvent{t_, EventKind::breakdown, size, w_, w_ + size});
        w_ += size;
        fail_t_ = t_ + rng_.exponential(p_.failure_rate);
      }
      if (++events_ >= event_cap) return AdvanceStatus::event_cap;
    }
  }

  AdvanceStatus advance_to(double target) {
    NullObserver none;
    return advance_to(target, none);
  }

 private:
  template <class Observer>
  void drift_to(double t, Observer& obs) {
    if (t <= t_) return;
    const double w1 = w_ > 0.0 ? std::max(0.0, w_ - drain_ * (t - t_)) : 0.0;
    obs.segment(t_, t, w_, w1);
    t_ = t;
    w_ = w1;
  }

  EngineParameters p_;
  ZeroPolicy policy_;
  RandomStream& rng_;
  double t_;
  double w_;
  double drain_;
  double jump_t_;
  double fail_t_;
  std::uint64_t events_ = 0;
};

/// ∫ e^{-θ W_s} ds over one affine piece from (t0, w0) to (t1, w1).
inline double exp_integral(double theta, double t0, double t1, double w0, double w1) {
  const double dt = t1 - t0;
  if (dt <= 0.0) return 0.0;
  const double lo = std::min(w0, w1);
  const double delta = std::abs(w0 - w1);
  const double x = theta * delta;
  const double ratio = x < 1e-12 ? 1.0 : -std::expm1(-x) / x;
  return dt * std::exp(-theta * lo) * ratio;
}

}  // namespace detail
}  // namespace lfq
