#pragma once

#include "lfq/jump_distribution.hpp"
#include "lfq/net_input.hpp"

namespace lfq {

enum class VacationMode {
  /// η is drawn directly from the configured law.
  direct_eta,
  /// The configured law is a single vacation length V; η is the input that
  /// accumulates over consecutive vacations until it is positive.
  work_during_vacation,
};

const char* to_string(VacationMode mode);

/// Law of the workload increment η added each time the system empties.
class VacationJumpLaw {
 public:
  VacationJumpLaw(VacationMode mode, JumpDistribution law, const NetInputModel& net);

  VacationMode mode() const { return mode_; }
  const JumpDistribution& law() const { return law_; }

  double moment(int k) const;
  double mean() const { return moment(1); }

  template <class T>
  T lst(T theta) const {
    if (mode_ == VacationMode::direct_eta) return law_.lst(theta);
    return T(1.0) - one_minus_lst(theta);
  }
  template <class T>
  T one_minus_lst(T theta) const;
  /// E[η e^{-θη}].
  template <class T>
  T weighted_lst(T theta) const;

  double sample(RandomStream& rng) const;
  double sample_residual(RandomStream& rng) const;

 private:
  // Input accumulated over one vacation of length v.
  double accumulate_input(double v, RandomStream& rng) const;

  VacationMode mode_;
  JumpDistribution law_;
  // Copies of the input parameters needed in work_during_vacation mode.
  double drift_;
  double jump_rate_;
  JumpDistribution jump_law_;
  // P(no input during one vacation); zero unless drift == 0.
  double empty_probability_;
};

/// Net input plus failures (Poisson clock of rate λ_R adding repair jumps ξ)
/// and vacation jumps η at every zero hit.
class QueueModel {
 public:
  /// Throws std::invalid_argument if p = λ_R E ξ / φ̄'(0) is not in [0, 1).
  QueueModel(NetInputModel net, double failure_rate, JumpDistribution repair_law,
             VacationJumpLaw vacation, double initial_workload = 0.0);

  const NetInputModel& net() const { return net_; }
  double failure_rate() const { return failure_rate_; }
  const JumpDistribution& repair_law() const { return repair_law_; }
  const VacationJumpLaw& vacation() const { return vacation_; }
  double initial_workload() const { return initial_workload_; }

  /// Fraction of the drain capacity φ̄'(0) consumed by repair jumps.
  double repair_share() const;

  QueueModel with_initial_workload(double w0) const;
  QueueModel with_failure_rate(double rate) const;

 private:
  NetInputModel net_;
  double failure_rate_;
  JumpDistribution repair_law_;
  VacationJumpLaw vacation_;
  double initial_workload_;
};

template <class T>
T VacationJumpLaw::one_minus_lst(T theta) const {
  if (mode_ == VacationMode::direct_eta) return law_.one_minus_lst(theta);
  // η = X_V conditioned on X_V > 0 with E e^{-θ X_V} = E e^{V φ(θ)}.
  const T s = drift_ * theta + jump_rate_ * jump_law_.one_minus_lst(theta);
  return law_.one_minus_lst(s) / (1.0 - empty_probability_);
}

template <class T>
T VacationJumpLaw::weighted_lst(T theta) const {
  if (mode_ == VacationMode::direct_eta) return law_.weighted_lst(theta);
  const T s = drift_ * theta + jump_rate_ * jump_law_.one_minus_lst(theta);
  const T ds = drift_ + jump_rate_ * jump_law_.weighted_lst(theta);
  return law_.weighted_lst(s) * ds / (1.0 - empty_probability_);
}

}  // namespace lfq
