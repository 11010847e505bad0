#pragma once

#include <stdexcept>

#include "lfq/jump_distribution.hpp"

namespace lfq {

/// Net input Y_t = X_t - r t, where X is a subordinator made of a linear drift
/// plus compound-Poisson jumps. Immutable after construction.
class NetInputModel {
 public:
  /// Throws std::invalid_argument unless drift ≥ 0, jump_rate ≥ 0,
  /// service_rate > drift and the load stays strictly below service_rate.
  NetInputModel(double drift, double jump_rate, JumpDistribution jump_law, double service_rate);

  double drift() const { return drift_; }
  double jump_rate() const { return jump_rate_; }
  const JumpDistribution& jump_law() const { return jump_law_; }
  double service_rate() const { return service_rate_; }

  /// ρ = a + λ_J E B, the mean input per unit time.
  double load() const { return drift_ + jump_rate_ * jump_law_.mean(); }
  /// Slope r - a at which the fluid drains between jumps.
  double drain_rate() const { return service_rate_ - drift_; }

 private:
  double drift_;
  double jump_rate_;
  JumpDistribution jump_law_;
  double service_rate_;
};

struct ExponentDerivatives {
  double first;
  double second;
  double third;
};

namespace detail {

template <class T>
void check_exponent_argument(const T& theta) {
  if (!(real_part(theta) >= 0.0)) {
    throw std::domain_error("exponent argument must have a nonnegative real part");
  }
}

}  // namespace detail

/// Exponent of the input subordinator: log E e^{-θ X_1} = -aθ - λ_J (1 - E e^{-θB}).
template <class T>
T phi(const NetInputModel& net, T theta) {
  detail::check_exponent_argument(theta);
  return -net.drift() * theta - net.jump_rate() * net.jump_law().one_minus_lst(theta);
}

/// Exponent of the net input: φ̄(θ) = φ(θ) + rθ.
template <class T>
T varphi(const NetInputModel& net, T theta) {
  detail::check_exponent_argument(theta);
  return net.drain_rate() * theta - net.jump_rate() * net.jump_law().one_minus_lst(theta);
}

/// φ̄'(θ) = r - a - λ_J E[B e^{-θB}].
double varphi_prime(const NetInputModel& net, double theta);

/// (φ̄'(0), φ̄''(0), φ̄'''(0)) = (r - ρ, λ_J m₂, -λ_J m₃).
ExponentDerivatives varphi_derivatives_at_zero(const NetInputModel& net);

/// Unique positive root of φ̄(θ) = γ. Bracketing plus safeguarded Newton,
/// absolute tolerance 1e-12 on φ̄, at most 200 iterations.
double inverse_varphi(const NetInputModel& net, double gamma);

}  // namespace lfq
