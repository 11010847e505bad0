#include "lfq/net_input.hpp"

#include <cmath>
#include <limits>
#include <sstream>

namespace lfq {

NetInputModel::NetInputModel(double drift, double jump_rate, JumpDistribution jump_law,
                             double service_rate)
    : drift_(drift), jump_rate_(jump_rate), jump_law_(std::move(jump_law)),
      service_rate_(service_rate) {
  if (!(drift_ >= 0.0) || !std::isfinite(drift_)) {
    throw std::invalid_argument("drift must be nonnegative");
  }
  if (!(jump_rate_ >= 0.0) || !std::isfinite(jump_rate_)) {
    throw std::invalid_argument("jump rate must be nonnegative");
  }
  if (!(service_rate_ > 0.0) || !std::isfinite(service_rate_)) {
    throw std::invalid_argument("service rate must be positive");
  }
  if (!(service_rate_ > drift_)) {
    throw std::invalid_argument("service rate must exceed the input drift");
  }
  if (!(load() < service_rate_)) {
    std::ostringstream os;
    os.precision(12);
    os << "unstable net input: drift + jump_rate * E[jump] = " << load()
       << " is not below service_rate = " << service_rate_;
    throw std::invalid_argument(os.str());
  }
}

double varphi_prime(const NetInputModel& net, double theta) {
  detail::check_exponent_argument(theta);
  return net.drain_rate() - net.jump_rate() * net.jump_law().weighted_lst(theta);
}

ExponentDerivatives varphi_derivatives_at_zero(const NetInputModel& net) {
  const auto& law = net.jump_law();
  return {net.service_rate() - net.load(), net.jump_rate() * law.moment(2),
          -net.jump_rate() * law.moment(3)};
}

double inverse_varphi(const NetInputModel& net, double gamma) {
  if (!(gamma > 0.0) || !std::isfinite(gamma)) {
    throw std::domain_error("inverse_varphi needs a positive finite argument");
  }
  constexpr double kTolerance = 1e-12;
  constexpr int kMaxIterations = 200;

  // φ̄ is convex, increasing, with slope ≥ φ̄'(0) > 0, so γ/φ̄'(0) overshoots
  // the root only if φ̄ bends up; grow geometrically until bracketed.
  double lo = 0.0;
  double hi = gamma / net.drain_rate();
  if (hi <= 0.0) hi = 1.0;
  int guard = 0;
  while (varphi(net, hi) < gamma) {
    lo = hi;
    hi *= 2.0;
    if (++guard > 2000) throw std::runtime_error("inverse_varphi: failed to bracket root");
  }

  double x = 0.5 * (lo + hi);
  for (int it = 0; it < kMaxIterations; ++it) {
    const double f = varphi(net, x) - gamma;
    if (std::abs(f) <= kTolerance) return x;
    if (f > 0.0) {
      hi = x;
    } else {
      lo = x;
    }
    const double slope = varphi_prime(net, x);
    double next = x - f / slope;
    if (!(next > lo && next < hi) || !std::isfinite(next)) next = 0.5 * (lo + hi);
    if (hi - lo <= 4.0 * std::numeric_limits<double>::epsilon() * hi) return next;
    x = next;
  }
  throw std::runtime_error("inverse_varphi: no convergence within iteration cap");
}

}  // namespace lfq
