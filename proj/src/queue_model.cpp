#include "lfq/queue_model.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace lfq {

const char* to_string(VacationMode mode) {
  switch (mode) {
    case VacationMode::direct_eta:
      return "direct_eta";
    case VacationMode::work_during_vacation:
      return "work_during_vacation";
  }
  return "unknown";
}

VacationJumpLaw::VacationJumpLaw(VacationMode mode, JumpDistribution law,
                                 const NetInputModel& net)
    : mode_(mode), law_(std::move(law)), drift_(net.drift()), jump_rate_(net.jump_rate()),
      jump_law_(net.jump_law()), empty_probability_(0.0) {
  if (mode_ == VacationMode::work_during_vacation) {
    if (drift_ == 0.0 && jump_rate_ == 0.0) {
      throw std::invalid_argument(
          "work_during_vacation needs a positive input rate during vacations");
    }
    if (drift_ == 0.0) empty_probability_ = law_.lst(jump_rate_);
  }
}

double VacationJumpLaw::moment(int k) const {
  if (mode_ == VacationMode::direct_eta) return law_.moment(k);
  // Conditional moments of X_v: cumulants κ_j = c_j v with c1 = ρ,
  // c2 = λ m2, c3 = λ m3.
  const double c1 = drift_ + jump_rate_ * jump_law_.mean();
  const double c2 = jump_rate_ * jump_law_.moment(2);
  const double c3 = jump_rate_ * jump_law_.moment(3);
  const double v1 = law_.moment(1);
  const double v2 = law_.moment(2);
  const double v3 = law_.moment(3);
  double raw = 0.0;
  switch (k) {
    case 1:
      raw = c1 * v1;
      break;
    case 2:
      raw = c2 * v1 + c1 * c1 * v2;
      break;
    case 3:
      raw = c3 * v1 + 3.0 * c2 * c1 * v2 + c1 * c1 * c1 * v3;
      break;
    default:
      throw std::invalid_argument("moment order must be 1, 2 or 3");
  }
  return raw / (1.0 - empty_probability_);
}

double VacationJumpLaw::accumulate_input(double v, RandomStream& rng) const {
  double acc = drift_ * v;
  double t = rng.exponential(jump_rate_);
  while (t <= v) {
    acc += jump_law_.sample(rng);
    t += rng.exponential(jump_rate_);
  }
  return acc;
}

double VacationJumpLaw::sample(RandomStream& rng) const {
  if (mode_ == VacationMode::direct_eta) return law_.sample(rng);
  for (;;) {
    const double eta = accumulate_input(law_.sample(rng), rng);
    if (eta > 0.0) return eta;
  }
}

double VacationJumpLaw::sample_residual(RandomStream& rng) const {
  if (mode_ == VacationMode::direct_eta) return law_.sample_residual(rng);
  // Residual = U * (length-biased η). Length-biasing X_V: bias V by length,
  // then with probability λ m1 / ρ add one length-biased input jump.
  const double v = law_.sample_length_biased(rng);
  double biased = accumulate_input(v, rng);
  const double rho = drift_ + jump_rate_ * jump_law_.mean();
  if (rng.uniform() * rho < jump_rate_ * jump_law_.mean()) {
    biased += jump_law_.sample_length_biased(rng);
  }
  return rng.uniform() * biased;
}

QueueModel::QueueModel(NetInputModel net, double failure_rate, JumpDistribution repair_law,
                       VacationJumpLaw vacation, double initial_workload)
    : net_(std::move(net)), failure_rate_(failure_rate), repair_law_(std::move(repair_law)),
      vacation_(std::move(vacation)), initial_workload_(initial_workload) {
  if (!(failure_rate_ >= 0.0) || !std::isfinite(failure_rate_)) {
    throw std::invalid_argument("failure rate must be nonnegative");
  }
  if (!(initial_workload_ >= 0.0) || !std::isfinite(initial_workload_)) {
    throw std::invalid_argument("initial workload must be nonnegative");
  }
  const double total = net_.load() + failure_rate_ * repair_law_.mean();
  if (!(total < net_.service_rate())) {
    std::ostringstream os;
    os.precision(12);
    os << "unstable: drift + jump_rate*E[jump] + failure_rate*E[repair] = " << total
       << " must be strictly below service_rate = " << net_.service_rate()
       << " (rate balance of repair and vacation jumps needs p < 1)";
    throw std::invalid_argument(os.str());
  }
}

double QueueModel::repair_share() const {
  return failure_rate_ * repair_law_.mean() / varphi_derivatives_at_zero(net_).first;
}

QueueModel QueueModel::with_initial_workload(double w0) const {
  return QueueModel(net_, failure_rate_, repair_law_, vacation_, w0);
}

QueueModel QueueModel::with_failure_rate(double rate) const {
  return QueueModel(net_, rate, repair_law_, vacation_, initial_workload_);
}

}  // namespace lfq
