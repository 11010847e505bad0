#include "lfq/analytics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace lfq {

RatesAndShare rates_and_p(const QueueModel& model) {
  const double d1 = varphi_derivatives_at_zero(model.net()).first;
  const double p = model.repair_share();
  if (!(p < 1.0)) throw std::domain_error("repair share p must be below 1 for stability");
  return {p, model.failure_rate(), (1.0 - p) * d1 / model.vacation().mean()};
}

Throughputs throughput_limits(const QueueModel& model) {
  const double d1 = varphi_derivatives_at_zero(model.net()).first;
  const double p = model.repair_share();
  return {p * d1, (1.0 - p) * d1};
}

double steady_state_lst_se(const QueueModel& model, const BreakdownEmbedding& emb, double theta) {
  const double p = model.repair_share();
  if (p == 0.0 || theta == 0.0) return 0.0;
  return pk_lst(model.net(), theta) * p * emb.lst_gap_se(theta) /
         (theta * model.repair_law().mean());
}

WorkloadMoments reflected_moments(const NetInputModel& net) {
  const auto d = varphi_derivatives_at_zero(net);
  WorkloadMoments m{};
  m.reflected_mean = d.second / (2.0 * d.first);
  const double second = d.second * d.second / (2.0 * d.first * d.first) - d.third / (3.0 * d.first);
  m.reflected_variance = second - m.reflected_mean * m.reflected_mean;
  m.reflected_part_as_printed =
      d.third / (3.0 * d.first) - 0.25 * (d.second / d.first) * (d.second / d.first);
  m.mean = m.reflected_mean;
  m.variance = m.reflected_variance;
  m.variance_as_printed = m.reflected_part_as_printed;
  return m;
}

WorkloadMoments moments(const QueueModel& model, const BreakdownEmbedding& emb) {
  WorkloadMoments m = reflected_moments(model.net());
  const double p = model.repair_share();
  const auto& eta = model.vacation();

  const double v1 = eta.moment(2) / (2.0 * eta.mean());
  const double v2 = eta.moment(3) / (3.0 * eta.mean());
  double u1 = 0.0;
  double u2 = 0.0;
  if (p > 0.0) {
    const double xi = model.repair_law().mean();
    u1 = (emb.moment_plus(2) - emb.moment_minus(2)) / (2.0 * xi);
    u2 = (emb.moment_plus(3) - emb.moment_minus(3)) / (3.0 * xi);
  }
  m.mixture_mean = p * u1 + (1.0 - p) * v1;
  m.mixture_second_moment = p * u2 + (1.0 - p) * v2;
  m.mean = m.reflected_mean + m.mixture_mean;
  m.variance = m.reflected_variance + m.mixture_second_moment - m.mixture_mean * m.mixture_mean;
  m.variance_as_printed =
      m.reflected_part_as_printed + (1.0 - p) * (v2 - v1 * v1) + p * (u2 - u1 * u1);
  return m;
}

double busy_period_mean(const QueueModel& model, double mean_workload) {
  const double d1 = varphi_derivatives_at_zero(model.net()).first;
  return mean_workload / ((1.0 - model.repair_share()) * d1);
}

double n_order_busy_mean(int n, double mean_start, double p, double d1) {
  if (n < 0) throw std::invalid_argument("n must be nonnegative");
  if (!(p >= 0.0 && p < 1.0)) throw std::invalid_argument("p must lie in [0, 1)");
  if (!(d1 > 0.0)) throw std::invalid_argument("drain margin must be positive");
  return n * mean_start / ((1.0 - p) * d1);
}

namespace {

double transient_raw(const QueueModel& model, const BreakdownEmbedding& emb, double x,
                     double gamma, double root, double theta) {
  const double p = model.repair_share();
  const auto& eta = model.vacation();
  double bracket = (1.0 - p) * eta.one_minus_lst(theta) / eta.one_minus_lst(root);
  if (p > 0.0) bracket += p * emb.lst_gap(theta) / emb.lst_gap(root);
  const double vp = varphi(model.net(), theta);
  return gamma / (vp - gamma) * (std::exp(-root * x) * bracket - std::exp(-theta * x));
}

}  // namespace

double transient_lst(const QueueModel& model, const BreakdownEmbedding& emb, double x,
                     double gamma, double theta) {
  if (!(x >= 0.0)) throw std::invalid_argument("transient_lst needs x >= 0");
  if (!(gamma > 0.0)) throw std::invalid_argument("transient_lst needs gamma > 0");
  if (!(theta >= 0.0)) throw std::invalid_argument("transient_lst needs theta >= 0");
  const double root = inverse_varphi(model.net(), gamma);
  if (std::abs(theta - root) <= kSingularityStep) {
    return 0.5 * (transient_raw(model, emb, x, gamma, root, root + kSingularityStep) +
                  transient_raw(model, emb, x, gamma, root, root - kSingularityStep));
  }
  return transient_raw(model, emb, x, gamma, root, theta);
}

const char* to_string(CorrelationMode mode) {
  return mode == CorrelationMode::derived ? "derived" : "as_printed";
}

double expected_w_exp(const QueueModel& model, const BreakdownEmbedding& emb, double s,
                      CorrelationMode mode) {
  if (!(s > 0.0)) throw std::invalid_argument("expected_w_exp needs s > 0");
  const auto& net = model.net();
  const double d1 = varphi_derivatives_at_zero(net).first;
  const double p = model.repair_share();
  const auto& eta = model.vacation();
  const double vp = varphi(net, s);
  const double ratio = d1 / vp;

  // The printed expansion is d/ds of the stationary LST, which is
  // -E(W e^{-sW}); derived mode flips its sign.
  double expansion = (ratio - s * d1 * varphi_prime(net, s) / (vp * vp)) *
                     mixture_lst(model, emb, s);
  expansion += ratio * (1.0 - p) / eta.mean() *
               (eta.weighted_lst(s) - eta.one_minus_lst(s) / s);
  if (p > 0.0) {
    expansion += ratio * p / model.repair_law().mean() *
                 (emb.weighted_plus(s) - emb.weighted_minus(s) - emb.lst_gap(s) / s);
  }
  return mode == CorrelationMode::derived ? -expansion : expansion;
}

double correlation_laplace(const QueueModel& model, const BreakdownEmbedding& emb,
                           const WorkloadMoments& mom, double theta, CorrelationMode mode) {
  if (!(theta > 0.0)) throw std::invalid_argument("correlation_laplace needs theta > 0");
  if (!(mom.variance > 0.0)) throw std::invalid_argument("correlation_laplace needs v > 0");
  const auto& net = model.net();
  const double d1 = varphi_derivatives_at_zero(net).first;
  const double p = model.repair_share();
  const double q = inverse_varphi(net, theta);
  const auto& eta = model.vacation();
  double k = (1.0 - p) * eta.mean() / eta.one_minus_lst(q);
  if (p > 0.0) k += p * model.repair_law().mean() / emb.lst_gap(q);
  const double v = mom.variance;
  return 1.0 / theta - mom.mean * d1 / (v * theta * theta) +
         expected_w_exp(model, emb, q, mode) * k / (v * theta);
}

SteadyStateSummary summarize(const QueueModel& model, const BreakdownEmbedding& emb,
                             std::span<const double> theta_grid) {
  const auto rates = rates_and_p(model);
  const auto mom = moments(model, emb);
  SteadyStateSummary s;
  s.p = rates.p;
  s.failure_rate = rates.failure_rate;
  s.vacation_rate = rates.vacation_rate;
  s.mean = mom.mean;
  s.variance = mom.variance;
  s.busy_mean = busy_period_mean(model, mom.mean);
  s.lst.grid.assign(theta_grid.begin(), theta_grid.end());
  s.lst.provenance =
      rates.p > 0.0 && emb.kind() == EmbeddingKind::empirical ? Provenance::empirical
                                                               : Provenance::analytic;
  for (double th : theta_grid) {
    s.lst.values.push_back(steady_state_lst(model, emb, th));
    s.lst.se.push_back(steady_state_lst_se(model, emb, th));
  }
  return s;
}

SteadyStateSummary summarize_reflected(const NetInputModel& net,
                                       std::span<const double> theta_grid) {
  const auto mom = reflected_moments(net);
  SteadyStateSummary s;
  s.mean = mom.mean;
  s.variance = mom.variance;
  s.lst = analytic_lst([&net](double th) { return pk_lst(net, th); }, theta_grid);
  return s;
}

MixtureSampler::MixtureSampler(const QueueModel& model, const BreakdownEmbedding& emb,
                               RepairResidualMode mode)
    : model_(&model), emb_(&emb), mode_(mode), p_(model.repair_share()) {
  if (p_ > 0.0 && emb.kind() == EmbeddingKind::none) {
    throw std::invalid_argument("mixture sampler needs a breakdown embedding when p > 0");
  }
  if (p_ > 0.0 && mode_ == RepairResidualMode::general &&
      emb.kind() == EmbeddingKind::empirical) {
    double acc = 0.0;
    for (const auto& pr : emb.pairs()) {
      acc += pr.after - pr.before;
      cumulative_gap_.push_back(acc);
    }
  }
}

double MixtureSampler::repair_part(RandomStream& rng) const {
  const auto& emb = *emb_;
  if (emb.kind() == EmbeddingKind::independent) {
    // W⁻ and ξ are independent here, so both modes reduce to the same draw.
    return emb.before_law().sample(rng) + emb.repair_law().sample_residual(rng);
  }
  const auto& pairs = emb.pairs();
  if (mode_ == RepairResidualMode::independent_repair) {
    const auto& pr = pairs[rng.index(pairs.size())];
    return pr.before + model_->repair_law().sample_residual(rng);
  }
  const double u = rng.uniform() * cumulative_gap_.back();
  const auto it = std::upper_bound(cumulative_gap_.begin(), cumulative_gap_.end(), u);
  const auto idx = std::min<std::size_t>(it - cumulative_gap_.begin(), pairs.size() - 1);
  const auto& pr = pairs[idx];
  return pr.before + rng.uniform() * (pr.after - pr.before);
}

double MixtureSampler::operator()(RandomStream& rng) const {
  if (p_ > 0.0 && rng.uniform() < p_) return repair_part(rng);
  return model_->vacation().sample_residual(rng);
}

std::vector<double> decomposition_samples(const QueueModel& model, const BreakdownEmbedding& emb,
                                          std::span<const double> reflected,
                                          RepairResidualMode mode, RandomStream& rng) {
  MixtureSampler draw(model, emb, mode);
  std::vector<double> out;
  out.reserve(reflected.size());
  for (double r : reflected) out.push_back(r + draw(rng));
  return out;
}

}  // namespace lfq
