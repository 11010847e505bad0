#pragma once

#include <optional>
#include <span>
#include <vector>

#include "lfq/embedding.hpp"
#include "lfq/net_input.hpp"
#include "lfq/queue_model.hpp"
#include "lfq/transforms.hpp"

namespace lfq {

struct RatesAndShare {
  double p;
  double failure_rate;
  double vacation_rate;
};

/// p = λ_R Eξ / φ̄'(0) and λ_V = (1 - p) φ̄'(0) / Eη.
RatesAndShare rates_and_p(const QueueModel& model);

struct Throughputs {
  double repair;
  double vacation;
};

/// Long-run workload added per unit time by repairs and by vacations.
Throughputs throughput_limits(const QueueModel& model);

/// Stationary LST of the reflected net input, θ φ̄'(0) / φ̄(θ); 1 at θ = 0.
template <class T>
T pk_lst(const NetInputModel& net, T theta) {
  if (theta == T(0.0)) return T(1.0);
  detail::check_exponent_argument(theta);
  const double d1 = varphi_derivatives_at_zero(net).first;
  // φ̄(θ)/θ written so that small θ loses nothing to cancellation.
  const T slope = net.drain_rate() - net.jump_rate() * net.jump_law().one_minus_lst(theta) / theta;
  return d1 / slope;
}

/// Transform of the repair contribution U, density P(W⁻ < x ≤ W⁺)/Eξ.
template <class T>
T repair_part_lst(const QueueModel& model, const BreakdownEmbedding& emb, T theta) {
  if (theta == T(0.0)) return T(1.0);
  return emb.lst_gap(theta) / (theta * model.repair_law().mean());
}

/// Transform of the vacation contribution V, the stationary excess of η.
template <class T>
T vacation_part_lst(const QueueModel& model, T theta) {
  if (theta == T(0.0)) return T(1.0);
  const auto& eta = model.vacation();
  return eta.one_minus_lst(theta) / (theta * eta.mean());
}

/// p·lst_U(θ) + (1 - p)·lst_V(θ). The repair term is skipped when p = 0,
/// so an empty embedding is fine for vacation-only models.
template <class T>
T mixture_lst(const QueueModel& model, const BreakdownEmbedding& emb, T theta) {
  const double p = model.repair_share();
  T out = (1.0 - p) * vacation_part_lst(model, theta);
  if (p > 0.0) out += p * repair_part_lst(model, emb, theta);
  return out;
}

/// Stationary LST of the workload: reflected factor times the mixture.
template <class T>
T steady_state_lst(const QueueModel& model, const BreakdownEmbedding& emb, T theta) {
  return pk_lst(model.net(), theta) * mixture_lst(model, emb, theta);
}

/// Standard error of steady_state_lst carried by an empirical embedding.
double steady_state_lst_se(const QueueModel& model, const BreakdownEmbedding& emb, double theta);

struct WorkloadMoments {
  double mean;
  /// Variance by differentiating the product form twice at θ = 0.
  double variance;
  /// The closed-form variance exactly as printed in the source formula.
  double variance_as_printed;
  double reflected_mean;
  double reflected_variance;
  /// Reflected term of the printed variance; equals -reflected_variance.
  double reflected_part_as_printed;
  /// First two moments of the mixture p·U + (1 - p)·V.
  double mixture_mean;
  double mixture_second_moment;
};

/// Moments of the reflected net input alone.
WorkloadMoments reflected_moments(const NetInputModel& net);

/// Moments of the stationary workload; W± moments come from `emb` when p > 0.
WorkloadMoments moments(const QueueModel& model, const BreakdownEmbedding& emb);

/// E T = E W / ((1 - p) φ̄'(0)).
double busy_period_mean(const QueueModel& model, double mean_workload);

/// E T_n = n E B / ((1 - p) d1).
double n_order_busy_mean(int n, double mean_start, double p, double d1);

/// Half-width of the symmetric perturbation used at the removable singularity.
inline constexpr double kSingularityStep = 1e-6;

/// E_x e^{-θ W_T} for T ~ Exp(γ) independent of the path.
double transient_lst(const QueueModel& model, const BreakdownEmbedding& emb, double x,
                     double gamma, double theta);

enum class CorrelationMode {
  /// E(W e^{-sW}) = -d/ds E e^{-sW}.
  derived,
  /// The expansion with the sign it is printed with, kept for comparison.
  as_printed,
};

const char* to_string(CorrelationMode mode);

/// E(W e^{-sW}) for the stationary workload.
double expected_w_exp(const QueueModel& model, const BreakdownEmbedding& emb, double s,
                      CorrelationMode mode = CorrelationMode::derived);

/// ∫₀^∞ c(t) e^{-θt} dt for the stationary autocorrelation c(t) of W.
double correlation_laplace(const QueueModel& model, const BreakdownEmbedding& emb,
                           const WorkloadMoments& mom, double theta,
                           CorrelationMode mode = CorrelationMode::derived);

struct SteadyStateSummary {
  double p = 0.0;
  double failure_rate = 0.0;
  std::optional<double> vacation_rate;
  double mean = 0.0;
  double variance = 0.0;
  std::optional<double> busy_mean;
  LstCurve lst;
};

SteadyStateSummary summarize(const QueueModel& model, const BreakdownEmbedding& emb,
                             std::span<const double> theta_grid);

/// Summary of the reflected queue (no vacations, no failures).
SteadyStateSummary summarize_reflected(const NetInputModel& net,
                                       std::span<const double> theta_grid);

enum class RepairResidualMode {
  /// U = W⁻ + residual ξ, valid when ξ is independent of the workload.
  independent_repair,
  /// Pick a pair with probability ∝ ξ_k, then a uniform point of [W⁻, W⁺].
  general,
};

/// Draws of the mixture p·U + (1 - p)·V, one per call.
class MixtureSampler {
 public:
  MixtureSampler(const QueueModel& model, const BreakdownEmbedding& emb,
                 RepairResidualMode mode = RepairResidualMode::independent_repair);
  double operator()(RandomStream& rng) const;

 private:
  double repair_part(RandomStream& rng) const;

  const QueueModel* model_;
  const BreakdownEmbedding* emb_;
  RepairResidualMode mode_;
  double p_;
  std::vector<double> cumulative_gap_;
};

/// W_dec = R + M with R taken from `reflected` and M drawn independently.
std::vector<double> decomposition_samples(const QueueModel& model, const BreakdownEmbedding& emb,
                                          std::span<const double> reflected,
                                          RepairResidualMode mode, RandomStream& rng);

}  // namespace lfq
