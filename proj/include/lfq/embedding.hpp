#pragma once

#include <complex>
#include <optional>
#include <span>
#include <vector>

#include "lfq/jump_distribution.hpp"
#include "lfq/simulation.hpp"

namespace lfq {

enum class EmbeddingKind {
  none,         // p = 0, the W± terms never enter
  independent,  // analytic stand-in: W⁻ ~ law, W⁺ = W⁻ + ξ with ξ independent
  empirical,    // sample averages over simulated breakdown pairs
};

/// Law of the workload just before and just after a repair jump in
/// stationarity. Empirical embeddings carry batch-means standard errors
/// because consecutive pairs of one path are correlated.
class BreakdownEmbedding {
 public:
  static BreakdownEmbedding none();
  static BreakdownEmbedding independent(JumpDistribution before, JumpDistribution repair);
  /// Throws std::invalid_argument for an empty list or a pair with W⁺ ≤ W⁻.
  static BreakdownEmbedding empirical(std::vector<BreakdownPair> pairs);

  EmbeddingKind kind() const { return kind_; }
  std::size_t size() const { return pairs_.size(); }
  const std::vector<BreakdownPair>& pairs() const { return pairs_; }
  /// Laws behind an independent embedding; throws for other kinds.
  const JumpDistribution& before_law() const;
  const JumpDistribution& repair_law() const;

  template <class T>
  T lst_minus(T theta) const;
  template <class T>
  T lst_plus(T theta) const;
  /// E e^{-θW⁻} - E e^{-θW⁺}, free of cancellation.
  template <class T>
  T lst_gap(T theta) const;
  /// E[W⁻ e^{-θW⁻}] and E[W⁺ e^{-θW⁺}].
  double weighted_minus(double theta) const;
  double weighted_plus(double theta) const;

  double moment_minus(int k) const;
  double moment_plus(int k) const;

  /// Standard error of lst_gap(θ); zero for analytic embeddings.
  double lst_gap_se(double theta) const;

 private:
  BreakdownEmbedding() = default;
  void require_data() const;

  EmbeddingKind kind_ = EmbeddingKind::none;
  std::optional<JumpDistribution> before_;
  std::optional<JumpDistribution> repair_;
  std::vector<BreakdownPair> pairs_;
};

template <class T>
T BreakdownEmbedding::lst_minus(T theta) const {
  require_data();
  if (kind_ == EmbeddingKind::independent) return before_->lst(theta);
  T acc(0.0);
  for (const auto& pr : pairs_) acc += std::exp(-theta * pr.before);
  return acc / static_cast<double>(pairs_.size());
}

template <class T>
T BreakdownEmbedding::lst_plus(T theta) const {
  require_data();
  if (kind_ == EmbeddingKind::independent) return before_->lst(theta) * repair_->lst(theta);
  T acc(0.0);
  for (const auto& pr : pairs_) acc += std::exp(-theta * pr.after);
  return acc / static_cast<double>(pairs_.size());
}

template <class T>
T BreakdownEmbedding::lst_gap(T theta) const {
  require_data();
  if (kind_ == EmbeddingKind::independent) {
    return before_->lst(theta) * repair_->one_minus_lst(theta);
  }
  T acc(0.0);
  for (const auto& pr : pairs_) {
    acc += std::exp(-theta * pr.before) * -detail::expm1(-theta * (pr.after - pr.before));
  }
  return acc / static_cast<double>(pairs_.size());
}

}  // namespace lfq
