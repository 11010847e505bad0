#include "lfq/embedding.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "lfq/statistics.hpp"

namespace lfq {

BreakdownEmbedding BreakdownEmbedding::none() { return BreakdownEmbedding(); }

BreakdownEmbedding BreakdownEmbedding::independent(JumpDistribution before,
                                                   JumpDistribution repair) {
  BreakdownEmbedding e;
  e.kind_ = EmbeddingKind::independent;
  e.before_ = std::move(before);
  e.repair_ = std::move(repair);
  return e;
}

BreakdownEmbedding BreakdownEmbedding::empirical(std::vector<BreakdownPair> pairs) {
  if (pairs.empty()) throw std::invalid_argument("empirical embedding needs breakdown pairs");
  for (const auto& pr : pairs) {
    if (!(pr.before >= 0.0) || !(pr.after > pr.before) || !std::isfinite(pr.after)) {
      throw std::invalid_argument("breakdown pair must satisfy 0 <= W- < W+");
    }
  }
  BreakdownEmbedding e;
  e.kind_ = EmbeddingKind::empirical;
  e.pairs_ = std::move(pairs);
  return e;
}

void BreakdownEmbedding::require_data() const {
  if (kind_ == EmbeddingKind::none) {
    throw std::logic_error("breakdown embedding required: the model has failures (p > 0)");
  }
}

const JumpDistribution& BreakdownEmbedding::before_law() const {
  if (kind_ != EmbeddingKind::independent) throw std::logic_error("embedding has no analytic W- law");
  return *before_;
}

const JumpDistribution& BreakdownEmbedding::repair_law() const {
  if (kind_ != EmbeddingKind::independent) throw std::logic_error("embedding has no analytic repair law");
  return *repair_;
}

double BreakdownEmbedding::weighted_minus(double theta) const {
  require_data();
  if (kind_ == EmbeddingKind::independent) return before_->weighted_lst(theta);
  double acc = 0.0;
  for (const auto& pr : pairs_) acc += pr.before * std::exp(-theta * pr.before);
  return acc / static_cast<double>(pairs_.size());
}

double BreakdownEmbedding::weighted_plus(double theta) const {
  require_data();
  if (kind_ == EmbeddingKind::independent) {
    // E[(X + Y) e^{-θ(X+Y)}] for independent X, Y.
    return before_->weighted_lst(theta) * repair_->lst(theta) +
           before_->lst(theta) * repair_->weighted_lst(theta);
  }
  double acc = 0.0;
  for (const auto& pr : pairs_) acc += pr.after * std::exp(-theta * pr.after);
  return acc / static_cast<double>(pairs_.size());
}

double BreakdownEmbedding::moment_minus(int k) const {
  require_data();
  if (k < 1 || k > 3) throw std::invalid_argument("moment order must be 1, 2 or 3");
  if (kind_ == EmbeddingKind::independent) return before_->moment(k);
  double acc = 0.0;
  for (const auto& pr : pairs_) acc += std::pow(pr.before, k);
  return acc / static_cast<double>(pairs_.size());
}

double BreakdownEmbedding::moment_plus(int k) const {
  require_data();
  if (k < 1 || k > 3) throw std::invalid_argument("moment order must be 1, 2 or 3");
  if (kind_ == EmbeddingKind::independent) {
    const auto& x = *before_;
    const auto& y = *repair_;
    switch (k) {
      case 1:
        return x.moment(1) + y.moment(1);
      case 2:
        return x.moment(2) + 2.0 * x.moment(1) * y.moment(1) + y.moment(2);
      default:
        return x.moment(3) + 3.0 * x.moment(2) * y.moment(1) +
               3.0 * x.moment(1) * y.moment(2) + y.moment(3);
    }
  }
  double acc = 0.0;
  for (const auto& pr : pairs_) acc += std::pow(pr.after, k);
  return acc / static_cast<double>(pairs_.size());
}

double BreakdownEmbedding::lst_gap_se(double theta) const {
  require_data();
  if (kind_ == EmbeddingKind::independent) return 0.0;
  std::vector<double> terms;
  terms.reserve(pairs_.size());
  for (const auto& pr : pairs_) {
    terms.push_back(std::exp(-theta * pr.before) * -std::expm1(-theta * (pr.after - pr.before)));
  }
  if (terms.size() < 2) return std::numeric_limits<double>::infinity();
  if (terms.size() < 2 * kBatchCount) return standard_error(terms);
  return batch_means(terms).se;
}

}  // namespace lfq
