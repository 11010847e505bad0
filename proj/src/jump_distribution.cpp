#include "lfq/jump_distribution.hpp"

#include <numeric>
#include <sstream>
#include <stdexcept>

namespace lfq {

namespace {

void require_positive(double v, const char* what) {
  if (!(v > 0.0) || !std::isfinite(v)) {
    throw std::invalid_argument(std::string(what) + " must be a positive finite number");
  }
}

double erlang_draw(int shape, double rate, RandomStream& rng) {
  double acc = 0.0;
  for (int j = 0; j < shape; ++j) acc += rng.exponential(rate);
  return acc;
}

}  // namespace

const char* to_string(JumpFamily family) {
  switch (family) {
    case JumpFamily::exponential:
      return "exponential";
    case JumpFamily::deterministic:
      return "deterministic";
    case JumpFamily::erlang:
      return "erlang";
    case JumpFamily::hyperexponential:
      return "hyperexponential";
  }
  return "unknown";
}

JumpDistribution JumpDistribution::exponential(double rate) {
  require_positive(rate, "exponential rate");
  JumpDistribution d;
  d.family_ = JumpFamily::exponential;
  d.rates_ = {rate};
  d.weights_ = {1.0};
  return d;
}

JumpDistribution JumpDistribution::deterministic(double value) {
  require_positive(value, "deterministic value");
  JumpDistribution d;
  d.family_ = JumpFamily::deterministic;
  d.value_ = value;
  return d;
}

JumpDistribution JumpDistribution::erlang(int shape, double rate) {
  if (shape < 1) throw std::invalid_argument("erlang shape must be a positive integer");
  require_positive(rate, "erlang rate");
  JumpDistribution d;
  d.family_ = JumpFamily::erlang;
  d.shape_ = shape;
  d.rates_ = {rate};
  d.weights_ = {1.0};
  return d;
}

JumpDistribution JumpDistribution::hyperexponential(std::vector<double> weights,
                                                    std::vector<double> rates) {
  if (weights.empty() || weights.size() != rates.size()) {
    throw std::invalid_argument("hyperexponential needs matching, nonempty weights and rates");
  }
  for (double w : weights) require_positive(w, "hyperexponential weight");
  for (double r : rates) require_positive(r, "hyperexponential rate");
  const double total = std::accumulate(weights.begin(), weights.end(), 0.0);
  if (std::abs(total - 1.0) > 1e-12) {
    throw std::invalid_argument("hyperexponential weights must sum to 1");
  }
  JumpDistribution d;
  d.family_ = JumpFamily::hyperexponential;
  d.weights_ = std::move(weights);
  d.rates_ = std::move(rates);
  return d;
}

double JumpDistribution::moment(int k) const {
  if (k < 1 || k > 3) throw std::invalid_argument("moment order must be 1, 2 or 3");
  switch (family_) {
    case JumpFamily::exponential: {
      double factorial = 1.0;
      for (int j = 2; j <= k; ++j) factorial *= j;
      return factorial / std::pow(rates_[0], k);
    }
    case JumpFamily::deterministic:
      return std::pow(value_, k);
    case JumpFamily::erlang: {
      double rising = 1.0;
      for (int j = 0; j < k; ++j) rising *= shape_ + j;
      return rising / std::pow(rates_[0], k);
    }
    case JumpFamily::hyperexponential: {
      double factorial = 1.0;
      for (int j = 2; j <= k; ++j) factorial *= j;
      double acc = 0.0;
      for (std::size_t i = 0; i < rates_.size(); ++i) {
        acc += weights_[i] * factorial / std::pow(rates_[i], k);
      }
      return acc;
    }
  }
  return 0.0;
}

double JumpDistribution::cdf(double x) const {
  if (x < 0.0) return 0.0;
  switch (family_) {
    case JumpFamily::exponential:
      return -std::expm1(-rates_[0] * x);
    case JumpFamily::deterministic:
      return x >= value_ ? 1.0 : 0.0;
    case JumpFamily::erlang: {
      const double lx = rates_[0] * x;
      double term = 1.0;
      double tail = 0.0;
      for (int j = 0; j < shape_; ++j) {
        tail += term;
        term *= lx / (j + 1);
      }
      return 1.0 - std::exp(-lx) * tail;
    }
    case JumpFamily::hyperexponential: {
      double survival = 0.0;
      for (std::size_t i = 0; i < rates_.size(); ++i) {
        survival += weights_[i] * std::exp(-rates_[i] * x);
      }
      return 1.0 - survival;
    }
  }
  return 0.0;
}

double JumpDistribution::sample(RandomStream& rng) const {
  switch (family_) {
    case JumpFamily::exponential:
      return rng.exponential(rates_[0]);
    case JumpFamily::deterministic:
      return value_;
    case JumpFamily::erlang:
      return erlang_draw(shape_, rates_[0], rng);
    case JumpFamily::hyperexponential: {
      double u = rng.uniform();
      std::size_t i = 0;
      while (i + 1 < weights_.size() && u > weights_[i]) {
        u -= weights_[i];
        ++i;
      }
      return rng.exponential(rates_[i]);
    }
  }
  return 0.0;
}

double JumpDistribution::sample_residual(RandomStream& rng) const {
  switch (family_) {
    case JumpFamily::exponential:
      return rng.exponential(rates_[0]);
    case JumpFamily::deterministic:
      return value_ * rng.uniform();
    case JumpFamily::erlang: {
      const int stage = 1 + static_cast<int>(rng.index(static_cast<std::uint64_t>(shape_)));
      return erlang_draw(stage, rates_[0], rng);
    }
    case JumpFamily::hyperexponential: {
      // Phase i is selected with probability proportional to w_i / μ_i.
      double total = 0.0;
      for (std::size_t i = 0; i < rates_.size(); ++i) total += weights_[i] / rates_[i];
      double u = rng.uniform() * total;
      std::size_t i = 0;
      while (i + 1 < rates_.size() && u > weights_[i] / rates_[i]) {
        u -= weights_[i] / rates_[i];
        ++i;
      }
      return rng.exponential(rates_[i]);
    }
  }
  return 0.0;
}

double JumpDistribution::sample_length_biased(RandomStream& rng) const {
  switch (family_) {
    case JumpFamily::exponential:
      return erlang_draw(2, rates_[0], rng);
    case JumpFamily::deterministic:
      return value_;
    case JumpFamily::erlang:
      return erlang_draw(shape_ + 1, rates_[0], rng);
    case JumpFamily::hyperexponential: {
      double total = 0.0;
      for (std::size_t i = 0; i < rates_.size(); ++i) total += weights_[i] / rates_[i];
      double u = rng.uniform() * total;
      std::size_t i = 0;
      while (i + 1 < rates_.size() && u > weights_[i] / rates_[i]) {
        u -= weights_[i] / rates_[i];
        ++i;
      }
      return erlang_draw(2, rates_[i], rng);
    }
  }
  return 0.0;
}

std::string JumpDistribution::describe() const {
  std::ostringstream os;
  os.precision(17);
  os << to_string(family_) << "(";
  switch (family_) {
    case JumpFamily::exponential:
      os << "rate=" << rates_[0];
      break;
    case JumpFamily::deterministic:
      os << "value=" << value_;
      break;
    case JumpFamily::erlang:
      os << "shape=" << shape_ << ", rate=" << rates_[0];
      break;
    case JumpFamily::hyperexponential:
      for (std::size_t i = 0; i < rates_.size(); ++i) {
        if (i) os << ", ";
        os << weights_[i] << "@" << rates_[i];
      }
      break;
  }
  os << ")";
  return os.str();
}

}  // namespace lfq
