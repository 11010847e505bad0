#pragma once

#include <cmath>
#include <complex>
#include <string>
#include <type_traits>
#include <vector>

#include "lfq/random.hpp"

namespace lfq {

namespace detail {

template <class T>
struct is_complex : std::false_type {};
template <class T>
struct is_complex<std::complex<T>> : std::true_type {};

template <class T>
double real_part(const T& z) {
  if constexpr (is_complex<T>::value) {
    return z.real();
  } else {
    return z;
  }
}

/// e^z - 1 without cancellation for small |z|, real or complex.
template <class T>
T expm1(T z) {
  if constexpr (is_complex<T>::value) {
    if (std::abs(z) < 1e-5) return z * (1.0 + z * (0.5 + z / 6.0));
    return std::exp(z) - 1.0;
  } else {
    return std::expm1(z);
  }
}

}  // namespace detail

enum class JumpFamily { exponential, deterministic, erlang, hyperexponential };

const char* to_string(JumpFamily family);

/// Law of a strictly positive jump size: the input jumps of the subordinator,
/// the repair increments and the vacation increments all use this type.
///
/// Transforms are templated on the scalar so that the same code evaluates on
/// the real axis and on the Bromwich contour.
class JumpDistribution {
 public:
  static JumpDistribution exponential(double rate);
  static JumpDistribution deterministic(double value);
  static JumpDistribution erlang(int shape, double rate);
  static JumpDistribution hyperexponential(std::vector<double> weights,
                                           std::vector<double> rates);

  JumpFamily family() const { return family_; }
  int shape() const { return shape_; }
  double value() const { return value_; }
  const std::vector<double>& weights() const { return weights_; }
  const std::vector<double>& rates() const { return rates_; }

  /// Raw moment E Z^k for k in {1, 2, 3}, in closed form.
  double moment(int k) const;
  double mean() const { return moment(1); }

  /// E e^{-θZ}.
  template <class T>
  T lst(T theta) const;

  /// 1 - E e^{-θZ}, computed without cancellation near θ = 0.
  template <class T>
  T one_minus_lst(T theta) const;

  /// E[Z e^{-θZ}] = -d/dθ E e^{-θZ}.
  template <class T>
  T weighted_lst(T theta) const;

  double cdf(double x) const;

  double sample(RandomStream& rng) const;
  /// Draw from the stationary-excess law with density P(Z > x) / E Z.
  double sample_residual(RandomStream& rng) const;
  /// Draw from the length-biased law x dF(x) / E Z.
  double sample_length_biased(RandomStream& rng) const;

  std::string describe() const;

  friend bool operator==(const JumpDistribution&, const JumpDistribution&) = default;

 private:
  JumpDistribution() = default;

  JumpFamily family_ = JumpFamily::deterministic;
  int shape_ = 1;
  double value_ = 0.0;
  std::vector<double> weights_;
  std::vector<double> rates_;
};

template <class T>
T JumpDistribution::lst(T theta) const {
  switch (family_) {
    case JumpFamily::exponential:
      return rates_[0] / (rates_[0] + theta);
    case JumpFamily::deterministic:
      return std::exp(-theta * value_);
    case JumpFamily::erlang: {
      const T q = rates_[0] / (rates_[0] + theta);
      T power(1.0);
      for (int j = 0; j < shape_; ++j) power *= q;
      return power;
    }
    case JumpFamily::hyperexponential: {
      T acc(0.0);
      for (std::size_t i = 0; i < rates_.size(); ++i) {
        acc += weights_[i] * rates_[i] / (rates_[i] + theta);
      }
      return acc;
    }
  }
  return T(1.0);
}

template <class T>
T JumpDistribution::one_minus_lst(T theta) const {
  switch (family_) {
    case JumpFamily::exponential:
      return theta / (rates_[0] + theta);
    case JumpFamily::deterministic:
      return -detail::expm1(-theta * value_);
    case JumpFamily::erlang: {
      // 1 - q^k = (1 - q)(1 + q + ... + q^{k-1}) with 1 - q = θ/(λ+θ).
      const T q = rates_[0] / (rates_[0] + theta);
      T geometric(0.0);
      T power(1.0);
      for (int j = 0; j < shape_; ++j) {
        geometric += power;
        power *= q;
      }
      return theta / (rates_[0] + theta) * geometric;
    }
    case JumpFamily::hyperexponential: {
      T acc(0.0);
      for (std::size_t i = 0; i < rates_.size(); ++i) {
        acc += weights_[i] * theta / (rates_[i] + theta);
      }
      return acc;
    }
  }
  return T(0.0);
}

template <class T>
T JumpDistribution::weighted_lst(T theta) const {
  switch (family_) {
    case JumpFamily::exponential: {
      const T d = rates_[0] + theta;
      return rates_[0] / (d * d);
    }
    case JumpFamily::deterministic:
      return value_ * std::exp(-theta * value_);
    case JumpFamily::erlang: {
      const T q = rates_[0] / (rates_[0] + theta);
      T power(1.0);
      for (int j = 0; j < shape_; ++j) power *= q;
      return static_cast<double>(shape_) * power / (rates_[0] + theta);
    }
    case JumpFamily::hyperexponential: {
      T acc(0.0);
      for (std::size_t i = 0; i < rates_.size(); ++i) {
        const T d = rates_[i] + theta;
        acc += weights_[i] * rates_[i] / (d * d);
      }
      return acc;
    }
  }
  return T(0.0);
}

}  // namespace lfq
