#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace lfq {

inline constexpr double kConfidenceLevel = 0.999;
inline constexpr std::size_t kBatchCount = 32;
inline constexpr std::size_t kMinimumSamples = 30;

struct Interval {
  double mean;
  double halfwidth;

  bool contains(double x) const { return x >= mean - halfwidth && x <= mean + halfwidth; }
};

/// Two-sided standard normal quantile for the given confidence level.
double normal_quantile(double level);
/// Two-sided Student-t quantile with `dof` degrees of freedom.
double student_quantile(double level, double dof);

double sample_mean(std::span<const double> x);
/// Unbiased sample variance.
double sample_variance(std::span<const double> x);
/// sd / √n.
double standard_error(std::span<const double> x);

/// Normal-approximation CI for i.i.d. samples. Throws std::invalid_argument
/// for fewer than 30 samples.
Interval ci_mean(std::span<const double> x, double level = kConfidenceLevel);

/// Batch-means estimate for a serially correlated stream: the trailing
/// n mod batches samples are dropped.
struct BatchEstimate {
  double mean;
  double se;
  std::size_t batches;
};

BatchEstimate batch_means(std::span<const double> x, std::size_t batches = kBatchCount);

/// Batch-means CI with a Student-t quantile on batches - 1 degrees of freedom.
Interval batch_means_ci(std::span<const double> x, double level = kConfidenceLevel,
                        std::size_t batches = kBatchCount);

/// Batch-means CI for the variance: batch means of squared deviations from
/// the overall mean, rescaled by n/(n-1).
Interval batch_variance_ci(std::span<const double> x, double level = kConfidenceLevel,
                           std::size_t batches = kBatchCount);

/// Two-sample Kolmogorov-Smirnov distance. Both inputs must be sorted and
/// nonempty; throws std::invalid_argument otherwise.
double ks_distance(std::span<const double> a, std::span<const double> b);

/// Sorted copy.
std::vector<double> sorted(std::span<const double> x);

/// Empirical CDF of sorted samples at x (fraction of samples ≤ x).
double empirical_cdf(std::span<const double> sorted_samples, double x);

/// Least-squares slope of y on x.
double regression_slope(std::span<const double> x, std::span<const double> y);

}  // namespace lfq
