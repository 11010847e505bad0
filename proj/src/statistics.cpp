#include "lfq/statistics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include <boost/math/distributions/normal.hpp>
#include <boost/math/distributions/students_t.hpp>

namespace lfq {

namespace {

void check_level(double level) {
  if (!(level > 0.0 && level < 1.0)) throw std::invalid_argument("confidence level must be in (0, 1)");
}

std::vector<double> batch_averages(std::span<const double> x, std::size_t batches) {
  if (batches < 2) throw std::invalid_argument("batch means needs at least two batches");
  if (x.size() < batches) throw std::invalid_argument("fewer samples than batches");
  const std::size_t per = x.size() / batches;
  std::vector<double> out(batches);
  for (std::size_t b = 0; b < batches; ++b) {
    out[b] = sample_mean(x.subspan(b * per, per));
  }
  return out;
}

}  // namespace

double normal_quantile(double level) {
  check_level(level);
  return boost::math::quantile(boost::math::normal(), 0.5 + level / 2.0);
}

double student_quantile(double level, double dof) {
  check_level(level);
  return boost::math::quantile(boost::math::students_t(dof), 0.5 + level / 2.0);
}

double sample_mean(std::span<const double> x) {
  if (x.empty()) throw std::invalid_argument("mean of an empty sample");
  return std::accumulate(x.begin(), x.end(), 0.0) / static_cast<double>(x.size());
}

double sample_variance(std::span<const double> x) {
  if (x.size() < 2) throw std::invalid_argument("variance needs at least two samples");
  const double m = sample_mean(x);
  double acc = 0.0;
  for (double v : x) acc += (v - m) * (v - m);
  return acc / static_cast<double>(x.size() - 1);
}

double standard_error(std::span<const double> x) {
  return std::sqrt(sample_variance(x) / static_cast<double>(x.size()));
}

Interval ci_mean(std::span<const double> x, double level) {
  if (x.size() < kMinimumSamples) {
    throw std::invalid_argument("ci_mean needs at least 30 samples");
  }
  return {sample_mean(x), normal_quantile(level) * standard_error(x)};
}

BatchEstimate batch_means(std::span<const double> x, std::size_t batches) {
  const auto avg = batch_averages(x, batches);
  return {sample_mean(avg), standard_error(avg), batches};
}

Interval batch_means_ci(std::span<const double> x, double level, std::size_t batches) {
  const auto est = batch_means(x, batches);
  return {est.mean, student_quantile(level, static_cast<double>(batches - 1)) * est.se};
}

Interval batch_variance_ci(std::span<const double> x, double level, std::size_t batches) {
  if (x.size() < 2) throw std::invalid_argument("variance needs at least two samples");
  const double m = sample_mean(x);
  std::vector<double> sq(x.size());
  std::transform(x.begin(), x.end(), sq.begin(), [m](double v) { return (v - m) * (v - m); });
  const double scale = static_cast<double>(x.size()) / static_cast<double>(x.size() - 1);
  const auto est = batch_means(sq, batches);
  return {scale * sample_mean(sq),
          scale * student_quantile(level, static_cast<double>(batches - 1)) * est.se};
}

double ks_distance(std::span<const double> a, std::span<const double> b) {
  if (a.empty() || b.empty()) throw std::invalid_argument("ks_distance needs nonempty samples");
  if (!std::is_sorted(a.begin(), a.end()) || !std::is_sorted(b.begin(), b.end())) {
    throw std::invalid_argument("ks_distance needs sorted samples");
  }
  const double na = static_cast<double>(a.size());
  const double nb = static_cast<double>(b.size());
  std::size_t i = 0;
  std::size_t j = 0;
  double d = 0.0;
  while (i < a.size() && j < b.size()) {
    const double x = std::min(a[i], b[j]);
    while (i < a.size() && a[i] <= x) ++i;
    while (j < b.size() && b[j] <= x) ++j;
    d = std::max(d, std::abs(static_cast<double>(i) / na - static_cast<double>(j) / nb));
  }
  return d;
}

std::vector<double> sorted(std::span<const double> x) {
  std::vector<double> out(x.begin(), x.end());
  std::sort(out.begin(), out.end());
  return out;
}

double empirical_cdf(std::span<const double> sorted_samples, double x) {
  if (sorted_samples.empty()) throw std::invalid_argument("empirical_cdf of an empty sample");
  const auto it = std::upper_bound(sorted_samples.begin(), sorted_samples.end(), x);
  return static_cast<double>(it - sorted_samples.begin()) /
         static_cast<double>(sorted_samples.size());
}

double regression_slope(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2) {
    throw std::invalid_argument("regression needs two or more paired points");
  }
  const double mx = sample_mean(x);
  const double my = sample_mean(y);
  double sxy = 0.0;
  double sxx = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
  }
  if (sxx == 0.0) throw std::invalid_argument("regression needs distinct x values");
  return sxy / sxx;
}

}  // namespace lfq
