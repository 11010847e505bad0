#pragma once

#include <complex>
#include <functional>
#include <span>
#include <string>
#include <vector>

namespace lfq {

enum class Provenance { analytic, empirical };

const char* to_string(Provenance provenance);

/// A transform tabulated on a θ-grid. Analytic curves carry zero SEs.
struct LstCurve {
  std::vector<double> grid;
  std::vector<double> values;
  std::vector<double> se;
  Provenance provenance = Provenance::analytic;
};

/// 16 log-spaced points in [0.05, 8].
std::vector<double> default_theta_grid();

/// 64 equally spaced points in (0, upper].
std::vector<double> default_x_grid(double upper);

/// Tabulates an analytic LST.
LstCurve analytic_lst(const std::function<double(double)>& lst, std::span<const double> grid);

/// Sample means of e^{-θs} with i.i.d. standard errors. Throws
/// std::invalid_argument for empty or negative samples.
LstCurve empirical_lst(std::span<const double> samples, std::span<const double> grid);

/// As empirical_lst, with batch-means standard errors for correlated streams.
LstCurve empirical_lst_batched(std::span<const double> samples, std::span<const double> grid);

using ComplexTransform = std::function<std::complex<double>(std::complex<double>)>;

/// Euler summation over the Bromwich trapezoid, 2M+1 = 51 transform
/// evaluations per point.
struct EulerParameters {
  double a = 18.4;
  int n = 38;
  int m = 12;
};

/// f(t) from its Laplace transform F. Throws std::domain_error when a
/// transform value is not finite, naming t.
double invert_laplace(const ComplexTransform& transform, double t, const EulerParameters& params = {});

/// CDF on `x_grid` from the LST of a nonnegative variable, by inverting
/// lst(s)/s. Values are returned unclamped; every x must be positive.
std::vector<double> invert_lst_to_cdf(const ComplexTransform& lst, std::span<const double> x_grid,
                                      const EulerParameters& params = {});

/// Clamps to [0, 1] and enforces monotonicity by a running maximum.
std::vector<double> clamp_cdf(std::vector<double> cdf);

}  // namespace lfq
