#include "lfq/transforms.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "lfq/statistics.hpp"

namespace lfq {

const char* to_string(Provenance provenance) {
  return provenance == Provenance::analytic ? "analytic" : "empirical";
}

std::vector<double> default_theta_grid() {
  constexpr int n = 16;
  const double lo = std::log(0.05);
  const double hi = std::log(8.0);
  std::vector<double> grid(n);
  for (int i = 0; i < n; ++i) grid[i] = std::exp(lo + (hi - lo) * i / (n - 1));
  grid.front() = 0.05;
  grid.back() = 8.0;
  return grid;
}

std::vector<double> default_x_grid(double upper) {
  if (!(upper > 0.0)) throw std::invalid_argument("x-grid upper end must be positive");
  constexpr int n = 64;
  std::vector<double> grid(n);
  for (int i = 0; i < n; ++i) grid[i] = upper * (i + 1) / n;
  return grid;
}

LstCurve analytic_lst(const std::function<double(double)>& lst, std::span<const double> grid) {
  LstCurve c;
  c.grid.assign(grid.begin(), grid.end());
  for (double th : grid) c.values.push_back(lst(th));
  c.se.assign(grid.size(), 0.0);
  c.provenance = Provenance::analytic;
  return c;
}

namespace {

LstCurve empirical_impl(std::span<const double> samples, std::span<const double> grid,
                        bool batched) {
  if (samples.empty()) throw std::invalid_argument("empirical_lst needs samples");
  for (double s : samples) {
    if (!(s >= 0.0)) throw std::invalid_argument("empirical_lst needs nonnegative samples");
  }
  LstCurve c;
  c.grid.assign(grid.begin(), grid.end());
  c.provenance = Provenance::empirical;
  std::vector<double> terms(samples.size());
  for (double th : grid) {
    std::transform(samples.begin(), samples.end(), terms.begin(),
                   [th](double s) { return std::exp(-th * s); });
    c.values.push_back(sample_mean(terms));
    if (terms.size() < 2) {
      c.se.push_back(0.0);
    } else if (batched && terms.size() >= 2 * kBatchCount) {
      c.se.push_back(batch_means(terms).se);
    } else {
      c.se.push_back(standard_error(terms));
    }
  }
  return c;
}

}  // namespace

LstCurve empirical_lst(std::span<const double> samples, std::span<const double> grid) {
  return empirical_impl(samples, grid, false);
}

LstCurve empirical_lst_batched(std::span<const double> samples, std::span<const double> grid) {
  return empirical_impl(samples, grid, true);
}

double invert_laplace(const ComplexTransform& transform, double t, const EulerParameters& params) {
  if (!(t > 0.0) || !std::isfinite(t)) {
    throw std::invalid_argument("Laplace inversion needs a positive point");
  }
  const int terms = params.n + params.m;
  const double scale = std::exp(params.a / 2.0) / t;
  auto value_at = [&](int k) {
    const std::complex<double> s((params.a) / (2.0 * t), k * std::numbers::pi / t);
    const std::complex<double> f = transform(s);
    if (!std::isfinite(f.real()) || !std::isfinite(f.imag())) {
      std::ostringstream os;
      os.precision(17);
      os << "Laplace inversion produced a non-finite transform value at x = " << t;
      throw std::domain_error(os.str());
    }
    return f.real();
  };

  // Partial sums s_0 .. s_{n+m} of the alternating series.
  std::vector<double> partial(terms + 1);
  double acc = 0.5 * value_at(0);
  partial[0] = scale * acc;
  for (int k = 1; k <= terms; ++k) {
    acc += (k % 2 ? -1.0 : 1.0) * value_at(k);
    partial[k] = scale * acc;
  }

  // Binomial average of s_n .. s_{n+m}.
  double result = 0.0;
  double weight = std::ldexp(1.0, -params.m);
  for (int j = 0; j <= params.m; ++j) {
    result += weight * partial[params.n + j];
    weight *= static_cast<double>(params.m - j) / (j + 1);
  }
  return result;
}

std::vector<double> invert_lst_to_cdf(const ComplexTransform& lst, std::span<const double> x_grid,
                                      const EulerParameters& params) {
  const ComplexTransform cdf_transform = [&lst](std::complex<double> s) { return lst(s) / s; };
  std::vector<double> out;
  out.reserve(x_grid.size());
  for (double x : x_grid) {
    if (!(x > 0.0)) throw std::invalid_argument("CDF inversion needs positive x values");
    out.push_back(invert_laplace(cdf_transform, x, params));
  }
  return out;
}

std::vector<double> clamp_cdf(std::vector<double> cdf) {
  double running = 0.0;
  for (double& v : cdf) {
    v = std::clamp(v, 0.0, 1.0);
    running = std::max(running, v);
    v = running;
  }
  return cdf;
}

}  // namespace lfq
