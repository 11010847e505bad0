#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "lfq/io.hpp"
#include "lfq/statistics.hpp"
#include "lfq/verification.hpp"

using namespace lfq;

namespace {

const auto kExp1 = JumpDistribution::exponential(1.0);
const auto kUnit = JumpDistribution::deterministic(1.0);

NetInputModel config_a() { return NetInputModel(0.0, 0.5, kExp1, 1.0); }

QueueModel queue(const NetInputModel& net, double failure_rate, const JumpDistribution& repair,
                 double w0 = 0.0) {
  return QueueModel(net, failure_rate, repair, VacationJumpLaw(VacationMode::direct_eta, kUnit, net),
                    w0);
}

// Brute-force two-sample KS: evaluate both ECDFs at every pooled point.
double ks_brute_force(const std::vector<double>& a, const std::vector<double>& b) {
  auto ecdf = [](const std::vector<double>& s, double x) {
    return static_cast<double>(std::count_if(s.begin(), s.end(), [&](double v) { return v <= x; })) /
           s.size();
  };
  double worst = 0.0;
  for (const auto* s : {&a, &b}) {
    for (double x : *s) worst = std::max(worst, std::abs(ecdf(a, x) - ecdf(b, x)));
  }
  return worst;
}

std::vector<double> uniforms(std::size_t n, std::uint64_t stream, double shift = 0.0) {
  RandomStream rng(123, stream);
  std::vector<double> x(n);
  for (auto& v : x) v = rng.uniform() + shift;
  return x;
}

}  // namespace

TEST(KolmogorovSmirnov, Examples) {
  const auto u = sorted(uniforms(100000, 0));
  EXPECT_EQ(ks_distance(u, u), 0.0);
  const auto v = sorted(uniforms(100000, 1));
  const double d = ks_distance(u, v);
  EXPECT_LE(d, 0.01);
  EXPECT_LE(d, 1.95 * std::sqrt(2.0 / 100000));
  const auto w = sorted(uniforms(100000, 2, 0.5));
  EXPECT_NEAR(ks_distance(u, w), 0.5, 0.01);
}

TEST(KolmogorovSmirnov, MatchesBruteForceWithTies) {
  RandomStream rng(5, 0);
  std::vector<double> a(200), b(150);
  // Rounded values force many ties within and across samples.
  for (auto& x : a) x = std::round(rng.exponential(1.0) * 10) / 10;
  for (auto& x : b) x = std::round(rng.exponential(0.8) * 10) / 10;
  EXPECT_NEAR(ks_distance(sorted(a), sorted(b)), ks_brute_force(a, b), 1e-15);
}

TEST(KolmogorovSmirnov, RejectsBadInput) {
  const std::vector<double> empty;
  const std::vector<double> one = {1.0};
  const std::vector<double> unsorted = {2.0, 1.0};
  EXPECT_THROW(ks_distance(empty, one), std::invalid_argument);
  EXPECT_THROW(ks_distance(one, empty), std::invalid_argument);
  EXPECT_THROW(ks_distance(unsorted, one), std::invalid_argument);
}

TEST(ConfidenceIntervals, Examples) {
  const std::vector<double> constant(100, 2.5);
  const auto c = ci_mean(constant);
  EXPECT_EQ(c.mean, 2.5);
  EXPECT_EQ(c.halfwidth, 0.0);

  RandomStream rng(9, 0);
  std::vector<double> x(1000000);
  for (auto& v : x) v = rng.exponential(1.0);
  const auto e = ci_mean(x);
  EXPECT_NEAR(e.mean, 1.0, e.halfwidth);
  EXPECT_NEAR(e.halfwidth, 3.29e-3, 0.1e-3);

  EXPECT_THROW(ci_mean(std::vector<double>(10, 1.0)), std::invalid_argument);
  EXPECT_NEAR(normal_quantile(0.999), 3.2905, 1e-4);
  EXPECT_NEAR(student_quantile(0.999, 31), 3.6335, 1e-3);
  EXPECT_TRUE(e.contains(e.mean));
  EXPECT_FALSE(e.contains(e.mean + 2 * e.halfwidth));
}

TEST(ConfidenceIntervals, BatchMeans) {
  RandomStream rng(10, 0);
  std::vector<double> iid(64000);
  for (auto& v : iid) v = rng.exponential(1.0);
  const auto b = batch_means(iid);
  EXPECT_EQ(b.batches, kBatchCount);
  EXPECT_NEAR(b.se / standard_error(iid), 1.0, 0.4);
  const auto ci = batch_means_ci(iid);
  EXPECT_NEAR(ci.halfwidth, student_quantile(0.999, 31) * b.se, 1e-12);

  const auto var = batch_variance_ci(iid);
  EXPECT_NEAR(var.mean, sample_variance(iid), 1e-9);
  EXPECT_TRUE(var.contains(1.0));

  // Coverage on a correlated stream: AR(1) with known mean 0.
  int covered = 0;
  for (int rep = 0; rep < 200; ++rep) {
    RandomStream r(11, rep);
    std::vector<double> ar(32000);
    double s = 0.0;
    for (auto& v : ar) {
      s = 0.8 * s + (r.uniform() - 0.5);
      v = s;
    }
    covered += batch_means_ci(ar, 0.95).contains(0.0);
  }
  EXPECT_GE(covered, 175);  // nominal 190 of 200
}

TEST(ConfidenceIntervals, RegressionSlope) {
  const std::vector<double> x = {1, 2, 3, 5};
  const std::vector<double> y = {2.5, 5.0, 7.5, 12.5};
  EXPECT_NEAR(regression_slope(x, y), 2.5, 1e-14);
}

TEST(Reports, VerdictFollowsThreshold) {
  const auto pass = make_report("x", {1.0}, {1.1}, {0.1}, 1.0, 1.0, "boundary");
  EXPECT_TRUE(pass.pass);
  const auto fail = make_report("x", {1.0}, {1.2}, {0.1}, 2.0, 1.0, "");
  EXPECT_FALSE(fail.pass);
  const auto nan = make_report("x", {1.0}, {1.2}, {0.1}, std::nan(""), 1.0, "");
  EXPECT_FALSE(nan.pass);
  EXPECT_EQ(parse_budget("default"), Budget::standard);
  EXPECT_EQ(parse_budget("smoke"), Budget::smoke);
  EXPECT_EQ(parse_budget("thorough"), Budget::thorough);
  EXPECT_THROW(parse_budget("huge"), std::invalid_argument);
  EXPECT_DOUBLE_EQ(budget_scale(Budget::smoke), 0.1);
}

TEST(Martingale, DeterministicPathPasses) {
  const NetInputModel drain(0.0, 0.0, kExp1, 1.0);
  const auto model = queue(drain, 0.0, kUnit, 1.0);
  const std::vector<double> thetas = {0.5, 1.0, 2.0};
  const std::vector<double> times = {1.0, 10.0};
  const auto r = martingale_zero_test(model, thetas, times, 50, StreamSeeds(1));
  EXPECT_TRUE(r.pass);
  for (double m : r.empirical) EXPECT_NEAR(m, 0.0, 1e-12);
}

TEST(Martingale, ConfigBPassesAndCorruptedExponentFails) {
  const auto model = queue(config_a(), 0.0, kUnit);
  const std::vector<double> one = {1.0};
  const std::vector<double> ten = {10.0};
  const auto good = martingale_zero_test(model, one, ten, 10000, StreamSeeds(2));
  EXPECT_TRUE(good.pass) << good.statistic;
  const auto bad = martingale_zero_test(model, one, ten, 10000, StreamSeeds(2), 1.05);
  EXPECT_FALSE(bad.pass) << bad.statistic;
}

TEST(Suite, ReproducibleAndSorted) {
  const auto model = queue(config_a(), 0.0, kUnit);
  const SuiteTarget target{"queue", model.net(), model};
  const SuiteOptions options{Budget::smoke, 77, false};
  const auto first = run_verification_suite(target, options);
  const auto second = run_verification_suite(target, options);
  ASSERT_FALSE(first.empty());
  const OutputHeader header{"feedfacecafebeef", 77};
  EXPECT_EQ(reports_json(header, "queue", Budget::smoke, first, false),
            reports_json(header, "queue", Budget::smoke, second, false));
  for (std::size_t i = 0; i + 1 < first.size(); ++i) EXPECT_LT(first[i].name, first[i + 1].name);
  for (const auto& r : first) {
    EXPECT_EQ(r.pass, r.statistic <= r.threshold) << r.name;
    EXPECT_NE(r.seed, 0u) << r.name;
  }
}

TEST(Suite, PerturbedTheoryFailsEveryCheck) {
  const auto net = config_a();
  const SuiteTarget reflected{"reflected", net, std::nullopt};
  const auto reports = run_verification_suite(reflected, {Budget::smoke, 5, true});
  ASSERT_FALSE(reports.empty());
  EXPECT_EQ(count_failures(reports), reports.size());
  for (const auto& r : reports) EXPECT_FALSE(r.pass) << r.name;
}

TEST(Suite, TableListsEveryCheck) {
  const auto r = make_report("alpha_check", {1.0}, {1.0}, {0.0}, 0.0, 1.0, "");
  const std::vector<ComparisonReport> reports = {r};
  const auto table = format_table(reports);
  EXPECT_NE(table.find("alpha_check"), std::string::npos);
  EXPECT_NE(table.find("PASS"), std::string::npos);
}
