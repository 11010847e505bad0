#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "lfq/io.hpp"
#include "lfq/queue_model.hpp"
#include "lfq/simulation.hpp"
#include "lfq/statistics.hpp"

using namespace lfq;

namespace {

const auto kExp1 = JumpDistribution::exponential(1.0);
const auto kUnit = JumpDistribution::deterministic(1.0);

NetInputModel config_a() { return NetInputModel(0.0, 0.5, kExp1, 1.0); }
NetInputModel drain_only() { return NetInputModel(0.0, 0.0, kExp1, 1.0); }

QueueModel with_vacations(const NetInputModel& net, double failure_rate,
                          const JumpDistribution& repair, double w0 = 0.0) {
  return QueueModel(net, failure_rate, repair, VacationJumpLaw(VacationMode::direct_eta, kUnit, net),
                    w0);
}

QueueModel config_b() { return with_vacations(config_a(), 0.0, kUnit); }
QueueModel config_c() { return with_vacations(config_a(), 0.2, JumpDistribution::exponential(2.0)); }

const std::vector<double> kThetas = {0.5, 1.0, 2.0};

}  // namespace

TEST(SimulatePath, DeterministicDrain) {
  const auto model = with_vacations(drain_only(), 0.0, kUnit, 5.0);
  RandomStream rng(1, 0);
  const std::vector<double> times = {0.0, 1.5, 3.0};
  const auto path = simulate_path(model, 3.0, {}, rng, times);
  EXPECT_TRUE(path.events.empty());
  EXPECT_EQ(path.vacation_count, 0u);
  EXPECT_NEAR(path.final_workload, 2.0, 1e-15);
  ASSERT_EQ(path.samples.size(), 3u);
  EXPECT_EQ(path.samples[0], 5.0);
  EXPECT_NEAR(path.samples[1], 3.5, 1e-15);
  EXPECT_NEAR(path.samples[2], 2.0, 1e-15);
}

TEST(SimulatePath, Sawtooth) {
  const auto model = with_vacations(drain_only(), 0.0, kUnit, 1.0);
  RandomStream rng(1, 0);
  const auto path = simulate_path(model, 2.5, {}, rng);
  ASSERT_EQ(path.events.size(), 2u);
  EXPECT_EQ(path.vacation_count, 2u);
  EXPECT_NEAR(path.events[0].time, 1.0, 1e-15);
  EXPECT_NEAR(path.events[1].time, 2.0, 1e-15);
  for (const auto& e : path.events) {
    EXPECT_EQ(e.kind, EventKind::vacation_trigger);
    EXPECT_EQ(e.w_before, 0.0);
    EXPECT_EQ(e.size, 1.0);
  }
  EXPECT_NEAR(path.final_workload, 0.5, 1e-15);
  ASSERT_EQ(path.vacation_jumps.size(), 2u);
  ASSERT_EQ(path.busy_periods.size(), 1u);
  EXPECT_NEAR(path.busy_periods[0], 1.0, 1e-15);
}

TEST(SimulatePath, EmptyStartTriggersVacationAtTimeZero) {
  const auto model = with_vacations(drain_only(), 0.0, kUnit, 0.0);
  RandomStream rng(1, 0);
  const auto path = simulate_path(model, 0.5, {}, rng);
  ASSERT_EQ(path.events.size(), 1u);
  EXPECT_EQ(path.events[0].time, 0.0);
  EXPECT_NEAR(path.final_workload, 0.5, 1e-15);
}

TEST(SimulatePath, RejectsBadArguments) {
  RandomStream rng(1, 0);
  EXPECT_THROW(simulate_path(config_b(), 0.0, {}, rng), std::invalid_argument);
  EXPECT_THROW(simulate_path(config_b(), -1.0, {}, rng), std::invalid_argument);
  const std::vector<double> late = {2.0};
  EXPECT_THROW(simulate_path(config_b(), 1.0, {}, rng, late), std::invalid_argument);
  const std::vector<double> negative_theta = {-1.0};
  EXPECT_THROW(simulate_path(config_b(), 1.0, negative_theta, rng), std::invalid_argument);
}

TEST(QueueModelInvariants, RejectsUnstableRepairLoad) {
  // p = 0.6·1/0.5 > 1.
  EXPECT_THROW(with_vacations(config_a(), 0.6, kUnit), std::invalid_argument);
  // p = 1 exactly.
  EXPECT_THROW(with_vacations(config_a(), 0.5, kUnit), std::invalid_argument);
  EXPECT_THROW(with_vacations(config_a(), -0.1, kUnit), std::invalid_argument);
  EXPECT_THROW(with_vacations(config_a(), 0.1, kUnit, -1.0), std::invalid_argument);
  EXPECT_NEAR(config_c().repair_share(), 0.2, 1e-15);
  EXPECT_EQ(config_b().repair_share(), 0.0);
}

TEST(SimulatePath, ConfigCBreakdownRate) {
  RandomStream rng(2024, 0);
  const double horizon = 1e5;
  const auto path = simulate_path(config_c(), horizon, {}, rng);
  const double rate = path.breakdown_count / horizon;
  EXPECT_NEAR(rate, 0.2, 3 * std::sqrt(0.2 / horizon));
  EXPECT_EQ(path.breakdown_count, path.breakdowns.size());
  EXPECT_EQ(path.vacation_count, path.vacation_jumps.size());
  // Vacation and throughput rates, 5% band.
  EXPECT_NEAR(path.vacation_count / horizon, 0.4, 0.02);
  double repaired = 0.0, vacation_work = 0.0;
  for (const auto& b : path.breakdowns) repaired += b.after - b.before;
  for (double eta : path.vacation_jumps) vacation_work += eta;
  EXPECT_NEAR(repaired / horizon, 0.1, 0.005);
  EXPECT_NEAR(vacation_work / horizon, 0.4, 0.02);
}

TEST(SimulatePath, SamplePathInvariants) {
  RandomStream rng(77, 1);
  const auto model = config_c().with_initial_workload(2.0);
  const auto path = simulate_path(model, 2000.0, kThetas, rng);
  ASSERT_FALSE(path.events.empty());
  double t_prev = 0.0, w_prev = model.initial_workload();
  std::size_t breakdowns = 0, vacations = 0;
  for (const auto& e : path.events) {
    EXPECT_GE(e.time, t_prev);
    EXPECT_GE(e.w_before, 0.0);
    EXPECT_GT(e.w_after, 0.0);
    EXPECT_EQ(e.w_after, e.w_before + e.size);
    // Affine drain at slope -(r - a) between events.
    EXPECT_NEAR(e.w_before, w_prev - (e.time - t_prev), 1e-9);
    if (e.kind == EventKind::breakdown) {
      ASSERT_LT(breakdowns, path.breakdowns.size());
      EXPECT_EQ(path.breakdowns[breakdowns].before, e.w_before);
      EXPECT_EQ(path.breakdowns[breakdowns].after, e.w_after);
      ++breakdowns;
    }
    if (e.kind == EventKind::vacation_trigger) {
      EXPECT_EQ(e.w_before, 0.0);
      EXPECT_EQ(path.vacation_jumps[vacations], e.size);
      ++vacations;
    }
    t_prev = e.time;
    w_prev = e.w_after;
  }
  EXPECT_EQ(breakdowns, path.breakdown_count);
  EXPECT_EQ(vacations, path.vacation_count);
  EXPECT_NEAR(path.final_workload, w_prev - (path.horizon - t_prev), 1e-9);
}

TEST(SimulatePath, ExponentialIntegralsAreExact) {
  RandomStream rng(5, 0);
  const double horizon = 50.0;
  const auto path = simulate_path(config_c().with_initial_workload(1.0), horizon, kThetas, rng);
  for (std::size_t i = 0; i < kThetas.size(); ++i) {
    EXPECT_NEAR(exp_integral_from_log(path, kThetas[i], horizon), path.exp_integrals[i],
                1e-9 * path.exp_integrals[i]);
  }
  // Independent oracle: trapezoid rule on a fine resampling of the same path.
  RandomStream replay(5, 0);
  std::vector<double> times;
  const double dt = 1e-3;
  for (double t = 0.0; t <= horizon + 1e-12; t += dt) times.push_back(std::min(t, horizon));
  const auto fine =
      simulate_path(config_c().with_initial_workload(1.0), horizon, kThetas, replay, times);
  ASSERT_EQ(fine.events.size(), path.events.size());
  for (std::size_t i = 0; i < kThetas.size(); ++i) {
    double trap = 0.0;
    for (std::size_t k = 0; k + 1 < times.size(); ++k) {
      trap += 0.5 * (times[k + 1] - times[k]) *
              (std::exp(-kThetas[i] * fine.samples[k]) + std::exp(-kThetas[i] * fine.samples[k + 1]));
    }
    EXPECT_NEAR(trap, path.exp_integrals[i], 1e-2 * path.exp_integrals[i]);
  }
}

TEST(SimulatePath, SameSeedSamePath) {
  RandomStream a(9, 4), b(9, 4), c(9, 5);
  const auto pa = simulate_path(config_c(), 500.0, kThetas, a);
  const auto pb = simulate_path(config_c(), 500.0, kThetas, b);
  const auto pc = simulate_path(config_c(), 500.0, kThetas, c);
  const OutputHeader header{"0123456789abcdef", 9};
  EXPECT_EQ(events_csv(header, pa.events), events_csv(header, pb.events));
  EXPECT_NE(events_csv(header, pa.events), events_csv(header, pc.events));
}

TEST(Stationary, ConfigBMean) {
  RandomStream rng(31, 0);
  const auto s = stationary_samples(config_b(), default_plan(config_b(), 100000), rng);
  ASSERT_EQ(s.values.size(), 100000u);
  EXPECT_NEAR(sample_mean(s.values), 1.5, 0.05);
  EXPECT_LT(std::abs(s.lag_autocorrelation), 0.2);
  for (double w : s.values) ASSERT_GE(w, 0.0);
}

TEST(Stationary, ReflectedConfigA) {
  RandomStream rng(32, 0);
  const auto s = simulate_reflected(config_a(), default_plan(config_a(), 100000), rng);
  EXPECT_NEAR(sample_mean(s.values), 1.0, 0.05);
  EXPECT_NEAR(sample_variance(s.values), 3.0, 0.2);
}

TEST(Stationary, ReflectedPureDriftStaysAtZero) {
  RandomStream rng(33, 0);
  const auto s = simulate_reflected(drain_only(), {10.0, 100, 1.0}, rng);
  for (double r : s.values) EXPECT_EQ(r, 0.0);
}

TEST(Stationary, StationaryStartKeepsTheMean) {
  const auto model = config_b();
  RandomStream rng(34, 0);
  const auto reference = stationary_samples(model, default_plan(model, 20000), rng);
  const auto ref_ci = batch_means_ci(reference.values);
  // Restart from draws of the empirical law and look again a short time later.
  std::vector<double> later;
  for (std::size_t i = 0; i < 20000; ++i) {
    RandomStream r(35, i);
    const double w0 = reference.values[r.index(reference.values.size())];
    const auto path = simulate_path(model.with_initial_workload(w0), 2.0, {}, r);
    later.push_back(path.final_workload);
  }
  const auto later_ci = ci_mean(later);
  EXPECT_LT(std::abs(later_ci.mean - ref_ci.mean), later_ci.halfwidth + ref_ci.halfwidth);
}

TEST(BusyPeriod, DeterministicDrain) {
  RandomStream rng(1, 0);
  const auto b = simulate_busy_period(with_vacations(drain_only(), 0.0, kUnit), 2.0, rng);
  EXPECT_FALSE(b.censored);
  EXPECT_NEAR(b.duration, 2.0, 1e-15);
}

TEST(BusyPeriod, CensoredAtEventCap) {
  RandomStream rng(1, 0);
  const auto b = simulate_busy_period(config_c(), 1e6, rng, 10);
  EXPECT_TRUE(b.censored);
}

TEST(BusyPeriod, StationaryStartMeanConfigB) {
  const auto model = config_b();
  RandomStream rng(41, 0);
  const auto starts = stationary_samples(model, default_plan(model, 10000), rng);
  std::vector<double> d;
  for (std::size_t i = 0; i < starts.values.size(); ++i) {
    RandomStream r(42, i);
    const auto b = simulate_busy_period(model, starts.values[i], r);
    ASSERT_FALSE(b.censored);
    d.push_back(b.duration);
  }
  EXPECT_NEAR(sample_mean(d), 3.0, 0.15);
}

TEST(BusyPeriod, StationaryStartMeanConfigC) {
  const auto model = config_c();
  RandomStream rng(43, 0);
  const auto starts = stationary_samples(model, default_plan(model, 10000), rng);
  std::vector<double> d;
  for (std::size_t i = 0; i < starts.values.size(); ++i) {
    RandomStream r(44, i);
    d.push_back(simulate_busy_period(model, starts.values[i], r).duration);
  }
  const double target = sample_mean(starts.values) / 0.4;
  EXPECT_NEAR(sample_mean(d) / target, 1.0, 0.05);
}

TEST(NOrderBusy, Trivial) {
  RandomStream rng(1, 0);
  const auto b = simulate_n_order_busy(with_vacations(drain_only(), 0.0, kUnit), 1, kUnit, rng);
  EXPECT_NEAR(b.duration, 1.0, 1e-15);
}

TEST(NOrderBusy, MeanAndLinearity) {
  const auto model = with_vacations(config_a(), 0.2, JumpDistribution::exponential(2.0));
  auto mean_for = [&](int n) {
    std::vector<double> d;
    for (std::size_t i = 0; i < 10000; ++i) {
      RandomStream r(50 + n, i);
      d.push_back(simulate_n_order_busy(model, n, kUnit, r).duration);
    }
    return ci_mean(d);
  };
  const auto three = mean_for(3);
  EXPECT_NEAR(three.mean / 7.5, 1.0, 0.05);
  const auto six = mean_for(6);
  EXPECT_NEAR(six.mean, 2.0 * three.mean, six.halfwidth + 2.0 * three.halfwidth);
}

TEST(FirstPassage, Trivial) {
  RandomStream rng(1, 0);
  EXPECT_NEAR(simulate_first_passage(drain_only(), 1.0, rng), 1.0, 1e-15);
}

TEST(FirstPassage, ConfigAMeanAndTransform) {
  std::vector<double> t(100000), e(100000);
  for (std::size_t i = 0; i < t.size(); ++i) {
    RandomStream r(60, i);
    t[i] = simulate_first_passage(config_a(), 1.0, r);
    e[i] = std::exp(-0.5 * t[i]);
  }
  EXPECT_NEAR(sample_mean(t) / 2.0, 1.0, 0.02);
  EXPECT_NEAR(sample_mean(e), std::exp(-std::sqrt(0.5)), 4 * standard_error(e));
}

TEST(KilledSample, ImmediateKill) {
  std::vector<double> w;
  for (std::size_t i = 0; i < 2000; ++i) {
    RandomStream r(70, i);
    w.push_back(killed_sample(config_b(), 1.0, 1e6, r));
  }
  EXPECT_NEAR(sample_mean(w), 1.0, 1e-2);
}

TEST(KilledSample, TransformAtZeroIsOne) {
  double acc = 0.0;
  for (std::size_t i = 0; i < 1000; ++i) {
    RandomStream r(71, i);
    acc += std::exp(-0.0 * killed_sample(config_b(), 0.0, 0.5, r));
  }
  EXPECT_EQ(acc / 1000.0, 1.0);
}

TEST(KellaWhitt, ZeroAtTimeZero) {
  RandomStream rng(80, 0);
  const auto path = simulate_path(config_c().with_initial_workload(0.7), 20.0, kThetas, rng);
  for (double theta : kThetas) EXPECT_EQ(kella_whitt_statistic(path, theta, 0.0), 0.0);
}

TEST(KellaWhitt, VanishesAsThetaGoesToZero) {
  RandomStream rng(81, 0);
  const std::vector<double> tiny = {1e-9};
  const auto path = simulate_path(config_c(), 20.0, tiny, rng);
  EXPECT_LT(std::abs(kella_whitt_statistic(path, 1e-9, 20.0)), 1e-6);
}

TEST(KellaWhitt, UsageErrors) {
  RandomStream rng(82, 0);
  const auto path = simulate_path(config_c(), 5.0, kThetas, rng);
  EXPECT_THROW(kella_whitt_statistic(path, 0.7, 1.0), std::invalid_argument);
  EXPECT_THROW(kella_whitt_statistic(path, 1.0, 6.0), std::invalid_argument);
}

TEST(KellaWhitt, ZeroMeanConfigC) {
  std::vector<double> m(10000);
  const std::vector<double> one = {1.0};
  for (std::size_t i = 0; i < m.size(); ++i) {
    RandomStream r(83, i);
    const auto path = simulate_path(config_c(), 10.0, one, r);
    m[i] = kella_whitt_statistic(path, 1.0, 10.0);
  }
  EXPECT_LT(std::abs(sample_mean(m)), 4 * standard_error(m));
}

TEST(KellaWhitt, DeterministicPathIsExactlyZero) {
  // No randomness: drain from 1, sawtooth of unit vacations.
  RandomStream rng(1, 0);
  const auto path = simulate_path(with_vacations(drain_only(), 0.0, kUnit, 1.0), 3.5, kThetas, rng);
  for (double theta : kThetas) {
    for (double t : {0.5, 1.0, 2.25, 3.5}) {
      EXPECT_NEAR(kella_whitt_statistic(path, theta, t), 0.0, 1e-12) << theta << " " << t;
    }
  }
}

TEST(WorkDuringVacation, PositiveJumpsWithTheRightMean) {
  // V ~ Exp(1) with input rate 0.5 Exp(1) jumps and no drift: the input over
  // one vacation is zero with probability E e^{-0.5 V} = 2/3, so
  // E η = E X_V / P(X_V > 0) = 0.5 / (1/3) = 1.5.
  const auto net = config_a();
  const VacationJumpLaw law(VacationMode::work_during_vacation, kExp1, net);
  EXPECT_NEAR(law.mean(), 1.5, 1e-12);
  RandomStream rng(90, 0);
  std::vector<double> eta(200000);
  for (auto& x : eta) {
    x = law.sample(rng);
    ASSERT_GT(x, 0.0);
  }
  EXPECT_NEAR(sample_mean(eta), 1.5, 4 * standard_error(eta));

  const QueueModel model(net, 0.0, kUnit, law, 0.0);
  RandomStream path_rng(91, 0);
  const auto path = simulate_path(model, 1000.0, {}, path_rng);
  for (double x : path.vacation_jumps) EXPECT_GT(x, 0.0);
}

TEST(BreakdownPairs, PastaAgainstStationaryLaw) {
  const auto model = config_c();
  RandomStream a(100, 0), b(100, 1);
  const auto plan = default_plan(model, 100000);
  const auto pairs = collect_breakdown_pairs(model, plan.warmup, 100000, a);
  ASSERT_EQ(pairs.size(), 100000u);
  std::vector<double> before;
  for (const auto& p : pairs) {
    EXPECT_GT(p.after, p.before);
    before.push_back(p.before);
  }
  const auto w = stationary_samples(model, plan, b);
  EXPECT_LE(ks_distance(sorted(before), sorted(w.values)), 0.02);
  RandomStream c(100, 2);
  EXPECT_THROW(collect_breakdown_pairs(config_b(), 10.0, 10, c), std::invalid_argument);
}

TEST(EventCsv, ColumnsAndHeader) {
  const auto model = with_vacations(drain_only(), 0.0, kUnit, 1.0);
  RandomStream rng(1, 0);
  const auto path = simulate_path(model, 1.5, {}, rng);
  const auto text = events_csv({"00000000000000ff", 3}, path.events);
  EXPECT_EQ(text,
            "# config_hash=00000000000000ff seed=3\n"
            "time,kind,size,W_before,W_after\n"
            "1,vacation_trigger,1,0,1\n");
}
