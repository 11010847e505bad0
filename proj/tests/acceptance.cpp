// Acceptance run: bundled configurations A, B and C at the default budget,
// one PASS/FAIL line per criterion. Exit status is the number of failed
// criteria (capped at 125).
#include <chrono>
#include <cmath>
#include <cstdio>
#include <map>
#include <string>
#include <vector>

#include "lfq/analytics.hpp"
#include "lfq/config.hpp"
#include "lfq/io.hpp"
#include "lfq/verification.hpp"

using namespace lfq;

namespace {

struct SuiteRun {
  std::vector<ComparisonReport> reports;
  std::string json;
  double seconds;
};

SuiteRun run(const std::string& name) {
  const auto cfg = parse_config(bundled_config_text(name), "bundled:" + name);
  const auto target = cfg.target();
  const auto start = std::chrono::steady_clock::now();
  auto reports = run_verification_suite(target, {Budget::standard, cfg.run.seed, false});
  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  const OutputHeader header{cfg.hash, cfg.run.seed};
  auto json = reports_json(header, target.label, Budget::standard, reports, false);
  return {std::move(reports), std::move(json), seconds};
}

class Criteria {
 public:
  explicit Criteria(const std::map<std::string, SuiteRun>& runs) : runs_(runs) {}

  // Every named check must exist and pass; the detail lists statistic/threshold.
  bool checks(const std::string& config, const std::vector<std::string>& names,
              std::string& detail) const {
    bool ok = true;
    for (const auto& n : names) {
      const ComparisonReport* r = find(config, n);
      char buf[160];
      if (!r) {
        std::snprintf(buf, sizeof buf, " %s/%s missing;", config.c_str(), n.c_str());
        ok = false;
      } else {
        std::snprintf(buf, sizeof buf, " %s/%s %.4g<=%.4g%s;", config.c_str(), n.c_str(),
                      r->statistic, r->threshold, r->pass ? "" : " FAILED");
        ok = ok && r->pass;
      }
      detail += buf;
    }
    return ok;
  }

  const ComparisonReport* find(const std::string& config, const std::string& name) const {
    const auto it = runs_.find(config);
    if (it == runs_.end()) return nullptr;
    for (const auto& r : it->second.reports) {
      if (r.name == name) return &r;
    }
    return nullptr;
  }

 private:
  const std::map<std::string, SuiteRun>& runs_;
};

int report(int number, bool pass, const std::string& title, const std::string& detail) {
  std::printf("criterion %2d: %s  %s:%s\n", number, pass ? "PASS" : "FAIL", title.c_str(),
              detail.c_str());
  return pass ? 0 : 1;
}

}  // namespace

int main() {
  std::map<std::string, SuiteRun> runs;
  double total = 0.0;
  try {
    for (const auto& name : bundled_config_names()) {
      runs[name] = run(name);
      total += runs[name].seconds;
      std::printf("suite %s: %zu checks, %zu failed, %.1f s\n", name.c_str(),
                  runs[name].reports.size(), count_failures(runs[name].reports),
                  runs[name].seconds);
    }
  } catch (const std::exception& e) {
    std::printf("acceptance aborted: %s\n", e.what());
    return 125;
  }
  const Criteria c(runs);
  int failed = 0;
  std::string d;

  d.clear();
  bool ok = c.checks("A", {"pk_lst", "pk_mean", "pk_variance"}, d);
  char buf[96];
  std::snprintf(buf, sizeof buf, " suite time %.1f s <= 60 s;", runs["A"].seconds);
  d += buf;
  failed += report(1, ok && runs["A"].seconds <= 60.0, "reflected steady state (A)", d);

  d.clear();
  ok = c.checks("B", {"stationary_mean", "stationary_variance", "stationary_cdf"}, d);
  failed += report(2, ok, "vacation-only steady state (B)", d);

  d.clear();
  ok = c.checks("C", {"steady_state_lst"}, d);
  failed += report(3, ok, "full-model self-consistency (C)", d);

  d.clear();
  ok = c.checks("C", {"rate_breakdowns", "rate_vacations", "throughput_repair",
                      "throughput_vacation"},
                d);
  failed += report(4, ok, "rate identities (C)", d);

  d.clear();
  ok = c.checks("B", {"busy_period_mean"}, d);
  ok = c.checks("C", {"n_order_busy", "n_order_busy_linearity"}, d) && ok;
  failed += report(5, ok, "busy periods (B, C)", d);

  d.clear();
  ok = c.checks("A", {"first_passage_mean", "first_passage_lst"}, d);
  failed += report(6, ok, "first passage (A)", d);

  d.clear();
  ok = c.checks("C", {"martingale", "martingale_control"}, d);
  failed += report(7, ok, "Kella-Whitt martingale and control (C)", d);

  d.clear();
  ok = c.checks("B", {"transient_lst", "transient_singularity"}, d);
  failed += report(8, ok, "transient transform (B)", d);

  d.clear();
  ok = c.checks("B", {"correlation_transform", "correlation_initial_value"}, d);
  failed += report(9, ok, "correlation transform (B)", d);

  d.clear();
  ok = c.checks("B", {"decomposition_ks"}, d);
  ok = c.checks("C", {"decomposition_ks"}, d) && ok;
  failed += report(10, ok, "decompositions (B, C)", d);

  // The printed variance gives -3 on A's reflected part while the
  // differentiated variance is the one simulation confirms.
  d.clear();
  const NetInputModel a(0.0, 0.5, JumpDistribution::exponential(1.0), 1.0);
  const auto mom = reflected_moments(a);
  const bool negative = std::abs(mom.reflected_part_as_printed - (-3.0)) <= 1e-12;
  std::snprintf(buf, sizeof buf, " printed reflected term %.6g (expected -3);",
                mom.reflected_part_as_printed);
  d += buf;
  ok = c.checks("A", {"moments_as_printed", "pk_variance", "variance_as_printed_rejected"}, d);
  ok = c.checks("B", {"stationary_variance", "variance_as_printed_rejected"}, d) && ok;
  failed += report(11, ok && negative, "printed variance audit (A, B)", d);

  // Reproducibility: rerun everything and compare the JSON byte for byte.
  d.clear();
  bool identical = true;
  double second_total = 0.0;
  for (const auto& [name, first] : runs) {
    const auto again = run(name);
    second_total += again.seconds;
    if (again.json != first.json) {
      identical = false;
      d += " " + name + " reports differ;";
    }
  }
  std::snprintf(buf, sizeof buf, " suite time %.1f s (rerun %.1f s) <= 600 s; reports %s;",
                total, second_total, identical ? "byte-identical" : "differ");
  d += buf;
  failed += report(12, identical && total <= 600.0, "engineering", d);

  std::printf("%d of 12 criteria failed\n", failed);
  return failed;
}
