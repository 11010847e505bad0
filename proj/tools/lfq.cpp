// Command-line front end: analyze, simulate and verify.
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "lfq/analytics.hpp"
#include "lfq/config.hpp"
#include "lfq/io.hpp"
#include "lfq/simulation.hpp"
#include "lfq/transforms.hpp"
#include "lfq/verification.hpp"
#include "json.hpp"

namespace fs = std::filesystem;
using namespace lfq;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitChecksFailed = 1;
constexpr int kExitUsage = 2;

struct CommonFlags {
  std::string config;
  std::optional<std::uint64_t> seed;
  std::string out;
};

struct Loaded {
  ExperimentConfig cfg;
  SuiteTarget target;
  OutputHeader header;
  fs::path out;
};

Loaded load(const CommonFlags& flags) {
  auto cfg = load_config(flags.config);
  if (flags.seed) cfg.run.seed = *flags.seed;
  auto target = cfg.target();
  fs::path out = flags.out.empty() ? fs::path(cfg.output.directory) : fs::path(flags.out);
  OutputHeader header{cfg.hash, cfg.run.seed};
  return {std::move(cfg), std::move(target), std::move(header), std::move(out)};
}

std::vector<double> theta_grid_of(const ExperimentConfig& cfg) {
  return cfg.run.theta_grid.empty() ? default_theta_grid() : cfg.run.theta_grid;
}

SamplingPlan plan_of(const ExperimentConfig& cfg, const SuiteTarget& target) {
  SamplingPlan plan = target.model ? default_plan(*target.model, cfg.run.samples)
                                   : default_plan(target.net, cfg.run.samples);
  if (cfg.run.warmup) plan.warmup = *cfg.run.warmup;
  if (cfg.run.spacing) plan.spacing = *cfg.run.spacing;
  return plan;
}

int cmd_analyze(const CommonFlags& flags, const std::string& embedding_file) {
  auto [cfg, target, header, out] = load(flags);
  const auto grid = theta_grid_of(cfg);
  SteadyStateSummary summary;
  WorkloadMoments mom{};
  ComplexTransform lst;
  StreamSeeds seeds(cfg.run.seed);
  std::optional<BreakdownEmbedding> emb;

  if (!target.model) {
    summary = summarize_reflected(target.net, grid);
    mom = reflected_moments(target.net);
    const NetInputModel& net = target.net;
    lst = [&net](std::complex<double> s) { return pk_lst(net, s); };
  } else {
    const auto& model = *target.model;
    emb = BreakdownEmbedding::none();
    if (model.repair_share() > 0.0) {
      std::vector<BreakdownPair> pairs;
      if (!embedding_file.empty()) {
        pairs = read_pairs_csv(embedding_file);
      } else {
        auto rng = seeds.child("analyze_embedding").stream(0);
        pairs = collect_breakdown_pairs(model, plan_of(cfg, target).warmup,
                                        cfg.run.embedding_samples, rng);
      }
      if (cfg.wants("csv")) write_text(out / "embedding.csv", pairs_csv(header, pairs));
      emb = BreakdownEmbedding::empirical(std::move(pairs));
    }
    summary = summarize(model, *emb, grid);
    mom = moments(model, *emb);
    const BreakdownEmbedding& e = *emb;
    lst = [&model, &e](std::complex<double> s) { return steady_state_lst(model, e, s); };
  }

  const auto x_grid = cfg.run.x_grid.empty()
                          ? default_x_grid(summary.mean + 6.0 * std::sqrt(summary.variance))
                          : cfg.run.x_grid;
  const auto cdf = clamp_cdf(invert_lst_to_cdf(lst, x_grid));

  if (cfg.wants("json")) write_text(out / "summary.json", summary_json(header, summary, &mom));
  if (cfg.wants("csv")) {
    write_text(out / "lst.csv", curve_csv(header, summary.lst));
    write_text(out / "cdf.csv", curve_csv(header, "x", x_grid, cdf, {}));
  }
  std::printf("p          %.10g\n", summary.p);
  std::printf("lambda_R   %.10g\n", summary.failure_rate);
  if (summary.vacation_rate) std::printf("lambda_V   %.10g\n", *summary.vacation_rate);
  std::printf("mean       %.10g\n", summary.mean);
  std::printf("variance   %.10g  (as printed: %.10g)\n", summary.variance, mom.variance_as_printed);
  if (summary.busy_mean) std::printf("busy_mean  %.10g\n", *summary.busy_mean);
  std::printf("outputs in %s\n", out.string().c_str());
  return kExitOk;
}

// Event recorder for the reflected queue, which has no QueueModel.
struct EventLog {
  std::vector<PathEvent> events;
  void segment(double, double, double, double) {}
  void event(const PathEvent& e) { events.push_back(e); }
};

int cmd_simulate(const CommonFlags& flags) {
  auto [cfg, target, header, out] = load(flags);
  const auto grid = theta_grid_of(cfg);
  StreamSeeds seeds(cfg.run.seed);
  const double horizon = cfg.run.horizon;

  std::vector<PathEvent> events;
  nlohmann::ordered_json info;
  info["config_hash"] = header.config_hash;
  info["seed"] = header.seed;
  info["horizon"] = horizon;

  auto rng_path = seeds.child("simulate_path").stream(0);
  if (horizon > 0.0 && target.model) {
    const auto path = simulate_path(*target.model, horizon, grid, rng_path);
    events = path.events;
    info["breakdown_count"] = path.breakdown_count;
    info["vacation_count"] = path.vacation_count;
    info["final_workload"] = path.final_workload;
    nlohmann::ordered_json integrals = nlohmann::ordered_json::array();
    for (std::size_t i = 0; i < grid.size(); ++i) {
      integrals.push_back({{"theta", grid[i]}, {"integral", path.exp_integrals[i]},
                           {"kella_whitt", kella_whitt_statistic(path, grid[i], horizon)}});
    }
    info["exp_integrals"] = integrals;
  } else if (horizon > 0.0) {
    EventLog log;
    detail::PathEngine engine(detail::parameters_of(target.net), detail::ZeroPolicy::reflect,
                              0.0, rng_path);
    engine.advance_to(horizon, log);
    events = std::move(log.events);
    info["final_workload"] = engine.workload();
  }
  info["event_count"] = events.size();

  std::vector<double> samples;
  double lag = 0.0;
  if (horizon > 0.0 && cfg.run.samples > 0) {
    auto rng_samples = seeds.child("simulate_samples").stream(0);
    const auto plan = plan_of(cfg, target);
    const auto s = target.model ? stationary_samples(*target.model, plan, rng_samples)
                                : simulate_reflected(target.net, plan, rng_samples);
    samples = s.values;
    lag = s.lag_autocorrelation;
    info["warmup"] = plan.warmup;
    info["spacing"] = plan.spacing;
  }
  info["sample_count"] = samples.size();
  info["lag_autocorrelation"] = lag;

  const std::string column = target.model ? "W" : "R";
  if (cfg.wants("csv")) {
    write_text(out / "events.csv", events_csv(header, events));
    write_text(out / "samples.csv", samples_csv(header, column, samples));
  }
  if (cfg.wants("json")) write_text(out / "simulate.json", info.dump(2) + "\n");
  std::printf("%zu events, %zu samples written to %s\n", events.size(), samples.size(),
              out.string().c_str());
  return kExitOk;
}

int run_suite(const std::string& name, const SuiteTarget& target, const OutputHeader& header,
              const fs::path& out, Budget budget, bool perturb, bool runtime_in_json,
              bool write_json) {
  SuiteOptions options{budget, header.seed, perturb};
  const auto reports = run_verification_suite(target, options);
  std::cout << "== " << name << " (" << target.label << ", budget " << to_string(budget)
            << ", seed " << header.seed << ")\n"
            << format_table(reports);
  if (write_json) {
    write_text(out / ("report_" + name + ".json"),
               reports_json(header, target.label, budget, reports, runtime_in_json));
  }
  return static_cast<int>(count_failures(reports));
}

int cmd_verify(const CommonFlags& flags, bool bundled, const std::string& budget_text,
               bool perturb, bool runtime_in_json) {
  const Budget budget = parse_budget(budget_text);
  int failures = 0;
  if (bundled) {
    const fs::path out = flags.out.empty() ? fs::path("out/verify") : fs::path(flags.out);
    for (const auto& name : bundled_config_names()) {
      auto cfg = parse_config(bundled_config_text(name), "bundled:" + name);
      if (flags.seed) cfg.run.seed = *flags.seed;
      const OutputHeader header{cfg.hash, cfg.run.seed};
      failures += run_suite(name, cfg.target(), header, out, budget, perturb, runtime_in_json,
                            true);
    }
  } else {
    auto [cfg, target, header, out] = load(flags);
    failures += run_suite(fs::path(flags.config).stem().string(), target, header, out, budget,
                          perturb, runtime_in_json, cfg.wants("json"));
  }
  std::cout << (failures == 0 ? "all checks passed\n"
                              : std::to_string(failures) + " check(s) failed\n");
  return failures == 0 ? kExitOk : kExitChecksFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Queue workload with failures and vacation jumps: analyze, simulate, verify"};
  app.require_subcommand(1);

  CommonFlags analyze_flags;
  std::string embedding_file;
  auto* analyze = app.add_subcommand("analyze", "Evaluate closed forms and write summary/LST/CDF");
  analyze->add_option("--config", analyze_flags.config, "YAML configuration")->required();
  analyze->add_option("--seed", analyze_flags.seed, "Override run.seed");
  analyze->add_option("--out", analyze_flags.out, "Output directory");
  analyze->add_option("--embedding", embedding_file,
                      "CSV of breakdown pairs (W_before,W_after) instead of simulating them");

  CommonFlags simulate_flags;
  auto* simulate = app.add_subcommand("simulate", "Simulate a path and stationary samples");
  simulate->add_option("--config", simulate_flags.config, "YAML configuration")->required();
  simulate->add_option("--seed", simulate_flags.seed, "Override run.seed");
  simulate->add_option("--out", simulate_flags.out, "Output directory");

  CommonFlags verify_flags;
  bool bundled = false;
  bool perturb = false;
  bool runtime_in_json = false;
  std::string budget = "default";
  auto* verify = app.add_subcommand("verify", "Run the theory-vs-simulation suite");
  auto* config_opt = verify->add_option("--config", verify_flags.config, "YAML configuration");
  auto* bundled_flag =
      verify->add_flag("--bundled", bundled, "Run the reference configurations A, B and C");
  config_opt->excludes(bundled_flag);
  verify->add_option("--seed", verify_flags.seed, "Override the master seed");
  verify->add_option("--out", verify_flags.out, "Output directory");
  verify->add_option("--budget", budget, "smoke, default or thorough")
      ->check(CLI::IsMember({"smoke", "default", "thorough"}));
  verify->add_flag("--perturb", perturb, "Shift theory values by ten tolerances (control)");
  verify->add_flag("--runtime-in-json", runtime_in_json, "Include runtimes in the JSON report");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*analyze) return cmd_analyze(analyze_flags, embedding_file);
    if (*simulate) return cmd_simulate(simulate_flags);
    if (*verify) {
      if (!bundled && verify_flags.config.empty()) {
        std::cerr << "verify: pass --config PATH or --bundled\n";
        return kExitUsage;
      }
      return cmd_verify(verify_flags, bundled, budget, perturb, runtime_in_json);
    }
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
