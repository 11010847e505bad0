#include "lfq/config.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <yaml-cpp/yaml.h>

namespace lfq {

namespace {

constexpr std::string_view kConfigA = R"(# Reference configuration A: reflected net input, Exp(1) jumps.
model:
  drift: 0
  jump_rate: 0.5
  jump_law: {family: exponential, rate: 1}
  service_rate: 1
  vacation: {mode: none}
run:
  horizon: 100000
  samples: 100000
  replications: 10000
  seed: 20240601
output:
  directory: out/config_a
  formats: [csv, json]
)";

constexpr std::string_view kConfigB = R"(# Reference configuration B: A plus unit deterministic vacation jumps.
model:
  drift: 0
  jump_rate: 0.5
  jump_law: {family: exponential, rate: 1}
  service_rate: 1
  failure_rate: 0
  vacation: {mode: direct_eta, law: {family: deterministic, value: 1}}
  initial_workload: 0
run:
  horizon: 100000
  samples: 100000
  replications: 10000
  seed: 20240602
output:
  directory: out/config_b
  formats: [csv, json]
)";

constexpr std::string_view kConfigC = R"(# Reference configuration C: B plus failures at rate 0.2 with Exp(2) repairs.
model:
  drift: 0
  jump_rate: 0.5
  jump_law: {family: exponential, rate: 1}
  service_rate: 1
  failure_rate: 0.2
  repair_law: {family: exponential, rate: 2}
  vacation: {mode: direct_eta, law: {family: deterministic, value: 1}}
  initial_workload: 0
run:
  horizon: 100000
  samples: 100000
  replications: 10000
  seed: 20240603
  embedding_samples: 100000
output:
  directory: out/config_c
  formats: [csv, json]
)";

class Reader {
 public:
  explicit Reader(std::string origin) : origin_(std::move(origin)) {}

  [[noreturn]] void fail(const YAML::Node& node, const std::string& message) const {
    std::ostringstream os;
    os << origin_;
    if (node.IsDefined() && node.Mark().line >= 0) os << ":" << node.Mark().line + 1;
    os << ": " << message;
    throw ConfigError(os.str());
  }

  [[noreturn]] void fail_at(int line, const std::string& message) const {
    std::ostringstream os;
    os << origin_;
    if (line > 0) os << ":" << line;
    os << ": " << message;
    throw ConfigError(os.str());
  }

  void require_map(const YAML::Node& node, const std::string& what) const {
    if (!node.IsMap()) fail(node, what + " must be a mapping");
  }

  void check_keys(const YAML::Node& node, const std::set<std::string>& allowed,
                  const std::string& what) const {
    for (const auto& kv : node) {
      const auto key = kv.first.as<std::string>();
      if (!allowed.count(key)) fail(kv.first, "unknown key '" + key + "' in " + what);
    }
  }

  double number(const YAML::Node& node, const std::string& what) const {
    if (!node.IsScalar()) fail(node, what + " must be a number");
    try {
      const double v = node.as<double>();
      if (!std::isfinite(v)) fail(node, what + " must be finite");
      return v;
    } catch (const YAML::Exception&) {
      fail(node, what + " must be a number, got '" + node.Scalar() + "'");
    }
  }

  double number(const YAML::Node& map, const std::string& key, const std::string& what,
                std::optional<double> fallback) const {
    const auto node = map[key];
    if (!node.IsDefined()) {
      if (fallback) return *fallback;
      fail(map, "missing required key '" + key + "' in " + what);
    }
    return number(node, what + "." + key);
  }

  std::size_t count(const YAML::Node& map, const std::string& key, const std::string& what,
                    std::size_t fallback) const {
    const auto node = map[key];
    if (!node.IsDefined()) return fallback;
    const double v = number(node, what + "." + key);
    if (v < 0.0 || v != std::floor(v)) fail(node, what + "." + key + " must be a nonnegative integer");
    return static_cast<std::size_t>(v);
  }

  std::vector<double> numbers(const YAML::Node& node, const std::string& what) const {
    if (!node.IsSequence()) fail(node, what + " must be a list of numbers");
    std::vector<double> out;
    for (const auto& item : node) out.push_back(number(item, what));
    return out;
  }

  JumpDistribution jump(const YAML::Node& node, const std::string& what) const {
    require_map(node, what);
    const auto family_node = node["family"];
    if (!family_node.IsDefined()) fail(node, what + " needs a 'family'");
    const auto family = family_node.as<std::string>();
    try {
      if (family == "exponential") {
        check_keys(node, {"family", "rate"}, what);
        return JumpDistribution::exponential(number(node, "rate", what, std::nullopt));
      }
      if (family == "deterministic") {
        check_keys(node, {"family", "value"}, what);
        return JumpDistribution::deterministic(number(node, "value", what, std::nullopt));
      }
      if (family == "erlang") {
        check_keys(node, {"family", "shape", "rate"}, what);
        const double shape = number(node, "shape", what, std::nullopt);
        if (shape != std::floor(shape)) fail(node["shape"], what + ".shape must be an integer");
        return JumpDistribution::erlang(static_cast<int>(shape),
                                        number(node, "rate", what, std::nullopt));
      }
      if (family == "hyperexponential") {
        check_keys(node, {"family", "weights", "rates"}, what);
        if (!node["weights"].IsDefined() || !node["rates"].IsDefined()) {
          fail(node, what + " needs 'weights' and 'rates'");
        }
        return JumpDistribution::hyperexponential(numbers(node["weights"], what + ".weights"),
                                                  numbers(node["rates"], what + ".rates"));
      }
    } catch (const std::invalid_argument& e) {
      fail(node, what + ": " + e.what());
    }
    fail(family_node, "unknown family '" + family + "' in " + what +
                          " (expected exponential, deterministic, erlang or hyperexponential)");
  }

  const std::string& origin() const { return origin_; }

 private:
  std::string origin_;
};

std::uint64_t parse_seed(const Reader& in, const YAML::Node& node) {
  if (!node.IsScalar()) in.fail(node, "run.seed must be a nonnegative integer");
  const std::string& text = node.Scalar();
  if (text.empty() || !std::all_of(text.begin(), text.end(), [](unsigned char c) {
        return std::isdigit(c) != 0;
      })) {
    in.fail(node, "run.seed must be a nonnegative integer, got '" + text + "'");
  }
  try {
    return std::stoull(text);
  } catch (const std::exception&) {
    in.fail(node, "run.seed does not fit in 64 bits");
  }
}

}  // namespace

std::string config_hash(std::string_view text) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(fnv1a(text)));
  return buf;
}

ExperimentConfig parse_config(std::string_view text, std::string_view origin) {
  Reader in{std::string(origin)};
  YAML::Node root;
  try {
    root = YAML::Load(std::string(text));
  } catch (const YAML::ParserException& e) {
    in.fail_at(e.mark.line + 1, "YAML syntax error: " + e.msg);
  }
  if (!root.IsMap()) in.fail_at(1, "configuration must be a mapping with model, run and output");
  in.check_keys(root, {"model", "run", "output"}, "top level");

  ExperimentConfig cfg;
  cfg.origin = std::string(origin);
  cfg.hash = config_hash(text);

  const auto model = root["model"];
  if (!model.IsDefined()) in.fail_at(1, "missing required block 'model'");
  in.require_map(model, "model");
  in.check_keys(model,
                {"drift", "jump_rate", "jump_law", "service_rate", "failure_rate", "repair_law",
                 "vacation", "initial_workload"},
                "model");
  cfg.model_line_ = model.Mark().line + 1;
  auto& m = cfg.model;
  m.drift = in.number(model, "drift", "model", 0.0);
  m.jump_rate = in.number(model, "jump_rate", "model", std::nullopt);
  if (model["jump_law"].IsDefined()) m.jump_law = in.jump(model["jump_law"], "model.jump_law");
  if (m.jump_rate > 0.0 && !m.jump_law) in.fail(model, "model.jump_law is required when jump_rate > 0");
  m.service_rate = in.number(model, "service_rate", "model", std::nullopt);
  m.failure_rate = in.number(model, "failure_rate", "model", 0.0);
  if (model["repair_law"].IsDefined()) m.repair_law = in.jump(model["repair_law"], "model.repair_law");
  if (m.failure_rate > 0.0 && !m.repair_law) {
    in.fail(model, "model.repair_law is required when failure_rate > 0");
  }
  m.initial_workload = in.number(model, "initial_workload", "model", 0.0);

  const auto vac = model["vacation"];
  if (!vac.IsDefined()) in.fail(model, "missing required key 'vacation' in model");
  in.require_map(vac, "model.vacation");
  in.check_keys(vac, {"mode", "law"}, "model.vacation");
  if (!vac["mode"].IsDefined()) in.fail(vac, "model.vacation needs a 'mode'");
  const auto mode = vac["mode"].as<std::string>();
  if (mode == "none") {
    m.vacation = VacationSetting::none;
    if (vac["law"].IsDefined()) in.fail(vac["law"], "model.vacation.law is not used with mode none");
    if (m.failure_rate > 0.0) in.fail(vac, "failures need a vacation mode (mode none is the reflected queue)");
  } else if (mode == "direct_eta" || mode == "work_during_vacation") {
    m.vacation = mode == "direct_eta" ? VacationSetting::direct_eta
                                      : VacationSetting::work_during_vacation;
    if (!vac["law"].IsDefined()) in.fail(vac, "model.vacation needs a 'law'");
    m.vacation_law = in.jump(vac["law"], "model.vacation.law");
  } else {
    in.fail(vac["mode"], "unknown vacation mode '" + mode +
                             "' (expected none, direct_eta or work_during_vacation)");
  }

  const auto run = root["run"];
  if (!run.IsDefined()) in.fail_at(1, "missing required block 'run' (run.seed is mandatory)");
  in.require_map(run, "run");
  in.check_keys(run,
                {"horizon", "warmup", "samples", "spacing", "replications", "theta_grid",
                 "x_grid", "seed", "embedding_samples"},
                "run");
  auto& r = cfg.run;
  r.horizon = in.number(run, "horizon", "run", r.horizon);
  if (r.horizon < 0.0) in.fail(run["horizon"], "run.horizon must be nonnegative");
  if (run["warmup"].IsDefined()) {
    r.warmup = in.number(run["warmup"], "run.warmup");
    if (*r.warmup < 0.0) in.fail(run["warmup"], "run.warmup must be nonnegative");
  }
  if (run["spacing"].IsDefined()) {
    r.spacing = in.number(run["spacing"], "run.spacing");
    if (!(*r.spacing > 0.0)) in.fail(run["spacing"], "run.spacing must be positive");
  }
  r.samples = in.count(run, "samples", "run", r.samples);
  r.replications = in.count(run, "replications", "run", r.replications);
  r.embedding_samples = in.count(run, "embedding_samples", "run", r.embedding_samples);
  if (run["theta_grid"].IsDefined()) {
    r.theta_grid = in.numbers(run["theta_grid"], "run.theta_grid");
    for (double th : r.theta_grid) {
      if (!(th > 0.0)) in.fail(run["theta_grid"], "run.theta_grid values must be positive");
    }
  }
  if (run["x_grid"].IsDefined()) {
    r.x_grid = in.numbers(run["x_grid"], "run.x_grid");
    for (double x : r.x_grid) {
      if (!(x > 0.0)) in.fail(run["x_grid"], "run.x_grid values must be positive");
    }
  }
  if (!run["seed"].IsDefined()) in.fail(run, "run.seed is mandatory");
  r.seed = parse_seed(in, run["seed"]);

  const auto output = root["output"];
  if (output.IsDefined()) {
    in.require_map(output, "output");
    in.check_keys(output, {"directory", "formats"}, "output");
    if (output["directory"].IsDefined()) cfg.output.directory = output["directory"].as<std::string>();
    if (output["formats"].IsDefined()) {
      if (!output["formats"].IsSequence()) in.fail(output["formats"], "output.formats must be a list");
      cfg.output.formats.clear();
      for (const auto& f : output["formats"]) {
        const auto name = f.as<std::string>();
        if (name != "csv" && name != "json") {
          in.fail(f, "unknown output format '" + name + "' (expected csv or json)");
        }
        cfg.output.formats.push_back(name);
      }
    }
  }

  cfg.target();  // surfaces instability before any simulation
  return cfg;
}

SuiteTarget ExperimentConfig::target() const {
  const Reader in{origin};
  try {
    const auto jump = model.jump_law.value_or(JumpDistribution::deterministic(1.0));
    NetInputModel net(model.drift, model.jump_rate, jump, model.service_rate);
    if (model.vacation == VacationSetting::none) {
      return SuiteTarget{"reflected", net, std::nullopt};
    }
    const auto mode = model.vacation == VacationSetting::direct_eta
                          ? VacationMode::direct_eta
                          : VacationMode::work_during_vacation;
    VacationJumpLaw vacation(mode, *model.vacation_law, net);
    QueueModel queue(net, model.failure_rate,
                     model.repair_law.value_or(JumpDistribution::deterministic(1.0)), vacation,
                     model.initial_workload);
    return SuiteTarget{"queue", net, queue};
  } catch (const std::invalid_argument& e) {
    in.fail_at(model_line_, std::string("model: ") + e.what());
  }
}

bool ExperimentConfig::wants(std::string_view format) const {
  return std::find(output.formats.begin(), output.formats.end(), format) != output.formats.end();
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError(path.string() + ": cannot open configuration file");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str(), path.string());
}

std::string_view bundled_config_text(std::string_view name) {
  if (name == "A") return kConfigA;
  if (name == "B") return kConfigB;
  if (name == "C") return kConfigC;
  throw std::invalid_argument("unknown bundled configuration '" + std::string(name) + "'");
}

std::vector<std::string> bundled_config_names() { return {"A", "B", "C"}; }

}  // namespace lfq
