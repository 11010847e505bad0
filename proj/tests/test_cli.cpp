#include <gtest/gtest.h>

#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "json.hpp"
#include "lfq/config.hpp"

namespace fs = std::filesystem;
using namespace lfq;

namespace {

struct RunResult {
  int exit_code;
  std::string output;
};

RunResult run_cli(const std::string& args) {
  const std::string cmd = std::string(LFQ_CLI_PATH) + " " + args + " 2>&1";
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) throw std::runtime_error("popen failed");
  std::string out;
  char buf[4096];
  while (std::size_t n = std::fread(buf, 1, sizeof buf, pipe)) out.append(buf, n);
  const int status = pclose(pipe);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    const auto* info = ::testing::UnitTest::GetInstance()->current_test_info();
    dir_ = fs::temp_directory_path() / (std::string("lfq_cli_") + info->name());
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  fs::path write_config(const std::string& name, const std::string& text) {
    const auto p = dir_ / name;
    std::ofstream(p) << text;
    return p;
  }

  fs::path source(const std::string& rel) const { return fs::path(LFQ_SOURCE_DIR) / rel; }

  fs::path dir_;
};

const char* kSmallB = R"(model:
  drift: 0
  jump_rate: 0.5
  jump_law: {family: exponential, rate: 1}
  service_rate: 1
  vacation: {mode: direct_eta, law: {family: deterministic, value: 1}}
run:
  horizon: 200
  samples: 2000
  seed: 1
output:
  directory: unused
)";

}  // namespace

TEST(ConfigParsing, UnknownKeyNamesTheLine) {
  const std::string text = "model:\n  drift: 0\n  jump_rate: 0.5\n  jump_lwa: {family: exponential, rate: 1}\n"
                           "  service_rate: 1\nrun:\n  seed: 3\n";
  try {
    parse_config(text, "typo.yaml");
    FAIL() << "expected ConfigError";
  } catch (const ConfigError& e) {
    const std::string msg = e.what();
    EXPECT_NE(msg.find("typo.yaml:4"), std::string::npos) << msg;
    EXPECT_NE(msg.find("jump_lwa"), std::string::npos) << msg;
  }
}

TEST(ConfigParsing, SeedIsMandatory) {
  const std::string text = "model:\n  jump_rate: 0.5\n  jump_law: {family: exponential, rate: 1}\n"
                           "  service_rate: 1\nrun:\n  horizon: 10\n";
  EXPECT_THROW(parse_config(text, "noseed.yaml"), ConfigError);
}

TEST(ConfigParsing, JumpFamiliesAndHash) {
  const std::string text = R"(model:
  jump_rate: 0.2
  jump_law: {family: hyperexponential, weights: [0.5, 0.5], rates: [1, 3]}
  service_rate: 1
  failure_rate: 0.1
  repair_law: {family: erlang, shape: 2, rate: 4}
  vacation: {mode: work_during_vacation, law: {family: exponential, rate: 2}}
run:
  seed: 99
  theta_grid: [0.5, 1, 2]
)";
  const auto cfg = parse_config(text, "ok.yaml");
  EXPECT_EQ(cfg.run.seed, 99u);
  EXPECT_EQ(cfg.run.theta_grid.size(), 3u);
  EXPECT_EQ(cfg.hash, config_hash(text));
  EXPECT_EQ(cfg.hash.size(), 16u);
  const auto target = cfg.target();
  ASSERT_TRUE(target.model.has_value());
  EXPECT_EQ(target.model->vacation().mode(), VacationMode::work_during_vacation);
  EXPECT_EQ(target.model->repair_law().family(), JumpFamily::erlang);
  EXPECT_NE(config_hash(text), config_hash(text + " "));
}

TEST(ConfigParsing, BundledFilesMatchShippedText) {
  for (const auto& name : bundled_config_names()) {
    std::string lower = name;
    for (auto& c : lower) c = static_cast<char>(std::tolower(c));
    const auto path = fs::path(LFQ_SOURCE_DIR) / "configs" / ("config_" + lower + ".yaml");
    EXPECT_EQ(slurp(path), bundled_config_text(name)) << path;
    EXPECT_NO_THROW(parse_config(bundled_config_text(name), name).target());
  }
}

TEST_F(CliTest, AnalyzeConfigB) {
  const auto r = run_cli("analyze --config " + source("configs/config_b.yaml").string() +
                         " --out " + dir_.string());
  ASSERT_EQ(r.exit_code, 0) << r.output;
  const auto j = nlohmann::json::parse(slurp(dir_ / "summary.json"));
  EXPECT_NEAR(j["mean"].get<double>(), 1.5, 1e-12);
  EXPECT_NEAR(j["variance"].get<double>(), 3.0 + 1.0 / 12.0, 1e-12);
  EXPECT_NEAR(j["busy_mean"].get<double>(), 3.0, 1e-12);
  EXPECT_NEAR(j["lambda_V"].get<double>(), 0.5, 1e-12);
  EXPECT_EQ(j["p"].get<double>(), 0.0);
  ASSERT_EQ(j["lst"].size(), 16u);
  for (const char* key : {"theta", "value", "se"}) EXPECT_TRUE(j["lst"][0].contains(key));
  for (const char* file : {"summary.json", "lst.csv", "cdf.csv"}) {
    EXPECT_TRUE(fs::exists(dir_ / file)) << file;
  }
  EXPECT_EQ(slurp(dir_ / "lst.csv").rfind("# config_hash=", 0), 0u);
  EXPECT_NE(slurp(dir_ / "lst.csv").find("theta,value,se"), std::string::npos);
}

TEST_F(CliTest, AnalyzeReflectedConfigA) {
  const auto r = run_cli("analyze --config " + source("configs/config_a.yaml").string() +
                         " --out " + dir_.string());
  ASSERT_EQ(r.exit_code, 0) << r.output;
  const auto j = nlohmann::json::parse(slurp(dir_ / "summary.json"));
  EXPECT_NEAR(j["mean"].get<double>(), 1.0, 1e-12);
  EXPECT_NEAR(j["variance"].get<double>(), 3.0, 1e-12);
  EXPECT_TRUE(j["busy_mean"].is_null());
}

TEST_F(CliTest, AnalyzeWithEmbeddingFile) {
  std::ofstream(dir_ / "pairs.csv") << "# comment\nW_before,W_after\n0.5,1.0\n1.0,1.25\n0.0,0.5\n";
  const std::string text = R"(model:
  jump_rate: 0.5
  jump_law: {family: exponential, rate: 1}
  service_rate: 1
  failure_rate: 0.2
  repair_law: {family: exponential, rate: 2}
  vacation: {mode: direct_eta, law: {family: deterministic, value: 1}}
run:
  seed: 4
)";
  const auto cfg = write_config("c.yaml", text);
  const auto r = run_cli("analyze --config " + cfg.string() + " --embedding " +
                         (dir_ / "pairs.csv").string() + " --out " + dir_.string());
  ASSERT_EQ(r.exit_code, 0) << r.output;
  const auto j = nlohmann::json::parse(slurp(dir_ / "summary.json"));
  EXPECT_NEAR(j["p"].get<double>(), 0.2, 1e-12);
  EXPECT_EQ(j["lst_provenance"].get<std::string>(), "empirical");
}

TEST_F(CliTest, UnstableConfigExitsTwo) {
  const std::string text = R"(model:
  jump_rate: 0.5
  jump_law: {family: exponential, rate: 1}
  service_rate: 1
  failure_rate: 1.0
  repair_law: {family: deterministic, value: 1}
  vacation: {mode: direct_eta, law: {family: deterministic, value: 1}}
run:
  seed: 1
)";
  const auto cfg = write_config("unstable.yaml", text);
  for (const char* cmd : {"analyze", "simulate", "verify"}) {
    const auto r = run_cli(std::string(cmd) + " --config " + cfg.string() + " --out " +
                           (dir_ / "out").string());
    EXPECT_EQ(r.exit_code, 2) << cmd << ": " << r.output;
    EXPECT_NE(r.output.find("unstable"), std::string::npos) << r.output;
  }
  // Rejected before any simulation or output.
  EXPECT_FALSE(fs::exists(dir_ / "out"));
}

TEST_F(CliTest, ConfigErrorsExitTwo) {
  const auto bad = write_config("bad.yaml", "model:\n  jump_rate: 0.5\n  colour: red\nrun:\n  seed: 1\n");
  auto r = run_cli("verify --config " + bad.string());
  EXPECT_EQ(r.exit_code, 2);
  EXPECT_NE(r.output.find("bad.yaml:3"), std::string::npos) << r.output;
  r = run_cli("analyze --config " + (dir_ / "missing.yaml").string());
  EXPECT_EQ(r.exit_code, 2);
  r = run_cli("frobnicate");
  EXPECT_EQ(r.exit_code, 2);
  r = run_cli("verify");
  EXPECT_EQ(r.exit_code, 2);
  r = run_cli("verify --bundled --budget enormous");
  EXPECT_EQ(r.exit_code, 2);
}

TEST_F(CliTest, SimulateIsDeterministic) {
  const auto cfg = write_config("b.yaml", kSmallB);
  for (const char* sub : {"one", "two"}) {
    const auto r = run_cli("simulate --config " + cfg.string() + " --seed 1 --out " +
                           (dir_ / sub).string());
    ASSERT_EQ(r.exit_code, 0) << r.output;
  }
  for (const char* file : {"events.csv", "samples.csv", "simulate.json"}) {
    const auto a = slurp(dir_ / "one" / file);
    EXPECT_FALSE(a.empty()) << file;
    EXPECT_EQ(a, slurp(dir_ / "two" / file)) << file;
  }
  const auto events = slurp(dir_ / "one" / "events.csv");
  EXPECT_EQ(events.rfind("# config_hash=" + config_hash(kSmallB) + " seed=1\n", 0), 0u);
  EXPECT_NE(events.find("time,kind,size,W_before,W_after\n"), std::string::npos);

  const auto r = run_cli("simulate --config " + cfg.string() + " --seed 2 --out " +
                         (dir_ / "three").string());
  ASSERT_EQ(r.exit_code, 0);
  EXPECT_NE(slurp(dir_ / "three" / "events.csv"), events);
}

TEST_F(CliTest, SimulateBreakdownCount) {
  std::string text = slurp(source("configs/config_c.yaml"));
  text.replace(text.find("samples: 100000"), 15, "samples: 0");
  const auto cfg = write_config("c.yaml", text);
  const auto r = run_cli("simulate --config " + cfg.string() + " --out " + dir_.string());
  ASSERT_EQ(r.exit_code, 0) << r.output;
  const auto j = nlohmann::json::parse(slurp(dir_ / "simulate.json"));
  EXPECT_NEAR(j["breakdown_count"].get<double>() / 2e4, 1.0, 0.05);
}

TEST_F(CliTest, ZeroHorizonGivesEmptyLogs) {
  std::string text = kSmallB;
  text.replace(text.find("horizon: 200"), 12, "horizon: 0");
  const auto cfg = write_config("zero.yaml", text);
  const auto r = run_cli("simulate --config " + cfg.string() + " --out " + dir_.string());
  ASSERT_EQ(r.exit_code, 0) << r.output;
  const auto events = slurp(dir_ / "events.csv");
  EXPECT_EQ(std::count(events.begin(), events.end(), '\n'), 2);
  const auto samples = slurp(dir_ / "samples.csv");
  EXPECT_EQ(std::count(samples.begin(), samples.end(), '\n'), 2);
}

TEST_F(CliTest, VerifyPerturbedFails) {
  const auto r = run_cli("verify --config " + source("configs/config_a.yaml").string() +
                         " --budget smoke --perturb --out " + dir_.string());
  EXPECT_GT(r.exit_code, 0) << r.output;
  EXPECT_EQ(r.exit_code, 1);
  const auto j = nlohmann::json::parse(slurp(dir_ / "report_config_a.json"));
  EXPECT_EQ(j["failures"].get<std::size_t>(), j["reports"].size());
}

TEST_F(CliTest, VerifyBundledDefaultPassesAndReproduces) {
  for (const char* sub : {"one", "two"}) {
    const auto r = run_cli("verify --bundled --out " + (dir_ / sub).string());
    ASSERT_EQ(r.exit_code, 0) << r.output;
  }
  for (const char* name : {"A", "B", "C"}) {
    const std::string file = std::string("report_") + name + ".json";
    const auto a = slurp(dir_ / "one" / file);
    ASSERT_FALSE(a.empty()) << file;
    EXPECT_EQ(a, slurp(dir_ / "two" / file)) << file;
    const auto j = nlohmann::json::parse(a);
    EXPECT_EQ(j["failures"].get<int>(), 0);
    EXPECT_EQ(j["config_hash"].get<std::string>(), config_hash(bundled_config_text(name)));
  }
}
