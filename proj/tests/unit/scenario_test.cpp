#include <gtest/gtest.h>
#include <gmock/gmock.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>
#include <string>

#include "tikflow/error.hpp"
#include "tikflow/scenario.hpp"
#include "tikflow/scenario_runner.hpp"

namespace tikflow {
namespace {

using ::testing::HasSubstr;

std::string read_file(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

// Plain-flow scenario on the x-axis projection; `extra` is spliced into the
// top-level object.
std::string line_config(const std::string& extra = "") {
  return R"({
    "name": "axis",
    "dim": 2,
    "domain": {"kind": "whole-space"},
    "operator": {"kind": "projection",
                 "set": {"kind": "hyperplane", "normal": [0, 1], "offset": 0}},
    "starts": [[3, 4]],
    "analytics": {"fix_set": {"kind": "hyperplane", "normal": [0, 1], "offset": 0}})" +
         extra + "}";
}

std::string expect_config_error(const std::string& text) {
  try {
    parse_scenario(text);
  } catch (const ConfigError& e) {
    return e.what();
  }
  ADD_FAILURE() << "expected ConfigError";
  return {};
}

TEST(ScenarioParseTest, BuiltinsMatchShippedFiles) {
  const std::filesystem::path dir = TIKFLOW_SCENARIO_DIR;
  std::set<std::string> on_disk;
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    if (entry.path().extension() == ".json") on_disk.insert(entry.path().stem().string());
  }
  const auto names = builtin_scenario_names();
  EXPECT_EQ(std::set<std::string>(names.begin(), names.end()), on_disk);
  for (const auto& name : names) {
    EXPECT_EQ(std::string(builtin_scenario_text(name)), read_file(dir / (name + ".json")));
    const Scenario s = builtin_scenario(name);
    EXPECT_EQ(s.name, name);
    EXPECT_TRUE(s.premises.all_passed()) << name;
    for (const auto& x0 : s.starts) EXPECT_TRUE(s.domain.contains(x0)) << name;
  }
  EXPECT_THROW(builtin_scenario("no-such-scenario"), ConfigError);
}

TEST(ScenarioParseTest, MinimalConfigDefaults) {
  const Scenario s = parse_scenario(line_config());
  EXPECT_EQ(s.dim, 2);
  EXPECT_FALSE(s.schedule.has_value());
  EXPECT_EQ(s.checks.pairs, 1000u);
  EXPECT_DOUBLE_EQ(s.checks.tol, 1e-9);
  EXPECT_EQ(s.op(vec({3.0, 4.0})), vec({3.0, 0.0}));
}

TEST(ScenarioParseTest, RejectsMalformedInput) {
  EXPECT_THAT(expect_config_error("{not json"), HasSubstr("invalid JSON"));
  EXPECT_THAT(expect_config_error(line_config(R"(, "colour": 1)")), HasSubstr("colour"));
  EXPECT_THAT(expect_config_error(line_config(R"(, "seed": -3)")), HasSubstr("seed"));
  EXPECT_THAT(expect_config_error(R"({"name": "x", "dim": 2, "domain": {"kind": "whole-space"}})"),
              HasSubstr("operator"));
  EXPECT_THAT(expect_config_error(R"({"name": "x", "dim": 2, "domain": {"kind": "torus"},
                                      "operator": {"kind": "identity"}})"),
              HasSubstr("torus"));
  EXPECT_THAT(expect_config_error(R"({"name": "x", "dim": 2,
                                      "domain": {"kind": "box", "lo": [0, 0], "hi": [1, 1]},
                                      "operator": {"kind": "identity"},
                                      "starts": [[2, 0]]})"),
              HasSubstr("start must lie in D"));
  EXPECT_THAT(expect_config_error(R"({"name": "x", "dim": 2, "domain": {"kind": "whole-space"},
                                      "operator": {"kind": "constant", "value": [1, 2, 3]}})"),
              HasSubstr("coordinates"));
  EXPECT_THROW(load_scenario("/nonexistent/path.json"), ConfigError);
}

TEST(ScenarioParseTest, ForwardBackwardStepOutsideRange) {
  const std::string text = R"({
    "name": "fb", "dim": 1, "domain": {"kind": "whole-space"},
    "operator": {"kind": "forward-backward", "phi": {"kind": "l1", "weight": 1}, "mu": 2.5,
                 "B": {"kind": "affine-gradient", "matrix": [[1]], "b": [0]}}})";
  EXPECT_THAT(expect_config_error(text), HasSubstr("mu"));
}

TEST(ScenarioParseTest, HausdorffPremiseMustHold) {
  // delta = eps^2 gives Haus^{1/2} / eps = sqrt(2) eps^0: not vanishing.
  std::string text = builtin_scenario_text("moving-box").data();
  const auto pos = text.find("\"k\": 3");
  ASSERT_NE(pos, std::string::npos);
  text.replace(pos, 6, "\"k\": 2");
  EXPECT_THAT(expect_config_error(text), HasSubstr("Haus"));
  text.replace(pos, 6, "\"k\": 3");
  EXPECT_NO_THROW(parse_scenario(text));
}

TEST(ScenarioParseTest, AnchorOutsideDomainRejected) {
  std::string text = builtin_scenario_text("box-invariance").data();
  const auto pos = text.find("\"y\": [0.2, 0.9]");
  ASSERT_NE(pos, std::string::npos);
  text.replace(pos, 15, "\"y\": [2.0, 0.9]");
  EXPECT_THAT(expect_config_error(text), HasSubstr("anchor"));
}

TEST(RateTableTest, AxisProjectionRatiosBelowOne) {
  // From (3, 4): residual 4 e^{-t}, bound dist(x0, Fix) / sqrt(t) = 4 / sqrt(t),
  // so the ratio sqrt(t) e^{-t} peaks at 1/sqrt(2e) < 1.
  const Scenario s = parse_scenario(line_config());
  const auto problem = FlowProblem::plain(s.op, s.domain);
  IntegratorControls c;
  c.step = 1e-3;
  const auto traj = integrate(problem, s.starts[0], 10.0, c, uniform_grid(10.0, 100));
  std::ostringstream os;
  emit_rate_table(os, traj, s.analytics);
  std::istringstream is(os.str());
  std::string line;
  std::getline(is, line);
  EXPECT_EQ(line, "t,residual,bound,ratio,flagged");
  int rows = 0;
  while (std::getline(is, line)) {
    double t, res, bound, ratio;
    int flagged;
    char sep;
    std::istringstream ls(line);
    ls >> t >> sep >> res >> sep >> bound >> sep >> ratio >> sep >> flagged;
    EXPECT_NEAR(res, 4.0 * std::exp(-t), 1e-9);
    EXPECT_NEAR(bound, 4.0 / std::sqrt(t), 1e-12);
    EXPECT_LE(ratio, 1.0 / std::sqrt(2.0 * std::exp(1.0)) + 1e-9);
    EXPECT_EQ(flagged, 0);
    ++rows;
  }
  EXPECT_EQ(rows, 100);
}

TEST(RateTableTest, StartOnFixedSetGivesZeroRatios) {
  const Scenario s = parse_scenario(line_config());
  const auto problem = FlowProblem::plain(s.op, s.domain);
  IntegratorControls c;
  c.step = 1e-3;
  const auto traj = integrate(problem, vec({5.0, 0.0}), 2.0, c, uniform_grid(2.0, 4));
  std::ostringstream os;
  emit_rate_table(os, traj, s.analytics);
  std::istringstream is(os.str());
  std::string line;
  std::getline(is, line);
  while (std::getline(is, line)) EXPECT_THAT(line, HasSubstr(",0,0"));
}

TEST(RateTableTest, ContractionAddsExponentialColumns) {
  const Scenario s = builtin_scenario("contraction");
  const auto problem = FlowProblem::plain(s.op, s.domain);
  IntegratorControls c;
  c.step = 1e-3;
  const auto traj = integrate(problem, s.starts[0], 5.0, c, uniform_grid(5.0, 5));
  std::ostringstream os;
  emit_rate_table(os, traj, s.analytics);
  EXPECT_THAT(os.str(), HasSubstr("exp_bound,exp_ratio"));

  Analytics missing = s.analytics;
  missing.fix_set.reset();
  std::ostringstream sink;
  EXPECT_THROW(emit_rate_table(sink, traj, missing), ConfigError);
}

TEST(RunnerTest, ChecksPassOnShippedScenarios) {
  for (const char* name : {"line-select", "lasso-select", "contraction", "box-invariance"}) {
    const Scenario s = builtin_scenario(name);
    const Report r = run_checks(s, s.seed);
    EXPECT_TRUE(r.all_passed()) << name << "\n" << r.str();
  }
}

TEST(RunnerTest, MislabeledScalingFails) {
  const Scenario s = load_scenario(std::filesystem::path(TIKFLOW_TEST_DATA_DIR) /
                                   "mislabeled-scaling.json");
  const Report r = run_checks(s, s.seed);
  EXPECT_FALSE(r.all_passed());
  EXPECT_THAT(r.str(), HasSubstr("witness_x="));
}

TEST(RunnerTest, DriftCertificatesHold) {
  const Scenario s = builtin_scenario("moving-box");
  ASSERT_TRUE(s.drift.has_value());
  const auto times = drift_sample_times();
  EXPECT_TRUE(moreau_sweep(*s.drift, times, 1, 300, 1e-9).passed);
  EXPECT_TRUE(drift_bound_sweep(*s.drift, s.drift_constant(), times, 1, 300, 1e-9).passed);
}

TEST(RunnerTest, PsiMonitorMatchesPrediction) {
  const Scenario s = builtin_scenario("line-select");
  const PsiMonitor m = psi_monitor(s);
  ASSERT_EQ(m.times.size(), m.psi_over_eps.size());
  EXPECT_TRUE(m.strictly_decreasing);
  for (std::size_t i = 0; i < m.times.size(); ++i) {
    // beta d (1+t)^{beta-1} / eps0 with beta = 1/2, d = 4, eps0 = 1.
    EXPECT_NEAR(m.psi_over_eps[i], 2.0 / std::sqrt(1.0 + m.times[i]), 1e-8);
    EXPECT_NEAR(m.prediction[i], m.psi_over_eps[i], 1e-8);
  }
}

TEST(RunnerTest, TranslationPathDiverges) {
  const auto out = run_regpath(builtin_scenario("translation"));
  EXPECT_TRUE(out.path.diverged);
  EXPECT_TRUE(out.report.all_passed()) << out.report.str();
}

TEST(RunnerTest, ScenarioArtifactsAreDeterministic) {
  const auto base = std::filesystem::temp_directory_path() / "tikflow_determinism";
  std::filesystem::remove_all(base);
  const Scenario s = builtin_scenario("contraction");
  ScenarioOptions a{base / "a", std::nullopt};
  ScenarioOptions b{base / "b", std::nullopt};
  EXPECT_TRUE(run_scenario(s, a).all_passed());
  EXPECT_TRUE(run_scenario(s, b).all_passed());
  int compared = 0;
  for (const auto& entry : std::filesystem::directory_iterator(base / "a" / "contraction")) {
    const auto other = base / "b" / "contraction" / entry.path().filename();
    ASSERT_TRUE(std::filesystem::exists(other)) << other;
    EXPECT_EQ(read_file(entry.path()), read_file(other)) << entry.path().filename();
    ++compared;
  }
  EXPECT_GE(compared, 5);
  std::filesystem::remove_all(base);
}

}  // namespace
}  // namespace tikflow
