#include <gtest/gtest.h>
#include <gmock/gmock.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "tikflow/cli.hpp"

namespace tikflow {
namespace {

using ::testing::HasSubstr;

struct CliResult {
  int code;
  std::string out;
  std::string err;
};

CliResult run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = std::filesystem::temp_directory_path() /
           ("tikflow_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    std::filesystem::remove_all(dir_);
    std::filesystem::create_directories(dir_);
  }
  void TearDown() override { std::filesystem::remove_all(dir_); }

  std::string write(const std::string& name, const std::string& text) {
    const auto p = dir_ / name;
    std::ofstream(p) << text;
    return p.string();
  }

  std::filesystem::path dir_;
};

TEST_F(CliTest, ListAndShow) {
  const auto list = run({"scenario", "list"});
  EXPECT_EQ(list.code, kExitPass);
  EXPECT_THAT(list.out, HasSubstr("line-select"));
  EXPECT_THAT(list.out, HasSubstr("translation"));

  const auto show = run({"scenario", "show", "contraction"});
  EXPECT_EQ(show.code, kExitPass);
  EXPECT_THAT(show.out, HasSubstr("\"scaled-rotation\""));

  EXPECT_EQ(run({"scenario", "show", "missing"}).code, kExitConfigError);
}

TEST_F(CliTest, CheckPasses) {
  const auto r = run({"check", "builtin:line-select"});
  EXPECT_EQ(r.code, kExitPass) << r.out << r.err;
  EXPECT_THAT(r.out, HasSubstr("status=pass"));
  EXPECT_THAT(r.out, ::testing::Not(HasSubstr("status=fail")));
}

TEST_F(CliTest, MislabeledOperatorFailsWithWitness) {
  const auto path = (std::filesystem::path(TIKFLOW_TEST_DATA_DIR) / "mislabeled-scaling.json").string();
  const auto r = run({"check", path});
  EXPECT_EQ(r.code, kExitCheckFailure);
  EXPECT_THAT(r.out, HasSubstr("status=fail"));
  EXPECT_THAT(r.out, HasSubstr("witness_x="));
  // The seed override changes the witness but not the verdict.
  EXPECT_EQ(run({"check", path, "--seed", "12345"}).code, kExitCheckFailure);
}

TEST_F(CliTest, ConfigErrors) {
  EXPECT_EQ(run({}).code, kExitConfigError);
  EXPECT_EQ(run({"frobnicate"}).code, kExitConfigError);
  EXPECT_EQ(run({"check"}).code, kExitConfigError);
  EXPECT_EQ(run({"check", (dir_ / "absent.json").string()}).code, kExitConfigError);
  const auto bad = run({"check", write("bad.json", "{\"name\": 3}")});
  EXPECT_EQ(bad.code, kExitConfigError);
  EXPECT_THAT(bad.err, HasSubstr("configuration error"));
  EXPECT_EQ(run({"suite", "--criterion", "13"}).code, kExitConfigError);
}

TEST_F(CliTest, NumericalFailureExitCode) {
  const auto path = write("stiff.json", R"({
    "name": "stiff",
    "dim": 2,
    "domain": {"kind": "whole-space"},
    "operator": {"kind": "projection",
                 "set": {"kind": "hyperplane", "normal": [0, 1], "offset": 0}},
    "starts": [[3, 4]],
    "run": {"plain_method": "adaptive", "plain_step": 0.5, "plain_min_step": 0.4,
            "plain_rtol": 1e-14, "plain_atol": 1e-16}
  })");
  const auto r = run({"simulate", path, "--out", dir_.string()});
  EXPECT_EQ(r.code, kExitNumericalFailure);
  EXPECT_THAT(r.err, HasSubstr("numerical failure"));
}

TEST_F(CliTest, RegpathWritesCsv) {
  const auto r = run({"regpath", "builtin:translation", "--out", dir_.string()});
  EXPECT_EQ(r.code, kExitPass) << r.out << r.err;
  EXPECT_THAT(r.out, HasSubstr("regpath.diverged"));
  EXPECT_TRUE(std::filesystem::exists(dir_ / "translation" / "regpath.csv"));
}

TEST_F(CliTest, ScenarioRunWritesArtifacts) {
  const auto r = run({"scenario", "run", "builtin:contraction", "--out", dir_.string()});
  EXPECT_EQ(r.code, kExitPass) << r.out << r.err;
  for (const char* f : {"report.txt", "plain_0.csv", "rate_0.csv", "plain_1.csv"}) {
    EXPECT_TRUE(std::filesystem::exists(dir_ / "contraction" / f)) << f;
  }
}

TEST_F(CliTest, SuiteSingleCriterion) {
  const auto r = run({"suite", "--criterion", "6"});
  EXPECT_EQ(r.code, kExitPass) << r.out;
  EXPECT_THAT(r.out, HasSubstr("criterion 6 resolvent-identity: PASS"));
}

}  // namespace
}  // namespace tikflow
