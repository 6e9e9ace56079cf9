#include "tikflow/cli.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <functional>
#include <optional>
#include <ostream>

#include <CLI11.hpp>

#include "tikflow/error.hpp"
#include "tikflow/scenario.hpp"
#include "tikflow/scenario_runner.hpp"
#include "tikflow/suite.hpp"

namespace tikflow {
namespace {

constexpr std::string_view kBuiltinPrefix = "builtin:";

/// A path to a JSON file, or builtin:<name> for a shipped scenario.
Scenario load_config(const std::string& spec) {
  if (spec.rfind(kBuiltinPrefix, 0) == 0) {
    return builtin_scenario(spec.substr(kBuiltinPrefix.size()));
  }
  return load_scenario(spec);
}

int report_exit(const Report& report, std::ostream& out) {
  report.write(out);
  return report.all_passed() ? kExitPass : kExitCheckFailure;
}

void write_csv(const std::filesystem::path& path,
               const std::function<void(std::ostream&)>& body) {
  std::filesystem::create_directories(path.parent_path());
  std::ofstream os(path, std::ios::binary);
  if (!os) throw ConfigError("cannot write " + path.string());
  body(os);
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err) {
  CLI::App app{"Fixed points of nonexpansive operators via Tikhonov-regularized flows",
               "tikflow"};
  app.require_subcommand(1);

  std::string config;
  std::string out_dir = "out";
  std::optional<std::uint64_t> seed;
  int criterion = 0;

  auto* check = app.add_subcommand("check", "operator-class and regularization-path checks");
  check->add_option("config", config, "scenario file or builtin:<name>")->required();
  check->add_option("--seed", seed, "override the scenario seed");

  auto* regpath = app.add_subcommand("regpath", "follow the regularization path");
  regpath->add_option("config", config, "scenario file or builtin:<name>")->required();
  regpath->add_option("--out", out_dir, "artifact directory")->capture_default_str();

  auto* simulate = app.add_subcommand("simulate", "integrate the plain and regularized flows");
  simulate->add_option("config", config, "scenario file or builtin:<name>")->required();
  simulate->add_option("--out", out_dir, "artifact directory")->capture_default_str();

  auto* scenario = app.add_subcommand("scenario", "run or inspect scenarios");
  scenario->require_subcommand(1);
  auto* run = scenario->add_subcommand("run", "run every stage and write artifacts");
  run->add_option("config", config, "scenario file or builtin:<name>")->required();
  run->add_option("--out", out_dir, "artifact directory")->capture_default_str();
  run->add_option("--seed", seed, "override the scenario seed");
  auto* list = scenario->add_subcommand("list", "list built-in scenarios");
  std::string show_name;
  auto* show = scenario->add_subcommand("show", "print a built-in scenario");
  show->add_option("name", show_name, "built-in scenario name")->required();

  auto* suite = app.add_subcommand("suite", "run the built-in acceptance suite");
  suite->add_option("--criterion", criterion, "run a single criterion (1-12)")
      ->check(CLI::Range(1, kCriterionCount));

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitPass : kExitConfigError;
  }

  try {
    if (check->parsed()) {
      const Scenario s = load_config(config);
      return report_exit(run_checks(s, seed.value_or(s.seed)), out);
    }
    if (regpath->parsed()) {
      const Scenario s = load_config(config);
      const RegpathOutcome r = run_regpath(s);
      write_csv(std::filesystem::path(out_dir) / s.name / "regpath.csv",
                [&](std::ostream& os) { write_path_csv(os, r.path); });
      return report_exit(r.report, out);
    }
    if (simulate->parsed()) {
      const Scenario s = load_config(config);
      const SimulationOutcome sim = run_simulate(s);
      const auto dir = std::filesystem::path(out_dir) / s.name;
      for (std::size_t i = 0; i < sim.plain.size(); ++i) {
        write_csv(dir / ("plain_" + std::to_string(i) + ".csv"),
                  [&](std::ostream& os) { write_trajectory_csv(os, sim.plain[i]); });
      }
      for (std::size_t i = 0; i < sim.tikhonov.size(); ++i) {
        write_csv(dir / ("tikhonov_" + std::to_string(i) + ".csv"),
                  [&](std::ostream& os) { write_trajectory_csv(os, sim.tikhonov[i]); });
      }
      return report_exit(sim.report, out);
    }
    if (run->parsed()) {
      const Scenario s = load_config(config);
      ScenarioOptions opt;
      opt.out_dir = out_dir;
      opt.seed = seed;
      return report_exit(run_scenario(s, opt), out);
    }
    if (list->parsed()) {
      for (const auto& name : builtin_scenario_names()) out << name << '\n';
      return kExitPass;
    }
    if (show->parsed()) {
      out << builtin_scenario_text(show_name);
      return kExitPass;
    }
    if (suite->parsed()) {
      std::vector<CriterionResult> results;
      if (criterion > 0) {
        results.push_back(run_criterion(criterion));
      } else {
        results = run_suite();
      }
      for (const auto& r : results) write_line(out, r);
      const bool ok = std::all_of(results.begin(), results.end(),
                                  [](const CriterionResult& r) { return r.passed; });
      return ok ? kExitPass : kExitCheckFailure;
    }
  } catch (const NumericalError& e) {
    err << "numerical failure: " << e.what() << '\n';
    return kExitNumericalFailure;
  } catch (const Error& e) {
    err << "configuration error: " << e.what() << '\n';
    return kExitConfigError;
  } catch (const std::filesystem::filesystem_error& e) {
    err << "configuration error: " << e.what() << '\n';
    return kExitConfigError;
  }
  return kExitConfigError;
}

}  // namespace tikflow
