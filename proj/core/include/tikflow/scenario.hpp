#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "tikflow/family.hpp"
#include "tikflow/integrator.hpp"
#include "tikflow/prox.hpp"
#include "tikflow/report.hpp"
#include "tikflow/schedule.hpp"
#include "tikflow/set_family.hpp"

namespace tikflow {

enum class GridKind { Uniform, Log };

struct RunControls {
  /// Horizon of the regularized flow.
  double horizon = 50.0;
  /// Horizon of the plain flow.
  double plain_horizon = 20.0;
  IntegratorControls integrator;
  /// Method and step of the plain flow (fixed-step RK4 by default).
  IntegratorControls plain_integrator;
  std::size_t samples = 200;
  GridKind grid = GridKind::Log;
  /// First positive sample time of a log grid.
  double grid_first = 0.1;
  /// Times at which psi / eps is monitored.
  std::vector<double> monitor_times{10.0, 100.0, 1000.0, 10000.0};
};

struct CheckControls {
  std::size_t pairs = 1000;
  double tol = 1e-9;
  double regpath_tol = 1e-10;
  std::size_t resolvent_sweeps = 100;
  std::size_t lipschitz_sweeps = 200;
  std::size_t fejer_sweeps = 1000;
  std::size_t drift_samples = 500;
  /// Regularization weights drawn uniformly from this range in sweeps.
  double eps_lo = 0.05;
  double eps_hi = 5.0;
  /// Geometric path eps_k = path_eps0 * path_ratio^k, k < path_count.
  double path_eps0 = 1.0;
  double path_ratio = 0.5;
  std::size_t path_count = 21;
  double path_tol = 1e-8;
  /// <= 0 selects the default divergence radius.
  double divergence_radius = 0.0;
};

/// Quantities known in closed form for a scenario. Each enables the checks
/// that need it.
struct Analytics {
  /// proj_{Fix T}(y) for the limit anchor y.
  std::optional<Vector> target;
  /// d_{Fix T}(y).
  std::optional<double> fix_distance;
  std::optional<ConvexSet> fix_set;
  /// Some point of Fix T.
  std::optional<Vector> fixed_point;
  /// Contraction modulus of T, for the exponential bound.
  std::optional<double> alpha;
  /// Fix T is empty: the path must diverge.
  bool fix_empty = false;
  double target_tol = 1e-2;
  double agreement_tol = 2e-2;
  double path_target_tol = 1e-5;
};

/// Forward-backward ingredients kept for the checks that need B and mu.
struct ForwardBackwardParts {
  ProxSpec phi;
  Operator B;
  double beta;
};

/// Ingredients of the drift certificate for a projected-gradient family:
/// kappa(t) = 2 Haus^{1/2}(C_t, C), p = 1/2, c_Phi = ||z0|| + c / 2 with
/// z0 = proj_C(0) and c = sup_t Haus(C_t, C).
struct DriftParts {
  SetFamily sets;
  double mu;
  /// Radius of the ball around 0 from which z is sampled.
  double radius = 10.0;
};

struct Scenario {
  std::string name;
  Index dim = 0;
  std::uint64_t seed = 0;
  ConvexSet domain;
  /// The limit operator T restricted to the domain.
  Operator op;
  OperatorFamily family;
  /// Present iff the scenario integrates a regularized flow.
  std::optional<Schedule> schedule;
  std::vector<Vector> starts;
  std::optional<ForwardBackwardParts> forward_backward;
  std::optional<DriftParts> drift;
  RunControls run;
  CheckControls checks;
  Analytics analytics;
  /// Load-time premise checks (step range, uniform bound, symbolic limits).
  Report premises;

  /// c_Phi for the drift certificate.
  double drift_constant() const;
};

/// Parses and validates a JSON scenario. Throws ConfigError naming the
/// offending field for malformed input or violated premises.
Scenario parse_scenario(std::string_view json_text);
Scenario load_scenario(const std::filesystem::path& path);

/// Scenario files shipped with the library, by name.
std::vector<std::string> builtin_scenario_names();
/// Throws ConfigError for an unknown name.
std::string_view builtin_scenario_text(std::string_view name);
Scenario builtin_scenario(std::string_view name);

}  // namespace tikflow
