#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

#include "tikflow/flow.hpp"
#include "tikflow/regpath.hpp"
#include "tikflow/report.hpp"
#include "tikflow/scenario.hpp"

namespace tikflow {

// Sampled sweeps shared by the runner and the acceptance suite. Each draws
// its regularization weights uniformly from [eps_lo, eps_hi] and its points
// from `sampler`.

/// Worst resolvent-identity defect over `count` random (lambda < mu, y);
/// threshold 10 tol.
CheckReport resolvent_sweep(const Operator& T, PointSampler& sampler,
                            std::size_t count, double eps_lo, double eps_hi,
                            double tol);

/// Worst violation of ||y - F||^2 + ||F - x*||^2 <= ||y - x*||^2 with x*
/// drawn from Fix T by projecting samples onto `fix_set`; threshold 10 tol.
CheckReport fejer_sweep(const Operator& T, const ConvexSet& fix_set,
                        PointSampler& sampler, std::size_t count, double eps_lo,
                        double eps_hi, double tol);

/// Firm nonexpansiveness of F(eps, .) on `count` random pairs, each with
/// its own eps; threshold 10 tol.
CheckReport reg_firm_sweep(const Operator& T, PointSampler& sampler,
                           std::size_t count, double eps_lo, double eps_hi,
                           double tol);

/// Worst (LHS - RHS) of the path Lipschitz bound over `count` random
/// (eps1, eps2, x); threshold 10 tol.
CheckReport path_lipschitz_sweep(const Operator& T, PointSampler& sampler,
                                 std::size_t count, double eps_lo,
                                 double eps_hi, double tol);

/// ||P_{C_t} z - P_C z||^2 - 2 (d_{C_t}(z) + d_C(z)) Haus(C_t, C) on
/// sampled (t, z), with z uniform in the ball of radius drift.radius.
CheckReport moreau_sweep(const DriftParts& drift, std::span<const double> times,
                         std::uint64_t seed, std::size_t count, double tol);

/// ||prox_{mu Phi_t}(z) - prox_{mu Phi}(z)|| - kappa(t) (||z|| + c_phi)^{1/2}
/// with kappa(t) = 2 Haus^{1/2}(C_t, C), on the same samples.
CheckReport drift_bound_sweep(const DriftParts& drift, double c_phi,
                              std::span<const double> times, std::uint64_t seed,
                              std::size_t count, double tol);

/// Times at which the drift certificate is sampled: early times where the
/// perturbation is large, then decades.
std::vector<double> drift_sample_times();

struct PsiMonitor {
  std::vector<double> times;
  std::vector<double> psi_over_eps;
  /// beta (1 + t)^{beta - 1} d / eps0 at each time; the exact value for a
  /// constant family with a constant anchor.
  std::vector<double> prediction;
  bool strictly_decreasing = false;
};

/// psi / eps at the scenario's monitor times. Requires a power schedule and
/// analytics.fix_distance.
PsiMonitor psi_monitor(const Scenario& scenario);

// Stages. Each throws ConfigError (bad input) or NumericalError (solver or
// integrator failure) with the scenario name and stage in the message.

/// Schedule validation, class checks, operator inequalities and the sampled
/// regularization-path properties. No path following, no integration.
Report run_checks(const Scenario& scenario, std::uint64_t seed);

struct RegpathOutcome {
  PathResult path;
  Report report;
};
/// Follows the path from the limit anchor (or 0 without a schedule).
RegpathOutcome run_regpath(const Scenario& scenario);

struct SimulationOutcome {
  std::vector<Trajectory> plain;
  std::vector<Trajectory> tikhonov;
  Report report;
};
SimulationOutcome run_simulate(const Scenario& scenario);

/// Assumption monitors: psi / eps and, for set families, the Moreau and
/// drift-bound certificates.
Report run_monitors(const Scenario& scenario, std::uint64_t seed);

/// Columns t, residual, bound, ratio, flagged for t > 0, with
/// bound = dist(x0, Fix T) / sqrt(t); flagged = ratio > 1.05. With
/// analytics.alpha and analytics.fixed_point, adds exp_bound =
/// exp(-(1 - alpha) t) ||x0 - x*|| and exp_ratio = ||x(t) - x*|| / exp_bound.
/// Throws ConfigError without analytics.fix_set.
void emit_rate_table(std::ostream& os, const Trajectory& plain,
                     const Analytics& analytics);

struct ScenarioOptions {
  /// Artifacts go to out_dir / scenario.name.
  std::filesystem::path out_dir = "out";
  /// Overrides the scenario seed.
  std::optional<std::uint64_t> seed;
};

/// Runs every stage in order, writes regpath.csv, plain_<i>.csv,
/// rate_<i>.csv, tikhonov_<i>.csv and report.txt, and returns the report.
Report run_scenario(const Scenario& scenario, const ScenarioOptions& options);

}  // namespace tikflow
