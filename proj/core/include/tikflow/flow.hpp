#pragma once

#include <iosfwd>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "tikflow/family.hpp"
#include "tikflow/integrator.hpp"
#include "tikflow/report.hpp"
#include "tikflow/schedule.hpp"

namespace tikflow {

/// -x' = p - T(p) with p = proj_D(x).
Vector field_plain(const Operator& T, const ConvexSet& D, double t,
                   const Vector& x);

/// -x' = p - T_t(p) + eps(t) (p - y(t)) with p = proj_D(x).
Vector field_tikhonov(const OperatorFamily& family, const ConvexSet& D,
                      const Schedule& sched, double t, const Vector& x);

/// A flow on D: the plain flow is the regularized one with eps = 0 and a
/// constant family.
class FlowProblem {
 public:
  static FlowProblem plain(const Operator& T, ConvexSet domain);
  static FlowProblem tikhonov(OperatorFamily family, ConvexSet domain,
                              Schedule schedule);

  Vector field(double t, const Vector& x) const;
  bool regularized() const noexcept { return regularized_; }

  const OperatorFamily& family() const noexcept { return family_; }
  const ConvexSet& domain() const noexcept { return domain_; }
  const Schedule& schedule() const noexcept { return schedule_; }

  /// Largest fixed step accepted: 0.1 / (2 + eps(0)).
  double max_fixed_step() const;

 private:
  FlowProblem(OperatorFamily family, ConvexSet domain, Schedule schedule,
              bool regularized)
      : family_(std::move(family)),
        domain_(std::move(domain)),
        schedule_(std::move(schedule)),
        regularized_(regularized) {}

  OperatorFamily family_;
  ConvexSet domain_;
  Schedule schedule_;
  bool regularized_;
};

struct SampleDiagnostics {
  double residual_t = 0.0;      // ||p - T_t(p)||
  double residual_limit = 0.0;  // ||p - T(p)||
  double set_violation = 0.0;   // d_D(x)
  /// ||x - F(eps(t), y(t))|| for regularized flows, 0 otherwise.
  double lyapunov = 0.0;
  /// psi(t) / eps(t) when a fixed-set distance is supplied, 0 otherwise.
  double psi_over_eps = 0.0;
};

struct Trajectory {
  std::vector<double> times;
  std::vector<Vector> states;
  std::vector<SampleDiagnostics> diagnostics;
  std::size_t steps = 0;
  std::size_t rejected = 0;

  const Vector& final_state() const { return states.back(); }
  double max_set_violation() const;
};

struct DiagnosticOptions {
  /// Tolerance of the regularization-path solves behind lyapunov and psi.
  double regpath_tol = 1e-10;
  /// d_{Fix T}(y) for psi; psi_over_eps stays 0 without it.
  std::optional<double> fix_distance;
  bool lyapunov = true;
};

/// Integrates the projection-extended field from x0 in D and fills the
/// per-sample diagnostics. Fixed-step methods require
/// step <= problem.max_fixed_step().
///
/// Throws DomainError if x0 is not in D, ParameterError for an oversized
/// fixed step, and the integrator's numerical errors.
Trajectory integrate(const FlowProblem& problem, const Vector& x0,
                     double t_end, const IntegratorControls& controls,
                     std::span<const double> sample_grid,
                     const DiagnosticOptions& diagnostics = {});

/// Columns: t, x0..x{n-1}, residual_t, residual_limit, d_D, lyapunov,
/// psi_over_eps.
void write_trajectory_csv(std::ostream& os, const Trajectory& traj);

struct PsiValue {
  double psi = 0.0;
  double psi_over_eps = 0.0;
};

/// psi(t) = 2||y(t) - y|| + w(t, F(eps(t), y)) + ||y'(t)||
///          - (eps'(t) / eps(t)) (2||y(t) - y|| + d_{Fix T}(y)),
/// with F solved for the family's limit operator and w(t, x) evaluated as
/// ||T_t(x) - T(x)||. Requires eps(t) > 0 and fix_distance >= 0.
PsiValue psi(double t, const OperatorFamily& family, const Schedule& sched,
             double fix_distance, double regpath_tol,
             const std::optional<Vector>& warm_start = std::nullopt);

/// Time rescaling: T^_t = T_{1/eps(t)} and y^(t) = y(1/eps(t)), with
/// y^'(t) = -y'(1/eps(t)) eps'(t) / eps(t)^2. Requires eps > 0.
std::pair<OperatorFamily, AnchorPath> rescale(const OperatorFamily& family,
                                              const AnchorPath& anchor,
                                              const EpsilonSchedule& eps);

}  // namespace tikflow
