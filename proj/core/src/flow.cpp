#include "tikflow/flow.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <sstream>

#include "tikflow/csv.hpp"
#include "tikflow/error.hpp"
#include "tikflow/regpath.hpp"

namespace tikflow {

Vector field_plain(const Operator& T, const ConvexSet& D, double,
                   const Vector& x) {
  const Vector p = D.project(x);
  return T(p) - p;
}

Vector field_tikhonov(const OperatorFamily& family, const ConvexSet& D,
                      const Schedule& sched, double t, const Vector& x) {
  const Vector p = D.project(x);
  Vector v = family(t, p) - p;
  const double e = sched.eps(t);
  if (e != 0.0) v -= e * (p - sched.anchor(t));
  return v;
}

FlowProblem FlowProblem::plain(const Operator& T, ConvexSet domain) {
  if (T.dim() != domain.dim()) {
    throw ParameterError("plain flow: operator and domain dimensions differ");
  }
  const Index n = domain.dim();
  return FlowProblem(OperatorFamily::constant(T), std::move(domain),
                     Schedule::none(n), false);
}

FlowProblem FlowProblem::tikhonov(OperatorFamily family, ConvexSet domain,
                                  Schedule schedule) {
  if (family.limit().dim() != domain.dim() ||
      schedule.anchor.dim() != domain.dim()) {
    throw ParameterError("tikhonov flow: dimension mismatch");
  }
  if (schedule.eps.kind() == EpsilonSchedule::Kind::Zero) {
    throw ParameterError("tikhonov flow: eps must be positive");
  }
  return FlowProblem(std::move(family), std::move(domain), std::move(schedule),
                     true);
}

Vector FlowProblem::field(double t, const Vector& x) const {
  return field_tikhonov(family_, domain_, schedule_, t, x);
}

double FlowProblem::max_fixed_step() const {
  return 0.1 / (2.0 + schedule_.eps(0.0));
}

double Trajectory::max_set_violation() const {
  double worst = 0.0;
  for (const auto& d : diagnostics) worst = std::max(worst, d.set_violation);
  return worst;
}

Trajectory integrate(const FlowProblem& problem, const Vector& x0,
                     double t_end, const IntegratorControls& controls,
                     std::span<const double> sample_grid,
                     const DiagnosticOptions& options) {
  require_finite(x0, "flow initial state");
  if (!problem.domain().contains(x0)) {
    throw DomainError("integrate: initial state is not in D");
  }
  if (controls.method != Method::DormandPrince &&
      controls.step > problem.max_fixed_step() * (1.0 + 1e-12)) {
    std::ostringstream os;
    os << "integrate: fixed step " << controls.step << " exceeds the bound "
       << problem.max_fixed_step() << " = 0.1 / (2 + eps(0))";
    throw ParameterError(os.str());
  }

  const OdeSolution sol = integrate_ode(
      [&problem](double t, const Vector& x) { return problem.field(t, x); }, x0,
      t_end, controls, sample_grid);

  Trajectory traj;
  traj.times = sol.times;
  traj.states = sol.states;
  traj.steps = sol.accepted;
  traj.rejected = sol.rejected;
  traj.diagnostics.reserve(sol.times.size());

  const OperatorFamily& family = problem.family();
  const Operator& limit = family.limit();
  const Schedule& sched = problem.schedule();
  std::optional<Vector> z_warm;
  std::optional<Vector> psi_warm;
  for (std::size_t k = 0; k < traj.times.size(); ++k) {
    const double t = traj.times[k];
    const Vector& x = traj.states[k];
    const Vector p = problem.domain().project(x);
    SampleDiagnostics d;
    d.residual_t = (p - family(t, p)).norm();
    d.residual_limit = (p - limit(p)).norm();
    d.set_violation = (x - p).norm();
    if (problem.regularized()) {
      if (options.lyapunov) {
        const RegPoint z = solve_reg_point(limit, sched.eps(t), sched.anchor(t),
                                           options.regpath_tol,
                                           kDefaultRegMaxIter, z_warm);
        d.lyapunov = (x - z.point).norm();
        z_warm = z.point;
      }
      if (options.fix_distance) {
        d.psi_over_eps = psi(t, family, sched, *options.fix_distance,
                             options.regpath_tol, psi_warm)
                             .psi_over_eps;
      }
    }
    traj.diagnostics.push_back(d);
  }
  return traj;
}

void write_trajectory_csv(std::ostream& os, const Trajectory& traj) {
  CsvWriter csv(os);
  const Index n = traj.states.front().size();
  std::vector<std::string> cols{"t"};
  for (auto& c : coordinate_columns(n)) cols.push_back(std::move(c));
  cols.insert(cols.end(),
              {"residual_t", "residual_limit", "d_D", "lyapunov", "psi_over_eps"});
  csv.header(cols);
  for (std::size_t k = 0; k < traj.times.size(); ++k) {
    const auto& d = traj.diagnostics[k];
    csv.field(traj.times[k])
        .fields(traj.states[k])
        .field(d.residual_t)
        .field(d.residual_limit)
        .field(d.set_violation)
        .field(d.lyapunov)
        .field(d.psi_over_eps);
    csv.end_row();
  }
}

PsiValue psi(double t, const OperatorFamily& family, const Schedule& sched,
             double fix_distance, double regpath_tol,
             const std::optional<Vector>& warm_start) {
  if (!(fix_distance >= 0.0)) {
    throw ParameterError("psi: fixed-set distance must be nonnegative");
  }
  const double e = sched.eps(t);
  if (!(e > 0.0)) throw ParameterError("psi: eps(t) must be positive");
  const Vector& y = sched.anchor.limit();
  const double anchor_gap = (sched.anchor(t) - y).norm();
  const RegPoint z = solve_reg_point(family.limit(), e, y, regpath_tol,
                                     kDefaultRegMaxIter, warm_start);
  const double w = family.drift(t, z.point);
  const double rate = sched.eps.derivative(t) / e;
  PsiValue out;
  out.psi = 2.0 * anchor_gap + w + sched.anchor.derivative(t).norm() -
            rate * (2.0 * anchor_gap + fix_distance);
  out.psi_over_eps = out.psi / e;
  return out;
}

std::pair<OperatorFamily, AnchorPath> rescale(const OperatorFamily& family,
                                              const AnchorPath& anchor,
                                              const EpsilonSchedule& eps) {
  if (eps.kind() == EpsilonSchedule::Kind::Zero) {
    throw ParameterError("rescale: eps must be strictly positive");
  }
  auto clock = [eps](double t) {
    const double e = eps(t);
    if (!(e > 0.0)) throw ParameterError("rescale: eps(t) must be positive");
    return 1.0 / e;
  };
  std::optional<OperatorFamily::Envelope> bound;
  if (family.drift_bound()) {
    bound = [env = *family.drift_bound(), clock](double t) {
      return env(clock(t));
    };
  }
  OperatorFamily fam(
      "rescaled(" + family.name() + ")", family.limit(),
      [family, clock](double t, const Vector& x) { return family(clock(t), x); },
      bound, family.is_constant());
  AnchorPath path = AnchorPath::custom(
      "rescaled(" + anchor.name() + ")",
      [anchor, clock](double t) { return anchor(clock(t)); },
      [anchor, eps, clock](double t) {
        const double e = eps(t);
        return Vector(-anchor.derivative(clock(t)) * (eps.derivative(t) / (e * e)));
      },
      anchor.limit());
  return {std::move(fam), std::move(path)};
}

}  // namespace tikflow
