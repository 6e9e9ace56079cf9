#include "tikflow/scenario_runner.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <limits>
#include <ostream>
#include <sstream>

#include "tikflow/checks.hpp"
#include "tikflow/csv.hpp"
#include "tikflow/error.hpp"
#include "tikflow/prox.hpp"

namespace tikflow {
namespace {

constexpr double kInvarianceTol = 1e-6;
constexpr double kRateSlack = 1.05;
constexpr double kRateFrom = 0.1;
constexpr double kFejerStepTol = 1e-8;
constexpr double kExpSlack = 1e-3;
constexpr double kEnergyIncrement = 1e-3;
constexpr double kLyapunovFinal = 1e-2;
constexpr double kLyapunovRise = 1e-6;
constexpr double kFixedPointTol = 1e-8;

template <class F>
auto staged(const Scenario& s, std::string_view stage, F&& f) -> decltype(f()) {
  const std::string where =
      "scenario " + s.name + ", stage " + std::string(stage) + ": ";
  try {
    return f();
  } catch (const NumericalError& e) {
    throw NumericalError(where + e.what());
  } catch (const Error& e) {
    throw ConfigError(where + e.what());
  }
}

/// Check with the worst margin and its witness; passes iff margin <= tol.
struct Worst {
  double margin = -std::numeric_limits<double>::infinity();
  std::optional<CheckReport::Witness> witness;

  void offer(double m, const Vector& x, const Vector& y) {
    if (m > margin || !witness) {
      margin = m;
      witness = CheckReport::Witness{x, y};
    }
  }

  CheckReport report(std::string id, double tol, std::size_t samples,
                     std::string note = {}) const {
    CheckReport r = make_check(std::move(id), margin, tol, samples, std::move(note));
    if (!r.passed) r.witness = witness;
    return r;
  }
};

std::pair<double, double> draw_pair(PointSampler& sampler, double lo, double hi) {
  const double a = sampler.uniform(lo, hi);
  const double b = sampler.uniform(lo, hi);
  return {std::min(a, b), std::max(a, b)};
}

std::uint64_t sub_seed(std::uint64_t seed, std::uint64_t stream) {
  return seed * 1'000'003ULL + stream;
}

std::vector<double> sample_grid(const RunControls& run, double horizon) {
  return run.grid == GridKind::Uniform
             ? uniform_grid(horizon, run.samples)
             : log_grid(run.grid_first, horizon, run.samples);
}

std::string indexed(std::string_view id, std::size_t i) {
  return std::string(id) + "[" + std::to_string(i) + "]";
}

bool claim_is_nonexpansive(const ClassClaim& c) {
  return c.kind == OperatorClass::Nonexpansive ||
         c.kind == OperatorClass::FirmlyNonexpansive ||
         c.kind == OperatorClass::Contraction;
}

Report checks_impl(const Scenario& s, std::uint64_t seed) {
  Report report;
  report.append(s.premises);
  const Operator& T = s.op;
  std::uint64_t stream = 0;
  auto sampler = [&] { return PointSampler(s.domain, sub_seed(seed, stream++)); };
  const CheckControls& c = s.checks;

  if (s.schedule) {
    report.append(validate_schedule(*s.schedule, s.domain,
                                    log_grid(0.1, s.run.horizon, 50)));
  }

  bool classified = true;
  const ClassClaim& claim = T.declared();
  if (claim.kind != OperatorClass::Unclassified) {
    auto sp = sampler();
    CheckReport r = check_class(T, claim, sp, c.pairs, c.tol);
    r.id = "operator.class." + to_string(claim.kind);
    classified = r.passed;
    report.add(std::move(r));
  }
  {
    auto sp = sampler();
    report.add(check_maps_into(T, s.domain, sp, c.pairs));
  }
  if (claim_is_nonexpansive(claim)) {
    auto sp = sampler();
    report.add(check_residual_monotone(T, sp, c.pairs));
  }
  if (s.forward_backward) {
    const auto& fb = *s.forward_backward;
    auto sp = sampler();
    report.add(check_forward_backward_inequality(T, fb.B, fb.phi.mu, fb.beta, sp,
                                                 c.pairs, c.tol));
    auto sb = sampler();
    const BaillonHaddadReport bh = check_baillon_haddad(fb.B, fb.beta, sb, c.pairs, c.tol);
    report.add(bh.lipschitz);
    report.add(bh.cocoercive);
    const ProxSpec spec = fb.phi;
    const Operator prox_op(
        "prox", ConvexSet::whole_space(s.dim),
        [spec](const Vector& x) { return prox(spec, x); },
        ClassClaim::firmly_nonexpansive());
    auto sx = sampler();
    CheckReport r = check_class(prox_op, prox_op.declared(), sx, c.pairs, c.tol);
    r.id = "operator.prox-firmly-nonexpansive";
    report.add(std::move(r));
  }
  if (s.analytics.fixed_point) {
    report.add(make_check("operator.fixed-point-residual",
                          residual(T, *s.analytics.fixed_point).norm(),
                          kFixedPointTol));
  }
  if (s.analytics.target) {
    report.add(make_check("operator.target-residual",
                          residual(T, *s.analytics.target).norm(),
                          kFixedPointTol));
  }

  // The path properties presuppose a nonexpansive operator; with a refuted
  // claim the inner solves need not converge.
  if (!classified || !claim_is_nonexpansive(claim)) return report;
  {
    auto sp = sampler();
    report.add(resolvent_sweep(T, sp, c.resolvent_sweeps, c.eps_lo, c.eps_hi,
                               c.regpath_tol));
  }
  if (s.analytics.fix_set) {
    auto sp = sampler();
    report.add(fejer_sweep(T, *s.analytics.fix_set, sp, c.fejer_sweeps, c.eps_lo,
                           c.eps_hi, c.regpath_tol));
  }
  {
    auto sp = sampler();
    report.add(reg_firm_sweep(T, sp, c.pairs, c.eps_lo, c.eps_hi, c.regpath_tol));
  }
  {
    auto sp = sampler();
    report.add(path_lipschitz_sweep(T, sp, c.lipschitz_sweeps, c.eps_lo,
                                    c.eps_hi, c.regpath_tol));
  }
  return report;
}

RegpathOutcome regpath_impl(const Scenario& s) {
  const Vector y =
      s.schedule ? s.schedule->anchor.limit() : Vector::Zero(s.dim);
  const auto eps =
      geometric_schedule(s.checks.path_eps0, s.checks.path_ratio, s.checks.path_count);
  PathOptions opt;
  opt.tol = s.checks.path_tol;
  opt.divergence_radius = s.checks.divergence_radius;
  RegpathOutcome out{follow_path(s.op, y, eps, opt), {}};
  const PathResult& path = out.path;

  if (s.analytics.fix_empty) {
    out.report.add(make_check("regpath.diverged", path.diverged ? 0.0 : 1.0, 0.0,
                              path.points.size(), to_string(path.stop)));
    return out;
  }
  out.report.add(make_check("regpath.bounded", path.diverged ? 1.0 : 0.0, 0.0,
                            path.points.size(), to_string(path.stop)));
  out.report.add(check_path_monotone(path, opt.tol));
  if (s.analytics.target) {
    out.report.add(make_check("regpath.limit-target",
                              (path.limit_estimate - *s.analytics.target).norm(),
                              s.analytics.path_target_tol, path.points.size()));
  }
  return out;
}

/// Invariance, residual rate, Fejer, exponential and energy checks on one
/// plain trajectory.
void plain_checks(const Scenario& s, const FlowProblem& problem,
                  const Trajectory& traj, std::size_t i, Report& report) {
  report.add(make_check(indexed("flow.plain.invariance", i),
                        traj.max_set_violation(), kInvarianceTol, traj.times.size()));
  const Vector& x0 = traj.states.front();
  const Analytics& a = s.analytics;

  if (a.fix_set) {
    const double d = a.fix_set->distance(x0);
    double worst = 0.0;
    std::size_t n = 0;
    for (std::size_t k = 0; k < traj.times.size(); ++k) {
      const double t = traj.times[k];
      if (t < kRateFrom) continue;
      const double r = traj.diagnostics[k].residual_limit;
      const double ratio = d > 0.0 ? r * std::sqrt(t) / d
                                   : (r > 0.0 ? std::numeric_limits<double>::infinity() : 0.0);
      worst = std::max(worst, ratio);
      ++n;
    }
    report.add(make_check(indexed("flow.plain.residual-rate", i), worst, kRateSlack, n,
                          "max residual * sqrt(t) / dist(x0, Fix T) for t >= 0.1"));
  }
  if (a.fixed_point) {
    double worst = -std::numeric_limits<double>::infinity();
    for (std::size_t k = 1; k < traj.states.size(); ++k) {
      worst = std::max(worst, (traj.states[k] - *a.fixed_point).norm() -
                                  (traj.states[k - 1] - *a.fixed_point).norm());
    }
    report.add(make_check(indexed("flow.plain.fejer", i), worst, kFejerStepTol,
                          traj.states.size()));
  }
  if (a.fixed_point && a.alpha) {
    const double d0 = (x0 - *a.fixed_point).norm();
    double worst = 0.0;
    for (std::size_t k = 0; k < traj.states.size() && d0 > 0.0; ++k) {
      const double env = std::exp(-(1.0 - *a.alpha) * traj.times[k]) * d0;
      worst = std::max(worst, (traj.states[k] - *a.fixed_point).norm() / env);
    }
    report.add(make_check(indexed("flow.plain.exponential", i), worst,
                          1.0 + kExpSlack, traj.states.size()));

    // Trapezoidal energy integral of ||x'||^2; compare [0, T/2] with [0, T].
    std::vector<double> cumulative(traj.times.size(), 0.0);
    double prev = problem.field(traj.times[0], traj.states[0]).squaredNorm();
    for (std::size_t k = 1; k < traj.times.size(); ++k) {
      const double cur = problem.field(traj.times[k], traj.states[k]).squaredNorm();
      cumulative[k] = cumulative[k - 1] + 0.5 * (prev + cur) *
                                              (traj.times[k] - traj.times[k - 1]);
      prev = cur;
    }
    const double half = traj.times.back() / 2.0;
    std::size_t h = 0;
    while (h + 1 < traj.times.size() && traj.times[h + 1] <= half) ++h;
    const double total = cumulative.back();
    const double increment = total > 0.0 ? (total - cumulative[h]) / total : 0.0;
    report.add(make_check(indexed("flow.plain.energy", i), increment,
                          kEnergyIncrement, traj.times.size(),
                          "relative growth of the energy integral from T/2 to T"));
  }
}

void tikhonov_checks(const Scenario& s, const Trajectory& traj, std::size_t i,
                     Report& report) {
  report.add(make_check(indexed("flow.tikhonov.invariance", i),
                        traj.max_set_violation(), kInvarianceTol, traj.times.size()));
  const Analytics& a = s.analytics;
  if (a.target) {
    report.add(make_check(indexed("flow.tikhonov.target", i),
                          (traj.final_state() - *a.target).norm(), a.target_tol));
  }
  if (a.fix_distance) {
    const double tail_from = traj.times.back() * 1e-2;
    double rise = 0.0;
    for (std::size_t k = 1; k < traj.times.size(); ++k) {
      if (traj.times[k - 1] < tail_from) continue;
      rise = std::max(rise, traj.diagnostics[k].lyapunov -
                                traj.diagnostics[k - 1].lyapunov);
    }
    const double final_value = traj.diagnostics.back().lyapunov;
    CheckReport r = make_check(indexed("flow.tikhonov.lyapunov", i), final_value,
                               kLyapunovFinal, traj.times.size());
    std::ostringstream note;
    note << "max rise on the last two decades " << rise << " (allowed "
         << kLyapunovRise << ")";
    r.note = note.str();
    r.passed = r.passed && rise <= kLyapunovRise;
    report.add(std::move(r));
  }
}

SimulationOutcome simulate_impl(const Scenario& s) {
  SimulationOutcome out;
  if (s.starts.empty()) {
    throw ConfigError("no starts configured");
  }
  const FlowProblem plain = FlowProblem::plain(s.op, s.domain);
  const auto plain_grid = sample_grid(s.run, s.run.plain_horizon);
  for (std::size_t i = 0; i < s.starts.size(); ++i) {
    out.plain.push_back(integrate(plain, s.starts[i], s.run.plain_horizon,
                                  s.run.plain_integrator, plain_grid));
    plain_checks(s, plain, out.plain.back(), i, out.report);
  }
  if (!s.schedule) return out;

  const FlowProblem reg = FlowProblem::tikhonov(s.family, s.domain, *s.schedule);
  const auto grid = sample_grid(s.run, s.run.horizon);
  DiagnosticOptions diag;
  diag.regpath_tol = s.checks.regpath_tol;
  diag.fix_distance = s.analytics.fix_distance;
  for (std::size_t i = 0; i < s.starts.size(); ++i) {
    out.tikhonov.push_back(
        integrate(reg, s.starts[i], s.run.horizon, s.run.integrator, grid, diag));
    tikhonov_checks(s, out.tikhonov.back(), i, out.report);
  }
  if (out.tikhonov.size() >= 2) {
    double worst = 0.0;
    for (std::size_t i = 0; i < out.tikhonov.size(); ++i) {
      for (std::size_t j = i + 1; j < out.tikhonov.size(); ++j) {
        worst = std::max(worst, (out.tikhonov[i].final_state() -
                                 out.tikhonov[j].final_state()).norm());
      }
    }
    out.report.add(make_check("flow.tikhonov.start-agreement", worst,
                              s.analytics.agreement_tol, out.tikhonov.size()));
  }
  return out;
}

Report monitors_impl(const Scenario& s, std::uint64_t seed) {
  Report report;
  if (s.analytics.fix_distance) {
    const PsiMonitor m = psi_monitor(s);
    double worst_step = -std::numeric_limits<double>::infinity();
    for (std::size_t k = 1; k < m.times.size(); ++k) {
      worst_step = std::max(worst_step, m.psi_over_eps[k] - m.psi_over_eps[k - 1]);
    }
    CheckReport r;
    r.id = "monitor.psi-over-eps-decreasing";
    r.passed = m.strictly_decreasing;
    r.measured = worst_step;
    r.threshold = 0.0;
    r.samples = m.times.size();
    std::ostringstream note;
    note << "final psi/eps " << m.psi_over_eps.back() << " at t=" << m.times.back()
         << ", ratio to the constant-family value "
         << m.psi_over_eps.back() / m.prediction.back();
    r.note = note.str();
    report.add(std::move(r));
  }
  if (s.drift) {
    const auto times = drift_sample_times();
    const std::size_t n = s.checks.drift_samples;
    report.add(moreau_sweep(*s.drift, times, sub_seed(seed, 101), n, s.checks.tol));
    report.add(drift_bound_sweep(*s.drift, s.drift_constant(), times,
                                 sub_seed(seed, 102), n, s.checks.tol));
  }
  return report;
}

void write_file(const std::filesystem::path& path,
                const std::function<void(std::ostream&)>& body) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot write " + path.string());
  body(out);
  if (!out) throw ConfigError("error writing " + path.string());
}

}  // namespace

CheckReport resolvent_sweep(const Operator& T, PointSampler& sampler,
                            std::size_t count, double eps_lo, double eps_hi,
                            double tol) {
  Worst worst;
  for (std::size_t k = 0; k < count; ++k) {
    const Vector y = sampler.next();
    auto [lambda, mu] = draw_pair(sampler, eps_lo, eps_hi);
    if (!(mu > lambda)) mu = 2.0 * lambda;
    const double defect = check_resolvent_identity(T, lambda, mu, y, tol);
    worst.offer(defect, y, Vector(vec({lambda, mu})));
  }
  return worst.report("regpath.resolvent-identity", 10.0 * tol, count);
}

CheckReport fejer_sweep(const Operator& T, const ConvexSet& fix_set,
                        PointSampler& sampler, std::size_t count, double eps_lo,
                        double eps_hi, double tol) {
  Worst worst;
  for (std::size_t k = 0; k < count; ++k) {
    const Vector y = sampler.next();
    const Vector fixed = fix_set.project(sampler.next());
    const double eps = sampler.uniform(eps_lo, eps_hi);
    const CheckReport r = check_fejer_triple(T, eps, y, fixed, tol);
    // measured = LHS, threshold = RHS + 10 tol.
    worst.offer(r.measured - (r.threshold - 10.0 * tol), y, fixed);
  }
  return worst.report("regpath.fejer-triple", 10.0 * tol, count);
}

CheckReport reg_firm_sweep(const Operator& T, PointSampler& sampler,
                           std::size_t count, double eps_lo, double eps_hi,
                           double tol) {
  return check_pairs(
      "regpath.firmly-nonexpansive",
      [&](const Vector& y1, const Vector& y2) {
        const double eps = sampler.uniform(eps_lo, eps_hi);
        const Vector f1 = solve_reg_point(T, eps, y1, tol).point;
        const Vector f2 = solve_reg_point(T, eps, y2, tol).point;
        const Vector df = f1 - f2;
        const Vector dy = y1 - y2;
        return df.squaredNorm() + (dy - df).squaredNorm() - dy.squaredNorm();
      },
      sampler, count, 10.0 * tol);
}

CheckReport path_lipschitz_sweep(const Operator& T, PointSampler& sampler,
                                 std::size_t count, double eps_lo,
                                 double eps_hi, double tol) {
  Worst worst;
  for (std::size_t k = 0; k < count; ++k) {
    const Vector x = sampler.next();
    const double e1 = sampler.uniform(eps_lo, eps_hi);
    const double e2 = sampler.uniform(eps_lo, eps_hi);
    const CheckReport r = check_path_lipschitz(T, x, e1, e2, tol);
    worst.offer(r.measured - (r.threshold - 10.0 * tol), x, Vector(vec({e1, e2})));
  }
  return worst.report("regpath.path-lipschitz", 10.0 * tol, count);
}

std::vector<double> drift_sample_times() {
  return {0.0, 0.25, 0.5, 1.0, 2.0, 5.0, 10.0, 100.0, 1000.0, 10000.0};
}

CheckReport moreau_sweep(const DriftParts& drift, std::span<const double> times,
                         std::uint64_t seed, std::size_t count, double tol) {
  const ConvexSet& C = drift.sets.base();
  PointSampler sampler(ConvexSet::ball(Vector::Zero(C.dim()), drift.radius), seed);
  Worst worst;
  for (std::size_t k = 0; k < count; ++k) {
    const double t = times[k % times.size()];
    const Vector z = sampler.next();
    const ConvexSet Ct = drift.sets.member(t);
    const double haus = drift.sets.hausdorff_to_base(t);
    const double lhs = (Ct.project(z) - C.project(z)).squaredNorm();
    const double rhs = 2.0 * (Ct.distance(z) + C.distance(z)) * haus;
    worst.offer(lhs - rhs, z, Vector(vec({t})));
  }
  return worst.report("monitor.moreau-inequality", tol, count);
}

CheckReport drift_bound_sweep(const DriftParts& drift, double c_phi,
                              std::span<const double> times, std::uint64_t seed,
                              std::size_t count, double tol) {
  const ConvexSet& C = drift.sets.base();
  const ProxSpec limit(ProxFunction::indicator(C), drift.mu);
  PointSampler sampler(ConvexSet::ball(Vector::Zero(C.dim()), drift.radius), seed);
  Worst worst;
  for (std::size_t k = 0; k < count; ++k) {
    const double t = times[k % times.size()];
    const Vector z = sampler.next();
    const ProxSpec member(ProxFunction::indicator(drift.sets.member(t)), drift.mu);
    const double kappa = 2.0 * std::sqrt(drift.sets.hausdorff_to_base(t));
    const double lhs = (prox(member, z) - prox(limit, z)).norm();
    const double rhs = kappa * std::sqrt(z.norm() + c_phi);
    worst.offer(lhs - rhs, z, Vector(vec({t})));
  }
  return worst.report("monitor.drift-bound", tol, count,
                      "kappa(t) = 2 Haus^{1/2}(C_t, C), p = 1/2");
}

PsiMonitor psi_monitor(const Scenario& s) {
  if (!s.schedule || !s.analytics.fix_distance) {
    throw ConfigError(s.name + ": psi monitor needs a schedule and fix_distance");
  }
  const EpsilonSchedule& eps = s.schedule->eps;
  if (eps.kind() != EpsilonSchedule::Kind::Power) {
    throw ConfigError(s.name + ": psi monitor needs a power schedule");
  }
  const double d = *s.analytics.fix_distance;
  PsiMonitor m;
  m.times = s.run.monitor_times;
  for (double t : m.times) {
    m.psi_over_eps.push_back(
        psi(t, s.family, *s.schedule, d, s.checks.regpath_tol).psi_over_eps);
    m.prediction.push_back(eps.beta() / eps.eps0() *
                           std::pow(1.0 + t, eps.beta() - 1.0) * d);
  }
  m.strictly_decreasing = true;
  for (std::size_t k = 1; k < m.times.size(); ++k) {
    if (!(m.psi_over_eps[k] < m.psi_over_eps[k - 1])) m.strictly_decreasing = false;
  }
  return m;
}

Report run_checks(const Scenario& s, std::uint64_t seed) {
  return staged(s, "checks", [&] { return checks_impl(s, seed); });
}

RegpathOutcome run_regpath(const Scenario& s) {
  return staged(s, "regpath", [&] { return regpath_impl(s); });
}

SimulationOutcome run_simulate(const Scenario& s) {
  return staged(s, "simulate", [&] { return simulate_impl(s); });
}

Report run_monitors(const Scenario& s, std::uint64_t seed) {
  return staged(s, "monitors", [&] { return monitors_impl(s, seed); });
}

void emit_rate_table(std::ostream& os, const Trajectory& plain,
                     const Analytics& a) {
  if (!a.fix_set) {
    throw ConfigError("rate table: analytics.fix_set is required");
  }
  const Vector& x0 = plain.states.front();
  const double d = a.fix_set->distance(x0);
  const bool exp_columns = a.alpha && a.fixed_point;
  const double d_star = exp_columns ? (x0 - *a.fixed_point).norm() : 0.0;

  CsvWriter csv(os);
  std::vector<std::string> cols{"t", "residual", "bound", "ratio", "flagged"};
  if (exp_columns) cols.insert(cols.end(), {"exp_bound", "exp_ratio"});
  csv.header(cols);
  for (std::size_t k = 0; k < plain.times.size(); ++k) {
    const double t = plain.times[k];
    if (!(t > 0.0)) continue;
    const double r = plain.diagnostics[k].residual_limit;
    const double bound = d / std::sqrt(t);
    const double ratio = bound > 0.0 ? r / bound
                                     : (r > 0.0 ? std::numeric_limits<double>::infinity() : 0.0);
    csv.field(t).field(r).field(bound).field(ratio).field(
        static_cast<long long>(ratio > kRateSlack ? 1 : 0));
    if (exp_columns) {
      const double env = std::exp(-(1.0 - *a.alpha) * t) * d_star;
      const double dist = (plain.states[k] - *a.fixed_point).norm();
      csv.field(env).field(env > 0.0 ? dist / env : 0.0);
    }
    csv.end_row();
  }
}

Report run_scenario(const Scenario& s, const ScenarioOptions& options) {
  const std::uint64_t seed = options.seed.value_or(s.seed);
  const std::filesystem::path dir = options.out_dir / s.name;
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw ConfigError("cannot create " + dir.string() + ": " + ec.message());

  Report report = run_checks(s, seed);
  const bool operator_ok = std::none_of(
      report.entries().begin(), report.entries().end(), [](const CheckReport& r) {
        return !r.passed && r.id.rfind("operator.class", 0) == 0;
      });
  if (operator_ok) {
    const RegpathOutcome path = run_regpath(s);
    report.append(path.report);
    write_file(dir / "regpath.csv",
               [&](std::ostream& os) { write_path_csv(os, path.path); });

    const SimulationOutcome sim = run_simulate(s);
    report.append(sim.report);
    for (std::size_t i = 0; i < sim.plain.size(); ++i) {
      write_file(dir / ("plain_" + std::to_string(i) + ".csv"),
                 [&](std::ostream& os) { write_trajectory_csv(os, sim.plain[i]); });
      if (s.analytics.fix_set) {
        write_file(dir / ("rate_" + std::to_string(i) + ".csv"), [&](std::ostream& os) {
          emit_rate_table(os, sim.plain[i], s.analytics);
        });
      }
    }
    for (std::size_t i = 0; i < sim.tikhonov.size(); ++i) {
      write_file(dir / ("tikhonov_" + std::to_string(i) + ".csv"),
                 [&](std::ostream& os) { write_trajectory_csv(os, sim.tikhonov[i]); });
    }
    report.append(run_monitors(s, seed));
  }
  write_file(dir / "report.txt", [&](std::ostream& os) { report.write(os); });
  return report;
}

}  // namespace tikflow
