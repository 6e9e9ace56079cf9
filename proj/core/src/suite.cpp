#include "tikflow/suite.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <ostream>
#include <sstream>

#include "tikflow/checks.hpp"
#include "tikflow/csv.hpp"
#include "tikflow/error.hpp"
#include "tikflow/scenario_runner.hpp"

namespace tikflow {
namespace {

constexpr std::uint64_t kSeed = 7;

struct Outcome {
  bool passed = false;
  double measured = 0.0;
  double threshold = 0.0;
  std::string detail;
};

std::string fmt(double v) { return format_double(v); }

IntegratorControls rk4(double step) {
  IntegratorControls c;
  c.method = Method::Rk4;
  c.step = step;
  return c;
}

Operator line_projection() {
  return builtin_scenario("line-select").op;
}

Operator ball_projection() {
  return ops::projection(ConvexSet::ball(vec({1.0, 1.0}), 1.5));
}

PointSampler plane_sampler(std::uint64_t stream) {
  return PointSampler(ConvexSet::whole_space(2), kSeed * 1000 + stream);
}

Outcome residual_rate() {
  const auto start = std::chrono::steady_clock::now();
  const FlowProblem problem =
      FlowProblem::plain(line_projection(), ConvexSet::whole_space(2));
  const Vector x0 = vec({3.0, 4.0});
  const double d = 4.0;  // dist((3, 4), {x2 = 0})
  const auto grid = uniform_grid(20.0, 2000);
  const Trajectory traj = integrate(problem, x0, 20.0, rk4(1e-3), grid);
  double worst = 0.0;
  for (std::size_t k = 0; k < traj.times.size(); ++k) {
    const double t = traj.times[k];
    if (t < 0.1) continue;
    worst = std::max(worst, traj.diagnostics[k].residual_limit * std::sqrt(t) / d);
  }
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return {worst <= 1.05 && secs < 5.0, worst, 1.05,
          "max residual*sqrt(t)/4 over t in [0.1,20]; runtime " + fmt(secs) +
              "s (limit 5s)"};
}

Outcome exponential_stability() {
  const auto start = std::chrono::steady_clock::now();
  const Operator T = builtin_scenario("contraction").op;
  const FlowProblem problem = FlowProblem::plain(T, ConvexSet::whole_space(2));
  const Vector x0 = vec({1.0, 1.0});
  const auto grid = uniform_grid(20.0, 2000);
  DiagnosticOptions diag;
  diag.lyapunov = false;
  const Trajectory traj = integrate(problem, x0, 20.0, rk4(1e-3), grid, diag);
  double worst = 0.0;
  for (std::size_t k = 0; k < traj.times.size(); ++k) {
    const double env = std::exp(-0.5 * traj.times[k]) * x0.norm();
    worst = std::max(worst, traj.states[k].norm() / env);
  }
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return {worst <= 1.0 + 1e-3 && secs < 5.0, worst, 1.0 + 1e-3,
          "max ||x(t)|| / (exp(-t/2) ||x0||) over t in [0,20]; runtime " +
              fmt(secs) + "s (limit 5s)"};
}

Outcome invariance() {
  const Scenario s = builtin_scenario("box-invariance");
  const FlowProblem problem = FlowProblem::tikhonov(s.family, s.domain, *s.schedule);
  const auto grid = uniform_grid(s.run.horizon, 4000);
  DiagnosticOptions diag;
  diag.lyapunov = false;
  double worst = 0.0;
  for (const Vector& x0 : s.starts) {
    const Trajectory traj =
        integrate(problem, x0, s.run.horizon, s.run.integrator, grid, diag);
    worst = std::max(worst, traj.max_set_violation());
  }
  return {worst <= 1e-6, worst, 1e-6,
          "max d_D(x(t)) over " + std::to_string(s.starts.size()) +
              " starts on [0," + fmt(s.run.horizon) + "], RK4 h=" +
              fmt(s.run.integrator.step)};
}

/// Endpoints of the regularized flow from every start of `s`.
std::vector<Vector> endpoints(const Scenario& s) {
  const FlowProblem problem = FlowProblem::tikhonov(s.family, s.domain, *s.schedule);
  const auto grid = log_grid(1.0, s.run.horizon, 20);
  DiagnosticOptions diag;
  diag.lyapunov = false;
  std::vector<Vector> out;
  for (const Vector& x0 : s.starts) {
    out.push_back(
        integrate(problem, x0, s.run.horizon, s.run.integrator, grid, diag).final_state());
  }
  return out;
}

double max_error(const std::vector<Vector>& points, const Vector& target) {
  double worst = 0.0;
  for (const auto& p : points) worst = std::max(worst, (p - target).norm());
  return worst;
}

double max_pairwise(const std::vector<Vector>& points) {
  double worst = 0.0;
  for (std::size_t i = 0; i < points.size(); ++i) {
    for (std::size_t j = i + 1; j < points.size(); ++j) {
      worst = std::max(worst, (points[i] - points[j]).norm());
    }
  }
  return worst;
}

Outcome strong_selection() {
  const Scenario s = builtin_scenario("line-select");
  const double integral = s.schedule->eps.integral(s.run.horizon);
  const auto ends = endpoints(s);
  const double err = max_error(ends, vec({3.0, 0.0}));
  const double spread = max_pairwise(ends);
  std::ostringstream detail;
  detail << "horizon " << fmt(s.run.horizon) << " (integral of eps " << fmt(integral)
         << ", need >= 12); endpoints";
  for (const auto& e : ends) detail << " (" << fmt(e[0]) << "," << fmt(e[1]) << ")";
  detail << "; pairwise " << fmt(spread) << " (limit 0.02)";
  return {err <= 1e-2 && spread <= 2e-2 && integral >= 12.0, err, 1e-2, detail.str()};
}

Outcome path_limit() {
  const auto start = std::chrono::steady_clock::now();
  const Operator T = line_projection();
  const Vector y = vec({3.0, 4.0});
  const double tol = 1e-8;
  PathOptions opt;
  opt.tol = tol;
  const auto eps = geometric_schedule(1.0, 0.5, 21);
  const PathResult path = follow_path(T, y, eps, opt);
  double worst_point = -1.0;
  for (const RegPoint& p : path.points) {
    const double e = p.epsilon;
    const Vector exact = vec({3.0, 4.0 * e / (1.0 + e)});
    worst_point = std::max(worst_point, (p.point - exact).norm() / (tol * (1.0 + e)));
  }
  const double err = (path.limit_estimate - vec({3.0, 0.0})).norm();
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return {err <= 1e-5 && worst_point <= 1.0 && path.points.size() == 21 && secs < 1.0,
          err, 1e-5,
          std::to_string(path.points.size()) +
              " points; max closed-form error / (tol (1+eps)) " + fmt(worst_point) +
              " (limit 1); runtime " + fmt(secs) + "s (limit 1s)"};
}

Outcome resolvent_identity() {
  const double tol = 1e-10;
  std::ostringstream detail;
  double worst = 0.0;
  const std::pair<const char*, Operator> cases[] = {
      {"line-projection", line_projection()}, {"ball-projection", ball_projection()}};
  std::uint64_t stream = 0;
  for (const auto& [name, T] : cases) {
    auto sampler = plane_sampler(stream++);
    const CheckReport r = resolvent_sweep(T, sampler, 100, 0.05, 5.0, tol);
    worst = std::max(worst, r.measured);
    detail << name << " " << fmt(r.measured) << "; ";
  }
  detail << "100 (lambda, mu, y) per operator, inner tol 1e-10";
  return {worst <= 10.0 * tol, worst, 10.0 * tol, detail.str()};
}

Outcome fejer_and_firmness() {
  const double tol = 1e-10;
  auto line = plane_sampler(10);
  const CheckReport fejer = fejer_sweep(
      line_projection(), ConvexSet::hyperplane(vec({0.0, 1.0}), 0.0), line, 1000,
      0.05, 5.0, tol);
  auto ball = plane_sampler(11);
  const CheckReport fejer_ball =
      fejer_sweep(ball_projection(), ConvexSet::ball(vec({1.0, 1.0}), 1.5), ball,
                  1000, 0.05, 5.0, tol);
  auto firm_s = plane_sampler(12);
  const CheckReport firm = reg_firm_sweep(line_projection(), firm_s, 1000, 0.05, 5.0, tol);
  auto firm_b = plane_sampler(13);
  const CheckReport firm_ball =
      reg_firm_sweep(ball_projection(), firm_b, 1000, 0.05, 5.0, tol);
  const double worst = std::max({fejer.measured, fejer_ball.measured, firm.measured,
                                 firm_ball.measured});
  return {worst <= 10.0 * tol, worst, 10.0 * tol,
          "worst violations: fejer line " + fmt(fejer.measured) + ", fejer ball " +
              fmt(fejer_ball.measured) + ", firm line " + fmt(firm.measured) +
              ", firm ball " + fmt(firm_ball.measured) + "; 1000 instances each"};
}

Outcome path_lipschitz() {
  const double tol = 1e-10;
  const std::pair<const char*, Operator> cases[] = {
      {"line-projection", line_projection()},
      {"ball-projection", ball_projection()},
      {"constant", ops::constant(vec({2.0, 0.0}))},
      {"contraction", builtin_scenario("contraction").op},
      {"lasso", builtin_scenario("lasso-select").op}};
  std::ostringstream detail;
  double worst = -1.0;
  std::uint64_t stream = 20;
  for (const auto& [name, T] : cases) {
    auto sampler = plane_sampler(stream++);
    const CheckReport r = path_lipschitz_sweep(T, sampler, 200, 0.05, 5.0, tol);
    worst = std::max(worst, r.measured);
    detail << name << " " << fmt(r.measured) << "; ";
  }
  detail << "worst LHS - RHS over 200 triples per operator";
  return {worst <= 10.0 * tol, worst, 10.0 * tol, detail.str()};
}

Outcome forward_backward_inequality() {
  const Scenario s = builtin_scenario("lasso-select");
  const auto& fb = *s.forward_backward;
  auto sampler = plane_sampler(30);
  const CheckReport r = check_forward_backward_inequality(s.op, fb.B, fb.phi.mu,
                                                          fb.beta, sampler, 1000, 1e-9);
  return {r.passed, r.measured, r.threshold,
          "1000 pairs, mu=" + fmt(fb.phi.mu) + ", beta=" + fmt(fb.beta)};
}

Outcome end_to_end() {
  const Scenario lasso = builtin_scenario("lasso-select");
  const Scenario box = builtin_scenario("moving-box");
  const double lasso_err = max_error(endpoints(lasso), vec({1.0, 0.0}));
  const double box_err = max_error(endpoints(box), vec({1.0, 0.5}));
  const auto times = drift_sample_times();
  const CheckReport moreau = moreau_sweep(*box.drift, times, kSeed, 500, 1e-9);
  const CheckReport bound =
      drift_bound_sweep(*box.drift, box.drift_constant(), times, kSeed + 1, 500, 1e-9);
  const double normalized = std::max(lasso_err / 1e-2, box_err / 2e-2);
  return {lasso_err <= 1e-2 && box_err <= 2e-2 && moreau.passed && bound.passed,
          normalized, 1.0,
          "lasso endpoint error " + fmt(lasso_err) + " (limit 0.01), moving-box " +
              fmt(box_err) + " (limit 0.02), Moreau worst " + fmt(moreau.measured) +
              ", drift bound worst " + fmt(bound.measured) + " (limit 1e-9, 500 z)"};
}

Outcome assumption_monitor() {
  std::ostringstream detail;
  bool decreasing = true;
  double worst_ratio = 0.0;
  for (const auto& name : builtin_scenario_names()) {
    const Scenario s = builtin_scenario(name);
    if (!s.schedule || !s.analytics.fix_distance) continue;
    const PsiMonitor m = psi_monitor(s);
    decreasing = decreasing && m.strictly_decreasing;
    detail << name << ": psi/eps";
    for (double v : m.psi_over_eps) detail << " " << fmt(v);
    const double ratio = m.psi_over_eps.back() / m.prediction.back();
    if (s.family.is_constant() && s.schedule->anchor.kind() == AnchorPath::Kind::Constant) {
      worst_ratio = std::max(worst_ratio, ratio);
      detail << " ratio to beta(1+t)^(beta-1)d " << fmt(ratio);
    }
    detail << (m.strictly_decreasing ? " decreasing; " : " NOT decreasing; ");
  }
  return {decreasing && worst_ratio <= 0.7, worst_ratio, 0.7, detail.str()};
}

Outcome divergence() {
  const Scenario s = builtin_scenario("translation");
  PathOptions opt;
  opt.tol = s.checks.path_tol;
  opt.divergence_radius = s.checks.divergence_radius;
  const auto eps = geometric_schedule(1.0, 0.5, s.checks.path_count);
  const PathResult path = follow_path(s.op, Vector::Zero(2), eps, opt);
  double worst = 0.0;
  for (const RegPoint& p : path.points) {
    worst = std::max(worst, std::abs(p.point.norm() * p.epsilon - 1.0));
  }
  return {path.diverged && worst <= 1e-2, worst, 1e-2,
          std::string("diverged=") + (path.diverged ? "yes" : "no") + " after " +
              std::to_string(path.points.size()) + " points (radius " +
              fmt(path.divergence_radius) + "); max | eps ||F(eps,0)|| - 1 |"};
}

struct Entry {
  const char* name;
  Outcome (*run)();
};

constexpr Entry kCriteria[kCriterionCount] = {
    {"residual-rate", residual_rate},
    {"exponential-stability", exponential_stability},
    {"invariance", invariance},
    {"strong-selection", strong_selection},
    {"regpath-limit", path_limit},
    {"resolvent-identity", resolvent_identity},
    {"fejer-and-firmness", fejer_and_firmness},
    {"path-lipschitz", path_lipschitz},
    {"forward-backward-inequality", forward_backward_inequality},
    {"end-to-end-selection", end_to_end},
    {"assumption-monitor", assumption_monitor},
    {"divergence-detection", divergence},
};

}  // namespace

CriterionResult run_criterion(int id) {
  if (id < 1 || id > kCriterionCount) {
    throw ParameterError("criterion id must lie in [1, " +
                         std::to_string(kCriterionCount) + "]");
  }
  const Entry& e = kCriteria[id - 1];
  CriterionResult r;
  r.id = id;
  r.name = e.name;
  const auto start = std::chrono::steady_clock::now();
  try {
    const Outcome o = e.run();
    r.passed = o.passed;
    r.measured = o.measured;
    r.threshold = o.threshold;
    r.detail = o.detail;
  } catch (const Error& err) {
    r.passed = false;
    r.detail = std::string("error: ") + err.what();
  }
  r.seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return r;
}

std::vector<CriterionResult> run_suite() {
  std::vector<CriterionResult> out;
  for (int id = 1; id <= kCriterionCount; ++id) out.push_back(run_criterion(id));
  return out;
}

void write_line(std::ostream& os, const CriterionResult& r) {
  os << "criterion " << r.id << " " << r.name << ": "
     << (r.passed ? "PASS" : "FAIL") << " measured=" << format_double(r.measured)
     << " threshold=" << format_double(r.threshold) << " time="
     << format_double(std::round(r.seconds * 1000.0) / 1000.0) << "s " << r.detail
     << '\n';
}

}  // namespace tikflow
