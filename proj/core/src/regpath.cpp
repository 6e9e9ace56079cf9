#include "tikflow/regpath.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>
#include <string>

#include "tikflow/checks.hpp"
#include "tikflow/csv.hpp"
#include "tikflow/error.hpp"

namespace tikflow {

double expected_iterations(double eps, double tol) {
  return std::log(tol) / std::log(1.0 / (1.0 + eps));
}

RegPoint solve_reg_point(const Operator& T, double eps, const Vector& y,
                         double tol, std::size_t max_iter,
                         const std::optional<Vector>& warm_start) {
  if (!(eps > 0.0) || !std::isfinite(eps)) {
    throw ParameterError("solve_reg_point: eps must be positive");
  }
  if (!(tol > 0.0)) throw ParameterError("solve_reg_point: tol must be > 0");
  require_finite(y, "solve_reg_point anchor");
  if (!T.domain().contains(y)) {
    throw DomainError("solve_reg_point: anchor outside the domain of " +
                      T.name());
  }

  const double eta = eps / (1.0 + eps);
  const double target = tol * eps;
  Vector x = warm_start ? *warm_start : y;
  require_same_dim(x, y, "solve_reg_point warm start");

  constexpr double kRounding = 8.0 * std::numeric_limits<double>::epsilon();
  std::size_t it = 0;
  double step = std::numeric_limits<double>::infinity();
  double threshold = target;
  while (it < max_iter) {
    Vector next = eta * y + (1.0 - eta) * T(x);
    step = (next - x).norm();
    x = std::move(next);
    ++it;
    threshold = std::max(target, kRounding * (x.norm() + y.norm()));
    if (step <= threshold) break;
    if (!std::isfinite(step)) {
      throw NonConvergenceError("solve_reg_point: iterate became non-finite", x,
                                step, it, expected_iterations(eps, tol));
    }
  }

  const double residual = (eps * (x - y) + (x - T(x))).norm();
  if (step > threshold) {
    throw NonConvergenceError(
        "solve_reg_point: no convergence after " + std::to_string(it) +
            " iterations (eps=" + std::to_string(eps) + ")",
        x, residual, it, expected_iterations(eps, tol));
  }
  RegPoint out;
  out.epsilon = eps;
  out.anchor = y;
  out.point = std::move(x);
  out.residual_norm = residual;
  out.residual_target = threshold;
  out.iterations = it;
  return out;
}

std::vector<double> geometric_schedule(double eps0, double ratio,
                                       std::size_t count) {
  if (!(eps0 > 0.0)) throw ParameterError("geometric_schedule: eps0 <= 0");
  if (!(ratio > 0.0 && ratio < 1.0)) {
    throw ParameterError("geometric_schedule: ratio must lie in (0, 1)");
  }
  std::vector<double> out(count);
  double e = eps0;
  for (auto& v : out) {
    v = e;
    e *= ratio;
  }
  return out;
}

const char* to_string(PathStop stop) {
  switch (stop) {
    case PathStop::ScheduleExhausted: return "schedule-exhausted";
    case PathStop::Converged: return "converged";
    case PathStop::EpsilonFloor: return "epsilon-floor";
    case PathStop::Diverged: return "diverged";
  }
  return "unknown";
}

PathResult follow_path(const Operator& T, const Vector& y,
                       std::span<const double> eps_schedule,
                       const PathOptions& options) {
  if (eps_schedule.empty()) throw ParameterError("follow_path: empty schedule");
  for (std::size_t k = 0; k < eps_schedule.size(); ++k) {
    if (!(eps_schedule[k] > 0.0)) {
      throw ParameterError("follow_path: epsilons must be positive");
    }
    if (k > 0 && !(eps_schedule[k] < eps_schedule[k - 1])) {
      throw ParameterError("follow_path: schedule must be strictly decreasing");
    }
  }
  PathResult out;
  out.divergence_radius = options.divergence_radius > 0.0
                              ? options.divergence_radius
                              : 1e6 * (1.0 + y.norm());

  std::optional<Vector> warm;
  for (std::size_t k = 0; k < eps_schedule.size(); ++k) {
    const double eps = eps_schedule[k];
    if (eps < options.eps_min) {
      out.stop = PathStop::EpsilonFloor;
      break;
    }
    RegPoint p;
    try {
      p = solve_reg_point(T, eps, y, options.tol, options.max_iter, warm);
    } catch (const NonConvergenceError& e) {
      throw NonConvergenceError("follow_path[" + std::to_string(k) + "]: " +
                                    e.what(),
                                e.last_iterate(), e.residual(), e.iterations(),
                                e.expected_iterations());
    }
    warm = p.point;
    const double size = p.point.norm();
    const double moved =
        out.points.empty()
            ? std::numeric_limits<double>::infinity()
            : (p.point - out.points.back().point).norm();
    out.epsilons.push_back(eps);
    out.points.push_back(std::move(p));
    if (size > out.divergence_radius) {
      out.diverged = true;
      out.stop = PathStop::Diverged;
      break;
    }
    if (options.path_tol > 0.0 && moved < options.path_tol) {
      out.stop = PathStop::Converged;
      break;
    }
  }
  if (out.points.empty()) {
    throw ParameterError("follow_path: every epsilon is below eps_min");
  }
  out.limit_estimate = out.points.back().point;
  return out;
}

void write_path_csv(std::ostream& os, const PathResult& path) {
  CsvWriter csv(os);
  const Index n = path.points.front().point.size();
  std::vector<std::string> cols{"k", "epsilon"};
  for (auto& c : coordinate_columns(n)) cols.push_back(std::move(c));
  cols.insert(cols.end(), {"residual_norm", "iterations", "dist_to_anchor"});
  csv.header(cols);
  for (std::size_t k = 0; k < path.points.size(); ++k) {
    const RegPoint& p = path.points[k];
    csv.field(static_cast<long long>(k))
        .field(p.epsilon)
        .fields(p.point)
        .field(p.residual_norm)
        .field(static_cast<long long>(p.iterations))
        .field((p.anchor - p.point).norm());
    csv.end_row();
  }
}

CheckReport check_path_monotone(const PathResult& path, double tol) {
  double worst = 0.0;
  for (std::size_t k = 1; k < path.points.size(); ++k) {
    const auto& prev = path.points[k - 1];
    const auto& cur = path.points[k];
    const double drop =
        (prev.anchor - prev.point).norm() - (cur.anchor - cur.point).norm();
    worst = std::max(worst, drop);
  }
  return make_check("regpath.anchor-distance-monotone", worst, 2.0 * tol,
                    path.points.size());
}

double check_resolvent_identity(const Operator& T, double lambda, double mu,
                                const Vector& y, double tol) {
  if (!(lambda > 0.0 && mu > lambda)) {
    throw ParameterError("resolvent identity requires mu > lambda > 0");
  }
  const Vector lhs = solve_reg_point(T, lambda, y, tol).point;
  const double r = lambda / mu;
  const Vector anchor = r * y + (1.0 - r) * lhs;
  const Vector rhs = solve_reg_point(T, mu, anchor, tol).point;
  return (lhs - rhs).norm();
}

CheckReport check_path_lipschitz(const Operator& T, const Vector& x,
                                 double eps1, double eps2, double tol) {
  if (!(eps1 > 0.0 && eps2 > 0.0)) {
    throw ParameterError("path lipschitz: epsilons must be positive");
  }
  const Vector f1 = solve_reg_point(T, eps1, x, tol).point;
  const Vector f2 = eps1 == eps2 ? f1 : solve_reg_point(T, eps2, x, tol).point;
  const double lo = std::min(eps1, eps2);
  const Vector& fmin = eps1 <= eps2 ? f1 : f2;
  const double lhs = (f2 - f1).norm();
  const double rhs = std::abs(eps2 - eps1) / lo * (x - fmin).norm();
  return make_check("regpath.path-lipschitz", lhs, rhs + 10.0 * tol);
}

CheckReport check_fejer_triple(const Operator& T, double eps, const Vector& y,
                               const Vector& fixed_point, double tol) {
  const double own = (fixed_point - T(fixed_point)).norm();
  if (own > tol) {
    throw ParameterError("fejer triple: supplied fixed point has residual " +
                         std::to_string(own));
  }
  const Vector f = solve_reg_point(T, eps, y, tol).point;
  const double lhs = (y - f).squaredNorm() + (f - fixed_point).squaredNorm();
  const double rhs = (y - fixed_point).squaredNorm();
  return make_check("regpath.fejer-triple", lhs, rhs + 10.0 * tol);
}

CheckReport check_reg_firmly_nonexpansive(const Operator& T, double eps,
                                          PointSampler& sampler,
                                          std::size_t pairs, double tol) {
  return check_pairs(
      "regpath.firmly-nonexpansive",
      [&](const Vector& y1, const Vector& y2) {
        const Vector f1 = solve_reg_point(T, eps, y1, tol).point;
        const Vector f2 = solve_reg_point(T, eps, y2, tol).point;
        const Vector df = f1 - f2;
        const Vector dy = y1 - y2;
        return df.squaredNorm() + (dy - df).squaredNorm() - dy.squaredNorm();
      },
      sampler, pairs, 10.0 * tol);
}

}  // namespace tikflow
