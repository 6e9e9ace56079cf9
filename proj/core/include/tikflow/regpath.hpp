#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

#include "tikflow/operator.hpp"
#include "tikflow/report.hpp"
#include "tikflow/sampling.hpp"

namespace tikflow {

inline constexpr std::size_t kDefaultRegMaxIter = 20'000'000;

/// Solution x of eps * x + (x - T x) = eps * y, i.e. F(eps, y).
struct RegPoint {
  double epsilon = 0.0;
  Vector anchor;
  Vector point;
  /// ||eps * point + G(point) - eps * anchor||.
  double residual_norm = 0.0;
  /// Residual level the solve was asked to reach.
  double residual_target = 0.0;
  std::size_t iterations = 0;
};

/// A-priori iteration count log(tol) / log(1 / (1 + eps)) for the
/// contraction x <- eta y + (1 - eta) T x with eta = eps / (1 + eps).
double expected_iterations(double eps, double tol);

/// Iterates x <- eta y + (1 - eta) T(x), eta = eps / (1 + eps), from
/// `warm_start` (default y) until the step length certifies an equation
/// residual <= tol * eps. Since G = I - T is monotone this bounds the error
/// of the point itself by tol.
///
/// The step threshold is floored at the rounding level of the iterate, so for
/// very large iterates the reached residual can exceed tol * eps; the
/// returned `residual_target` states the level actually requested.
///
/// Throws ParameterError for eps <= 0 or tol <= 0, DomainError when y is not
/// in the domain of T, NonConvergenceError after max_iter iterations.
RegPoint solve_reg_point(const Operator& T, double eps, const Vector& y,
                         double tol, std::size_t max_iter = kDefaultRegMaxIter,
                         const std::optional<Vector>& warm_start = std::nullopt);

/// eps_k = eps0 * ratio^k, k = 0 .. count - 1.
std::vector<double> geometric_schedule(double eps0, double ratio,
                                       std::size_t count);

enum class PathStop {
  ScheduleExhausted,
  Converged,     // consecutive estimates closer than path_tol
  EpsilonFloor,  // next eps below eps_min
  Diverged,      // ||F(eps_k, y)|| above divergence_radius
};

const char* to_string(PathStop stop);

struct PathOptions {
  double tol = 1e-10;
  /// Stop once consecutive points differ by less than this; 0 disables.
  double path_tol = 0.0;
  double eps_min = 1e-8;
  /// <= 0 selects the default 1e6 * (1 + ||y||).
  double divergence_radius = 0.0;
  std::size_t max_iter = kDefaultRegMaxIter;
};

struct PathResult {
  std::vector<double> epsilons;
  std::vector<RegPoint> points;
  Vector limit_estimate;
  bool diverged = false;
  PathStop stop = PathStop::ScheduleExhausted;
  double divergence_radius = 0.0;
};

/// Follows eps -> 0 along a strictly decreasing schedule, warm-starting each
/// solve from the previous point. Inner non-convergence is rethrown with the
/// path index in the message.
PathResult follow_path(const Operator& T, const Vector& y,
                       std::span<const double> eps_schedule,
                       const PathOptions& options = {});

/// Columns: k, epsilon, x0..x{n-1}, residual_norm, iterations, dist_to_anchor.
void write_path_csv(std::ostream& os, const PathResult& path);

/// ||y - F(eps, y)|| is nondecreasing as eps decreases along the path, up to
/// slack 2 * tol.
CheckReport check_path_monotone(const PathResult& path, double tol);

/// ||F(lambda, y) - F(mu, (lambda/mu) y + (1 - lambda/mu) F(lambda, y))||
/// with both sides solved to `tol`. Requires mu > lambda > 0.
double check_resolvent_identity(const Operator& T, double lambda, double mu,
                                const Vector& y, double tol);

/// ||F(e2,x) - F(e1,x)|| <= |e2 - e1| / min(e1,e2) * ||x - F(min,x)||.
/// measured = left side, threshold = right side + 10 tol.
CheckReport check_path_lipschitz(const Operator& T, const Vector& x,
                                 double eps1, double eps2, double tol);

/// ||y - F||^2 + ||F - x*||^2 <= ||y - x*||^2 for a fixed point x*.
/// measured = left side, threshold = right side + 10 tol. Throws
/// ParameterError when ||x* - T x*|| > tol.
CheckReport check_fejer_triple(const Operator& T, double eps, const Vector& y,
                               const Vector& fixed_point, double tol);

/// Firm nonexpansiveness of F(eps, .) on sampled anchor pairs, slack 10 tol.
CheckReport check_reg_firmly_nonexpansive(const Operator& T, double eps,
                                          PointSampler& sampler,
                                          std::size_t pairs, double tol);

}  // namespace tikflow
