#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <sstream>

#include "tikflow/error.hpp"
#include "tikflow/operator.hpp"
#include "tikflow/regpath.hpp"
#include "tikflow/sampling.hpp"

namespace tikflow {
namespace {

Operator line_projection() {
  return ops::projection(ConvexSet::hyperplane(vec({0.0, 1.0}), 0.0));
}

// Closed forms of the solution of eps x + x - T x = eps y.
Vector line_oracle(double eps, const Vector& y) {
  return vec({y[0], eps * y[1] / (1.0 + eps)});
}
Vector constant_oracle(double eps, const Vector& y, const Vector& c) {
  return (eps * y + c) / (1.0 + eps);
}

TEST(RegPointTest, Examples) {
  const double tol = 1e-12;
  const auto id = solve_reg_point(ops::identity(2), 0.3, vec({3.0, 4.0}), tol);
  EXPECT_LE((id.point - vec({3.0, 4.0})).norm(), tol);

  const auto c = solve_reg_point(ops::constant(vec({2.0, 0.0})), 1.0, vec({0.0, 0.0}), tol);
  EXPECT_LE((c.point - vec({1.0, 0.0})).norm(), tol);

  const auto l = solve_reg_point(line_projection(), 1.0, vec({3.0, 4.0}), tol);
  EXPECT_LE((l.point - vec({3.0, 2.0})).norm(), tol);
  EXPECT_LE(l.residual_norm, tol * 1.0 + 1e-15);
}

TEST(RegPointTest, MatchesClosedFormsAcrossEpsilon) {
  std::mt19937_64 rng(13);
  std::uniform_real_distribution<double> eps_dist(-3.0, 1.0);
  std::normal_distribution<double> g(0.0, 5.0);
  const Vector c = vec({-1.0, 2.5});
  for (int k = 0; k < 100; ++k) {
    const double eps = std::pow(10.0, eps_dist(rng));
    const Vector y = vec({g(rng), g(rng)});
    const double tol = 1e-10;
    const auto pl = solve_reg_point(line_projection(), eps, y, tol);
    EXPECT_LE((pl.point - line_oracle(eps, y)).norm(), tol * (1.0 + eps));
    const auto pc = solve_reg_point(ops::constant(c), eps, y, tol);
    EXPECT_LE((pc.point - constant_oracle(eps, y, c)).norm(), tol * (1.0 + eps));
  }
}

TEST(RegPointTest, TranslationSolutionGrowsLikeInverseEpsilon) {
  const auto T = ops::translation(vec({1.0, 0.0}));
  for (double eps : {1.0, 0.1, 0.01}) {
    const auto p = solve_reg_point(T, eps, vec({0.0, 0.0}), 1e-10);
    EXPECT_NEAR(p.point.norm(), 1.0 / eps, 1e-8);
  }
}

TEST(RegPointTest, NonConvergenceCarriesMetadata) {
  const double eps = 1e-3;
  const double tol = 1e-12;
  try {
    solve_reg_point(ops::scaled_rotation(1.0, 1.2), eps, vec({3.0, 4.0}), tol, 3);
    FAIL() << "expected NonConvergenceError";
  } catch (const NonConvergenceError& e) {
    EXPECT_EQ(e.iterations(), 3u);
    EXPECT_EQ(e.last_iterate().size(), 2);
    EXPECT_GT(e.residual(), 0.0);
    EXPECT_NEAR(e.expected_iterations(), expected_iterations(eps, tol), 1e-9);
  }
  // log(tol) / log(1 / (1 + eps)) computed by hand.
  EXPECT_NEAR(expected_iterations(1.0, 1e-6), std::log(1e6) / std::log(2.0), 1e-9);
}

TEST(RegPointTest, InvalidArgumentsThrow) {
  const auto T = line_projection();
  EXPECT_THROW(solve_reg_point(T, 0.0, vec({1.0, 1.0}), 1e-9), ParameterError);
  EXPECT_THROW(solve_reg_point(T, 1.0, vec({1.0, 1.0}), 0.0), ParameterError);
  const auto boxed = ops::identity(2).restricted_to(
      ConvexSet::box(vec({0.0, 0.0}), vec({1.0, 1.0})));
  EXPECT_THROW(solve_reg_point(boxed, 1.0, vec({2.0, 0.0}), 1e-9), DomainError);
}

TEST(RegPointTest, FirmlyNonexpansiveAndMonotoneInEpsilon) {
  const auto T = ops::scaled_rotation(1.0, 1.2);
  PointSampler s(ConvexSet::box(vec({-4.0, -4.0}), vec({4.0, 4.0})), 5);
  for (double eps : {0.05, 0.5, 5.0}) {
    EXPECT_TRUE(check_reg_firmly_nonexpansive(T, eps, s, 200, 1e-10).passed);
  }
  // ||y - F(eps, y)|| grows as eps decreases.
  const Vector y = vec({2.0, -1.0});
  double prev = 0.0;
  for (double eps : {10.0, 3.0, 1.0, 0.3, 0.1, 0.03}) {
    const double d = (y - solve_reg_point(T, eps, y, 1e-12).point).norm();
    EXPECT_GE(d, prev - 2e-12);
    prev = d;
  }
}

TEST(PathTest, GeometricSchedule) {
  const auto s = geometric_schedule(2.0, 0.5, 4);
  ASSERT_EQ(s.size(), 4u);
  EXPECT_DOUBLE_EQ(s[3], 0.25);
}

TEST(PathTest, LineLimitIsProjectionOfAnchor) {
  PathOptions opt;
  opt.tol = 1e-12;
  opt.path_tol = 1e-7;
  const auto sched = geometric_schedule(1.0, 0.5, 60);
  const auto r = follow_path(line_projection(), vec({3.0, 4.0}), sched, opt);
  EXPECT_EQ(r.stop, PathStop::Converged);
  EXPECT_FALSE(r.diverged);
  EXPECT_LE((r.limit_estimate - vec({3.0, 0.0})).norm(), 1e-6);
  EXPECT_TRUE(check_path_monotone(r, opt.tol).passed);
  for (const auto& p : r.points) {
    EXPECT_LE((p.point - line_oracle(p.epsilon, vec({3.0, 4.0}))).norm(), 1e-11);
  }
}

TEST(PathTest, IdentityPathIsConstant) {
  const auto r = follow_path(ops::identity(2), vec({3.0, 4.0}), geometric_schedule(1.0, 0.5, 10));
  EXPECT_EQ(r.stop, PathStop::ScheduleExhausted);
  EXPECT_LE((r.limit_estimate - vec({3.0, 4.0})).norm(), 1e-10);
}

TEST(PathTest, EpsilonFloorStops) {
  PathOptions opt;
  opt.eps_min = 1e-3;
  const auto r = follow_path(line_projection(), vec({3.0, 4.0}), geometric_schedule(1.0, 0.5, 40), opt);
  EXPECT_EQ(r.stop, PathStop::EpsilonFloor);
  EXPECT_GE(r.epsilons.back(), 1e-3);
  EXPECT_LT(r.epsilons.back() * 0.5, 1e-3);
}

TEST(PathTest, TranslationDiverges) {
  PathOptions opt;
  opt.divergence_radius = 1e3;
  const auto r = follow_path(ops::translation(vec({1.0, 0.0})), vec({0.0, 0.0}),
                             geometric_schedule(1.0, 0.5, 30), opt);
  EXPECT_TRUE(r.diverged);
  EXPECT_EQ(r.stop, PathStop::Diverged);
  EXPECT_GT(r.limit_estimate.norm(), 1e3);
  EXPECT_NEAR(r.limit_estimate.norm() * r.epsilons.back(), 1.0, 1e-6);
}

TEST(PathTest, InvalidScheduleThrows) {
  const auto T = line_projection();
  const Vector y = vec({1.0, 1.0});
  EXPECT_THROW(follow_path(T, y, std::vector<double>{}), ParameterError);
  EXPECT_THROW(follow_path(T, y, std::vector<double>{1.0, 1.0}), ParameterError);
  EXPECT_THROW(follow_path(T, y, std::vector<double>{1.0, -0.5}), ParameterError);
  PathOptions opt;
  opt.eps_min = 10.0;
  EXPECT_THROW(follow_path(T, y, std::vector<double>{1.0}, opt), ParameterError);
}

TEST(PathTest, CsvLayout) {
  const auto r = follow_path(line_projection(), vec({3.0, 4.0}), geometric_schedule(1.0, 0.5, 3));
  std::ostringstream os;
  write_path_csv(os, r);
  std::istringstream is(os.str());
  std::string header;
  std::getline(is, header);
  EXPECT_EQ(header, "k,epsilon,x0,x1,residual_norm,iterations,dist_to_anchor");
  int rows = 0;
  for (std::string line; std::getline(is, line);) ++rows;
  EXPECT_EQ(rows, 3);
}

TEST(ResolventTest, LineExample) {
  // F(0.5, (3,4)) = (3, 4/3); the shifted anchor is (3, 2) and F(2, (3,2))
  // is again (3, 4/3).
  EXPECT_LE(check_resolvent_identity(line_projection(), 0.5, 2.0, vec({3.0, 4.0}), 1e-12),
            1e-11);
  EXPECT_THROW(check_resolvent_identity(line_projection(), 2.0, 0.5, vec({3.0, 4.0}), 1e-12),
               ParameterError);
}

TEST(ResolventTest, HoldsForRandomNonexpansiveMaps) {
  std::mt19937_64 rng(29);
  std::uniform_real_distribution<double> u(0.05, 5.0);
  std::normal_distribution<double> g(0.0, 3.0);
  const std::vector<Operator> ops_list = {
      ops::scaled_rotation(1.0, 0.7), ops::constant(vec({1.0, 1.0})),
      ops::projection(ConvexSet::ball(vec({0.0, 1.0}), 1.0))};
  for (const auto& T : ops_list) {
    for (int k = 0; k < 30; ++k) {
      double a = u(rng), b = u(rng);
      if (a == b) continue;
      if (a > b) std::swap(a, b);
      EXPECT_LE(check_resolvent_identity(T, a, b, vec({g(rng), g(rng)}), 1e-11), 1e-9);
    }
  }
}

TEST(PathLipschitzTest, LineExample) {
  // F(1, x) = (3, 2), F(1/2, x) = (3, 4/3): left side 2/3, right side
  // (1/2)/(1/2) * ||x - F(1/2, x)|| = 8/3.
  const auto r = check_path_lipschitz(line_projection(), vec({3.0, 4.0}), 1.0, 0.5, 1e-12);
  EXPECT_TRUE(r.passed);
  EXPECT_NEAR(r.measured, 2.0 / 3.0, 1e-10);
  EXPECT_NEAR(r.threshold, 8.0 / 3.0, 1e-10);
}

TEST(FejerTest, LineExample) {
  // y = (3,4), F = (3,2), x* = (3,0): 4 + 4 <= 16.
  const auto r = check_fejer_triple(line_projection(), 1.0, vec({3.0, 4.0}), vec({3.0, 0.0}), 1e-12);
  EXPECT_TRUE(r.passed);
  EXPECT_NEAR(r.measured, 8.0, 1e-9);
  EXPECT_NEAR(r.threshold, 16.0, 1e-9);
  EXPECT_THROW(check_fejer_triple(line_projection(), 1.0, vec({3.0, 4.0}), vec({3.0, 1.0}), 1e-12),
               ParameterError);
}

}  // namespace
}  // namespace tikflow
