#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include "tikflow/checks.hpp"
#include "tikflow/error.hpp"
#include "tikflow/forward_backward.hpp"
#include "tikflow/operator.hpp"
#include "tikflow/prox.hpp"
#include "tikflow/sampling.hpp"

namespace tikflow {
namespace {

Matrix diag2(double a, double b) {
  Matrix m = Matrix::Zero(2, 2);
  m(0, 0) = a;
  m(1, 1) = b;
  return m;
}

// Minimizer of w|y| + (y - x)^2 / (2 mu) over a grid of spacing 1e-4.
double l1_prox_grid_oracle(double w, double mu, double x) {
  double best = 0.0;
  double best_val = std::numeric_limits<double>::infinity();
  for (int k = -60000; k <= 60000; ++k) {
    const double y = k * 1e-4;
    const double v = w * std::abs(y) + (y - x) * (y - x) / (2.0 * mu);
    if (v < best_val) {
      best_val = v;
      best = y;
    }
  }
  return best;
}

// 0 in d||.||_1(x) + x - b, coordinatewise.
bool lasso_optimal(const Vector& x, const Vector& b, double tol) {
  for (Index i = 0; i < x.size(); ++i) {
    const double g = x[i] - b[i];
    if (x[i] > tol) {
      if (std::abs(1.0 + g) > tol) return false;
    } else if (x[i] < -tol) {
      if (std::abs(-1.0 + g) > tol) return false;
    } else if (std::abs(g) > 1.0 + tol) {
      return false;
    }
  }
  return true;
}

TEST(ProxTest, L1MatchesGridOracle) {
  const auto fn = ProxFunction::l1(0.7);
  for (double mu : {0.3, 1.0, 2.5}) {
    for (double x : {-3.0, -1.1, -0.2, 0.0, 0.4, 1.9, 4.2}) {
      const double p = fn.prox(mu, vec({x}))[0];
      EXPECT_NEAR(p, l1_prox_grid_oracle(0.7, mu, x), 1e-4) << "mu=" << mu << " x=" << x;
    }
  }
  const Vector p = ProxFunction::l1(1.0).prox(0.5, vec({1.0, -0.2}));
  EXPECT_NEAR(p[0], 0.5, 1e-15);
  EXPECT_DOUBLE_EQ(p[1], 0.0);
}

TEST(ProxTest, QuadraticClosedForm) {
  // Stationarity: w (y - c) + (y - x) / mu = 0.
  const Vector c = vec({1.0, -2.0});
  const auto fn = ProxFunction::quadratic(c, 3.0);
  const Vector x = vec({4.0, 0.5});
  const double mu = 0.25;
  const Vector expected = (x + mu * 3.0 * c) / (1.0 + mu * 3.0);
  EXPECT_LE((fn.prox(mu, x) - expected).norm(), 1e-14);
  EXPECT_NEAR(ProxFunction::quadratic(vec({0.0}), 1.0).prox(1.0, vec({2.0}))[0], 1.0, 1e-15);
}

TEST(ProxTest, IndicatorIsProjection) {
  const auto box = ConvexSet::box(vec({0.0, 0.0}), vec({1.0, 1.0}));
  const auto fn = ProxFunction::indicator(box);
  const Vector x = vec({3.0, -0.5});
  EXPECT_EQ(fn.prox(7.0, x), box.project(x));
  EXPECT_EQ(fn.value(x), std::numeric_limits<double>::infinity());
  EXPECT_DOUBLE_EQ(fn.value(vec({0.5, 0.5})), 0.0);
}

TEST(ProxTest, SeparableActsBlockwise) {
  const auto fn = ProxFunction::separable(
      {{1, ProxFunction::l1(1.0)},
       {2, ProxFunction::indicator(ConvexSet::ball(vec({0.0, 0.0}), 1.0))}});
  const Vector p = fn.prox(1.0, vec({2.5, 0.0, 3.0}));
  EXPECT_LE((p - vec({1.5, 0.0, 1.0})).norm(), 1e-14);
  EXPECT_THROW(fn.prox(1.0, vec({1.0, 2.0})), ParameterError);
}

TEST(ProxTest, ProxMinimizesObjectiveAndIsFirmlyNonexpansive) {
  const std::vector<ProxFunction> fns = {
      ProxFunction::indicator(ConvexSet::ball(vec({1.0, 0.0}), 2.0)),
      ProxFunction::l1(0.8),
      ProxFunction::quadratic(vec({-1.0, 2.0}), 0.5),
      ProxFunction::separable({{1, ProxFunction::l1(2.0)},
                               {1, ProxFunction::quadratic(vec({3.0}), 1.0)}}),
  };
  std::mt19937_64 rng(31);
  std::normal_distribution<double> g(0.0, 4.0);
  std::normal_distribution<double> small(0.0, 0.05);
  for (const auto& fn : fns) {
    const ProxSpec spec(fn, 0.7);
    for (int k = 0; k < 300; ++k) {
      const Vector x = vec({g(rng), g(rng)});
      const Vector y = vec({g(rng), g(rng)});
      const Vector px = prox(spec, x);
      const Vector py = prox(spec, y);
      const double obj = prox_objective(spec, x, px);
      const Vector q = px + vec({small(rng), small(rng)});
      EXPECT_LE(obj, prox_objective(spec, x, q) + 1e-12) << fn.kind_name();
      EXPECT_LE((px - py).squaredNorm(), (x - y).dot(px - py) + 1e-10) << fn.kind_name();
    }
  }
}

TEST(ProxTest, InvalidStepThrows) {
  EXPECT_THROW(ProxSpec(ProxFunction::l1(1.0), 0.0), ParameterError);
  EXPECT_THROW(ProxFunction::l1(-1.0), ParameterError);
}

TEST(OperatorTest, ResidualExamples) {
  EXPECT_DOUBLE_EQ(residual(ops::identity(2), vec({3.0, -1.0})).norm(), 0.0);
  const auto line = ops::projection(ConvexSet::hyperplane(vec({0.0, 1.0}), 0.0));
  EXPECT_EQ(residual(line, vec({3.0, 4.0})), vec({0.0, 4.0}));
  EXPECT_EQ(residual(ops::constant(vec({2.0, 0.0})), vec({5.0, 1.0})), vec({3.0, 1.0}));
}

TEST(OperatorTest, ResidualOutsideDomainThrows) {
  const auto T = ops::identity(2).restricted_to(
      ConvexSet::box(vec({0.0, 0.0}), vec({1.0, 1.0})));
  EXPECT_THROW(residual(T, vec({2.0, 0.0})), DomainError);
  EXPECT_NO_THROW(residual(T, vec({1.0, 0.0})));
}

TEST(OperatorTest, ScaledRotationClaims) {
  const auto T = ops::scaled_rotation(0.5, std::numbers::pi / 2.0);
  EXPECT_EQ(T.declared().kind, OperatorClass::Contraction);
  EXPECT_LE((T(vec({2.0, 0.0})) - vec({0.0, 1.0})).norm(), 1e-15);
  EXPECT_EQ(ops::scaling(2, 2.0).declared().kind, OperatorClass::Unclassified);
  EXPECT_THROW(ops::affine_gradient(diag2(1.0, -1.0), vec({0.0, 0.0})), ParameterError);
}

TEST(ForwardBackwardTest, LassoFixedPoint) {
  const auto B = ops::affine_gradient(Matrix::Identity(2, 2), vec({2.0, 0.5}));
  const auto T = make_forward_backward(ProxSpec(ProxFunction::l1(1.0), 1.0), B);
  const Vector xs = vec({1.0, 0.0});
  ASSERT_TRUE(lasso_optimal(xs, vec({2.0, 0.5}), 1e-12));
  EXPECT_LE((T(xs) - xs).norm(), 1e-12);
  // Iterating from far away reaches the same point.
  Vector x = vec({-7.0, 9.0});
  for (int k = 0; k < 200; ++k) x = T(x);
  EXPECT_LE((x - xs).norm(), 1e-12);
}

TEST(ForwardBackwardTest, BoxConstrainedFixedPoint) {
  // min 0.5 ||x - b||^2 over the unit box: the projection of b.
  const auto box = ConvexSet::box(vec({0.0, 0.0}), vec({1.0, 1.0}));
  const Vector b = vec({2.0, 0.5});
  const auto B = ops::affine_gradient(Matrix::Identity(2, 2), b);
  const auto T = make_forward_backward(ProxSpec(ProxFunction::indicator(box), 0.5), B);
  const Vector xs = vec({1.0, 0.5});
  EXPECT_LE((T(xs) - xs).norm(), 1e-15);
  PointSampler s(ConvexSet::box(vec({-3.0, -3.0}), vec({3.0, 3.0})), 8);
  EXPECT_TRUE(check_maps_into(T, box, s, 300).passed);
}

TEST(ForwardBackwardTest, StepOutsideRangeThrows) {
  const auto B = ops::affine_gradient(diag2(1.0, 4.0), vec({0.0, 0.0}));  // beta = 1/4
  EXPECT_THROW(make_forward_backward(ProxSpec(ProxFunction::l1(1.0), 0.5), B),
               ParameterError);
  EXPECT_NO_THROW(make_forward_backward(ProxSpec(ProxFunction::l1(1.0), 0.49), B));
  EXPECT_THROW(make_forward_backward(ProxSpec(ProxFunction::l1(1.0), 0.1),
                                     ops::identity(2)),
               ParameterError);
}

TEST(ForwardBackwardTest, InequalityHoldsOnSamples) {
  const auto B = ops::affine_gradient(diag2(1.0, 4.0), vec({1.0, -1.0}));
  const double beta = 0.25;
  for (double mu : {0.1, 0.25, 0.45}) {
    const auto T = make_forward_backward(
        ProxSpec(ProxFunction::indicator(ConvexSet::ball(vec({0.0, 0.0}), 1.0)), mu), B);
    PointSampler s(ConvexSet::box(vec({-5.0, -5.0}), vec({5.0, 5.0})), 4);
    const auto r = check_forward_backward_inequality(T, B, mu, beta, s);
    EXPECT_TRUE(r.passed) << "mu=" << mu << " measured=" << r.measured;
    PointSampler s2(ConvexSet::box(vec({-5.0, -5.0}), vec({5.0, 5.0})), 4);
    EXPECT_TRUE(check_class(T, ClassClaim::nonexpansive(), s2).passed);
    PointSampler s3(ConvexSet::box(vec({-5.0, -5.0}), vec({5.0, 5.0})), 4);
    EXPECT_TRUE(check_residual_monotone(T, s3).passed);
  }
}

TEST(ChecksTest, ProjectionIsFirmlyNonexpansive) {
  const auto P = ops::projection(ConvexSet::ball(vec({0.0, 0.0}), 1.0));
  PointSampler s(ConvexSet::whole_space(2), 1);
  const auto r = check_class(P, ClassClaim::firmly_nonexpansive(), s);
  EXPECT_TRUE(r.passed);
  EXPECT_EQ(r.samples, kDefaultPairs);
  EXPECT_FALSE(r.witness.has_value());
}

TEST(ChecksTest, MislabeledScalingFailsWithWitness) {
  const auto T = ops::scaling(2, 2.0);
  PointSampler s(ConvexSet::whole_space(2), 1);
  const auto r = check_class(T, ClassClaim::nonexpansive(), s);
  ASSERT_FALSE(r.passed);
  ASSERT_TRUE(r.witness.has_value());
  // For x -> 2x the margin ||2(x - y)|| - ||x - y|| equals ||x - y||.
  EXPECT_NEAR(r.measured, (r.witness->x - r.witness->y).norm(), 1e-12);
}

TEST(ChecksTest, EmptySamplerRejected) {
  PointSampler empty;
  EXPECT_THROW(check_class(ops::identity(2), ClassClaim::nonexpansive(), empty),
               ConfigError);
}

TEST(ChecksTest, BaillonHaddadExamples) {
  PointSampler s(ConvexSet::whole_space(2), 2);
  EXPECT_TRUE(check_baillon_haddad(ops::identity(2).with_claim(ClassClaim::cocoercive(1.0)),
                                   1.0, s)
                  .passed);
  const auto g = ops::affine_gradient(diag2(1.0, 4.0), vec({0.0, 0.0}));
  EXPECT_NEAR(g.declared().modulus, 0.25, 1e-15);
  EXPECT_TRUE(check_baillon_haddad(g, 0.25, s).passed);
  EXPECT_FALSE(check_baillon_haddad(g, 0.3, s).passed);

  // x -> (-x1, x2) is 1-Lipschitz but not monotone, so not a gradient of a
  // convex function: the two directions disagree.
  const auto reflect = ops::linear(diag2(-1.0, 1.0));
  const auto r = check_baillon_haddad(reflect, 1.0, s);
  EXPECT_TRUE(r.lipschitz.passed);
  EXPECT_FALSE(r.cocoercive.passed);
  EXPECT_TRUE(r.cocoercive.witness.has_value());
  EXPECT_FALSE(r.passed);
  EXPECT_TRUE(r.inconsistent);
}

TEST(ChecksTest, ContractionClaim) {
  const auto T = ops::scaled_rotation(0.5, 0.3);
  PointSampler s(ConvexSet::whole_space(2), 3);
  EXPECT_TRUE(check_class(T, ClassClaim::contraction(0.5), s).passed);
  EXPECT_FALSE(check_class(T, ClassClaim::contraction(0.4), s).passed);
  EXPECT_THROW(ClassClaim::contraction(1.0), ParameterError);
}

TEST(ChecksTest, DeterministicForSeed) {
  const auto T = ops::scaling(2, 1.5);
  PointSampler a(ConvexSet::whole_space(2), 77), b(ConvexSet::whole_space(2), 77);
  const auto ra = check_class(T, ClassClaim::nonexpansive(), a);
  const auto rb = check_class(T, ClassClaim::nonexpansive(), b);
  EXPECT_EQ(ra.measured, rb.measured);
  EXPECT_EQ(ra.witness->x, rb.witness->x);
}

}  // namespace
}  // namespace tikflow
