#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "tikflow/convex_set.hpp"
#include "tikflow/error.hpp"
#include "tikflow/sampling.hpp"
#include "tikflow/set_family.hpp"

namespace tikflow {
namespace {

// Oracles written independently of the library: coordinate clamping for
// boxes and the radial formula for balls.
Vector clamp_oracle(const Vector& x, const Vector& lo, const Vector& hi) {
  Vector p = x;
  for (Index i = 0; i < x.size(); ++i) p[i] = std::min(std::max(x[i], lo[i]), hi[i]);
  return p;
}

double box_distance_oracle(const Vector& x, const Vector& lo, const Vector& hi) {
  return (x - clamp_oracle(x, lo, hi)).norm();
}

// Points on the boundary of a 2-D box on a grid of spacing `h`.
std::vector<Vector> box_boundary_2d(const Vector& lo, const Vector& hi, double h) {
  std::vector<Vector> pts;
  for (double s = 0.0; s <= 1.0 + 1e-12; s += h) {
    const double x = lo[0] + s * (hi[0] - lo[0]);
    const double y = lo[1] + s * (hi[1] - lo[1]);
    pts.push_back(vec({x, lo[1]}));
    pts.push_back(vec({x, hi[1]}));
    pts.push_back(vec({lo[0], y}));
    pts.push_back(vec({hi[0], y}));
  }
  return pts;
}

std::vector<ConvexSet> catalog_2d() {
  const double r = 1.0 / std::sqrt(2.0);
  Matrix dir(2, 1);
  dir << r, r;
  return {
      ConvexSet::whole_space(2),
      ConvexSet::box(vec({-1.0, 0.0}), vec({2.0, 0.5})),
      ConvexSet::ball(vec({1.0, -1.0}), 1.5),
      ConvexSet::halfspace(vec({1.0, 2.0}), 1.0),
      ConvexSet::hyperplane(vec({0.0, 3.0}), 6.0),
      ConvexSet::affine_subspace(vec({0.0, 1.0}), dir),
      ConvexSet::translate_dilate(ConvexSet::ball(vec({0.0, 0.0}), 1.0),
                                  vec({2.0, 2.0}), 3.0),
  };
}

TEST(ConvexSetTest, ProjectionExamples) {
  const auto ball = ConvexSet::ball(vec({0.0, 0.0}), 1.0);
  EXPECT_NEAR((ball.project(vec({2.0, 0.0})) - vec({1.0, 0.0})).norm(), 0.0, 1e-15);

  const auto box = ConvexSet::box(vec({0.0, 0.0}), vec({1.0, 1.0}));
  EXPECT_NEAR((box.project(vec({2.0, -1.0})) - vec({1.0, 0.0})).norm(), 0.0, 1e-15);

  const auto half = ConvexSet::halfspace(vec({1.0, 0.0}), 0.0);
  EXPECT_NEAR((half.project(vec({1.0, 1.0})) - vec({0.0, 1.0})).norm(), 0.0, 1e-15);
  EXPECT_NEAR((half.project(vec({-3.0, 1.0})) - vec({-3.0, 1.0})).norm(), 0.0, 1e-15);

  const auto line = ConvexSet::hyperplane(vec({0.0, 1.0}), 0.0);
  EXPECT_NEAR((line.project(vec({3.0, 4.0})) - vec({3.0, 0.0})).norm(), 0.0, 1e-15);
}

TEST(ConvexSetTest, DistanceExamples) {
  const auto box = ConvexSet::box(vec({0.0, 0.0}), vec({1.0, 1.0}));
  EXPECT_DOUBLE_EQ(box.distance(vec({0.5, 0.5})), 0.0);
  EXPECT_NEAR(box.distance(vec({4.0, 5.0})), 5.0, 1e-14);

  const auto ball = ConvexSet::ball(vec({1.0, 1.0}), 2.0);
  EXPECT_NEAR(ball.distance(vec({1.0, 4.0})), 1.0, 1e-14);

  const auto plane = ConvexSet::hyperplane(vec({0.0, 2.0}), 4.0);
  EXPECT_NEAR(plane.distance(vec({7.0, 5.0})), 3.0, 1e-14);
}

TEST(ConvexSetTest, BoxMatchesClampOracle) {
  const Vector lo = vec({-1.0, 0.0, 2.0});
  const Vector hi = vec({1.0, 0.5, 3.0});
  const auto box = ConvexSet::box(lo, hi);
  std::mt19937_64 rng(7);
  std::normal_distribution<double> g(0.0, 4.0);
  for (int k = 0; k < 500; ++k) {
    const Vector x = vec({g(rng), g(rng), g(rng)});
    EXPECT_LE((box.project(x) - clamp_oracle(x, lo, hi)).norm(), 1e-15);
    EXPECT_NEAR(box.distance(x), box_distance_oracle(x, lo, hi), 1e-13);
  }
}

TEST(ConvexSetTest, AffineSubspaceMatchesLeastSquares) {
  // Oracle: minimize ||base + D c - x|| over c through the normal equations
  // of a non-orthonormal spanning set of the same subspace.
  Matrix dir(3, 2);
  const double r = 1.0 / std::sqrt(2.0);
  dir << r, 0.0, r, 0.0, 0.0, 1.0;
  const Vector base = vec({1.0, -1.0, 2.0});
  const auto set = ConvexSet::affine_subspace(base, dir);

  Matrix span(3, 2);
  span << 1.0, 1.0, 1.0, 1.0, 0.0, 2.0;
  std::mt19937_64 rng(3);
  std::normal_distribution<double> g(0.0, 3.0);
  for (int k = 0; k < 200; ++k) {
    const Vector x = vec({g(rng), g(rng), g(rng)});
    const Vector c = (span.transpose() * span).ldlt().solve(span.transpose() * (x - base));
    const Vector oracle = base + span * c;
    EXPECT_LE((set.project(x) - oracle).norm(), 1e-12);
  }
}

TEST(ConvexSetTest, TranslateDilateOfBallIsBall) {
  const auto unit = ConvexSet::ball(vec({1.0, 0.0}), 1.0);
  const auto moved = ConvexSet::translate_dilate(unit, vec({-2.0, 3.0}), 2.0);
  const auto direct = ConvexSet::ball(vec({0.0, 3.0}), 2.0);
  std::mt19937_64 rng(11);
  std::normal_distribution<double> g(0.0, 5.0);
  for (int k = 0; k < 200; ++k) {
    const Vector x = vec({g(rng), g(rng)});
    EXPECT_LE((moved.project(x) - direct.project(x)).norm(), 1e-13);
  }
  EXPECT_EQ(moved.normalized().kind_name(), "ball");
}

TEST(ConvexSetTest, HausdorffClosedForms) {
  const auto a = ConvexSet::ball(vec({0.0, 0.0}), 1.0);
  const auto b = ConvexSet::ball(vec({0.0, 0.0}), 1.5);
  EXPECT_NEAR(hausdorff(a, b), 0.5, 1e-15);
  EXPECT_NEAR(hausdorff(ConvexSet::ball(vec({3.0, 4.0}), 1.0), a), 5.0, 1e-14);
  EXPECT_DOUBLE_EQ(hausdorff(a, a), 0.0);

  const auto p1 = ConvexSet::hyperplane(vec({0.0, 1.0}), 0.0);
  const auto p2 = ConvexSet::hyperplane(vec({0.0, 2.0}), 6.0);
  EXPECT_NEAR(hausdorff(p1, p2), 3.0, 1e-14);
}

TEST(ConvexSetTest, HausdorffBoxesMatchBoundaryScan) {
  // The supremum of a distance to a convex set over a polytope is attained
  // at a vertex, so scanning boundaries on a grid that contains the vertices
  // reproduces it exactly.
  const Vector lo1 = vec({0.0, 0.0}), hi1 = vec({1.0, 1.0});
  const Vector lo2 = vec({0.0, 0.0}), hi2 = vec({2.0, 2.0});
  double sup = 0.0;
  for (const auto& p : box_boundary_2d(lo1, hi1, 0.01)) {
    sup = std::max(sup, box_distance_oracle(p, lo2, hi2));
  }
  for (const auto& p : box_boundary_2d(lo2, hi2, 0.01)) {
    sup = std::max(sup, box_distance_oracle(p, lo1, hi1));
  }
  EXPECT_NEAR(sup, std::sqrt(2.0), 1e-12);
  EXPECT_NEAR(hausdorff(ConvexSet::box(lo1, hi1), ConvexSet::box(lo2, hi2)), sup, 1e-12);
}

TEST(ConvexSetTest, HausdorffUnsupportedPairThrows) {
  const auto ball = ConvexSet::ball(vec({0.0, 0.0}), 1.0);
  const auto box = ConvexSet::box(vec({0.0, 0.0}), vec({1.0, 1.0}));
  EXPECT_THROW(hausdorff(ball, box), CapabilityError);
  EXPECT_THROW(hausdorff(ball, ConvexSet::ball(vec({0.0, 0.0, 0.0}), 1.0)),
               ParameterError);
}

TEST(ConvexSetTest, HausdorffIsSymmetricAndSatisfiesTriangle) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  std::uniform_real_distribution<double> rad(0.0, 3.0);
  auto random_ball = [&] { return ConvexSet::ball(vec({u(rng), u(rng)}), rad(rng)); };
  auto random_box = [&] {
    const Vector lo = vec({u(rng), u(rng)});
    return ConvexSet::box(lo, lo + vec({rad(rng), rad(rng)}));
  };
  for (int k = 0; k < 300; ++k) {
    const auto a = random_ball(), b = random_ball(), c = random_ball();
    EXPECT_NEAR(hausdorff(a, b), hausdorff(b, a), 1e-14);
    EXPECT_LE(hausdorff(a, c), hausdorff(a, b) + hausdorff(b, c) + 1e-12);
    const auto p = random_box(), q = random_box(), s = random_box();
    EXPECT_NEAR(hausdorff(p, q), hausdorff(q, p), 1e-14);
    EXPECT_LE(hausdorff(p, s), hausdorff(p, q) + hausdorff(q, s) + 1e-12);
  }
}

TEST(ConvexSetTest, ProjectionProperties) {
  std::mt19937_64 rng(17);
  std::normal_distribution<double> g(0.0, 6.0);
  for (const auto& set : catalog_2d()) {
    PointSampler inside(set, 99);
    for (int k = 0; k < 300; ++k) {
      const Vector x = vec({g(rng), g(rng)});
      const Vector y = vec({g(rng), g(rng)});
      const Vector px = set.project(x);
      const Vector py = set.project(y);
      SCOPED_TRACE(set.kind_name());
      EXPECT_TRUE(set.contains(px));
      EXPECT_LE((set.project(px) - px).norm(), 1e-12);
      // Variational inequality against a point of the set.
      const Vector z = inside.next();
      EXPECT_LE((x - px).dot(z - px), 1e-9 * (1.0 + x.norm() + z.norm()));
      // Firm nonexpansiveness.
      EXPECT_LE((px - py).squaredNorm(), (x - y).dot(px - py) + 1e-9);
      EXPECT_NEAR(set.distance(x), (x - px).norm(), 1e-12);
    }
  }
}

TEST(ConvexSetTest, SquaredDistanceGradientMatchesFiniteDifferences) {
  // grad (1/2) d_S^2 (x) = x - P_S(x).
  std::mt19937_64 rng(23);
  std::normal_distribution<double> g(0.0, 5.0);
  const double h = 1e-5;
  for (const auto& set : catalog_2d()) {
    for (int k = 0; k < 100; ++k) {
      const Vector x = vec({g(rng), g(rng)});
      Vector fd(2);
      for (Index i = 0; i < 2; ++i) {
        Vector e = Vector::Zero(2);
        e[i] = h;
        const double fp = 0.5 * std::pow(set.distance(x + e), 2);
        const double fm = 0.5 * std::pow(set.distance(x - e), 2);
        fd[i] = (fp - fm) / (2.0 * h);
      }
      const Vector grad = x - set.project(x);
      EXPECT_LE((fd - grad).norm(), 1e-5 * (1.0 + grad.norm())) << set.kind_name();
    }
  }
}

TEST(ConvexSetTest, InvalidParametersThrow) {
  EXPECT_THROW(ConvexSet::box(vec({1.0}), vec({0.0})), ParameterError);
  EXPECT_THROW(ConvexSet::ball(vec({0.0}), -1.0), ParameterError);
  EXPECT_THROW(ConvexSet::halfspace(vec({0.0, 0.0}), 1.0), ParameterError);
  EXPECT_THROW(ConvexSet::ball(vec({0.0, NAN}), 1.0), ParameterError);
  Matrix skew(2, 1);
  skew << 1.0, 1.0;
  EXPECT_THROW(ConvexSet::affine_subspace(vec({0.0, 0.0}), skew), ParameterError);
  EXPECT_THROW(ConvexSet::translate_dilate(ConvexSet::whole_space(2), vec({0.0, 0.0}), 0.0),
               ParameterError);
  EXPECT_THROW(ConvexSet::ball(vec({0.0, 0.0}), 1.0).project(vec({1.0})), ParameterError);
}

TEST(ConvexSetTest, Includes) {
  const auto unit = ConvexSet::box(vec({0.0, 0.0}), vec({1.0, 1.0}));
  const auto big = ConvexSet::box(vec({-1.0, -1.0}), vec({2.0, 2.0}));
  EXPECT_TRUE(includes(big, unit));
  EXPECT_FALSE(includes(unit, big));
  EXPECT_TRUE(includes(ConvexSet::whole_space(2), unit));
  EXPECT_TRUE(includes(ConvexSet::ball(vec({0.5, 0.5}), 0.75), unit));
  EXPECT_FALSE(includes(ConvexSet::ball(vec({0.5, 0.5}), 0.7), unit));
}

TEST(SetFamilyTest, InflatedBoxHausdorffIsDiagonalOffset) {
  const auto base = ConvexSet::box(vec({0.0, 0.0}), vec({1.0, 1.0}));
  const auto fam = SetFamily::inflated_box(base, [](double t) { return 1.0 / (1.0 + t); });
  for (double t : {0.0, 1.0, 9.0}) {
    const double d = 1.0 / (1.0 + t);
    const auto m = fam.member(t);
    EXPECT_TRUE(m.contains(vec({1.0 + d, 1.0 + d})));
    EXPECT_FALSE(m.contains(vec({1.0 + d + 1e-6, 1.0})));
    // Brute-force sup of d_C over the boundary of C_t.
    double sup = 0.0;
    for (const auto& p : box_boundary_2d(vec({0.0, 0.0}), vec({1.0 + d, 1.0 + d}), 0.005)) {
      sup = std::max(sup, box_distance_oracle(p, vec({0.0, 0.0}), vec({1.0, 1.0})));
    }
    EXPECT_NEAR(fam.hausdorff_to_base(t), sup, 1e-12);
    EXPECT_NEAR(sup, d * std::sqrt(2.0), 1e-12);
  }
  EXPECT_TRUE(includes(fam.envelope(1.0), fam.member(0.5)));
}

TEST(SetFamilyTest, DilatedBallHausdorffIsOffset) {
  const auto base = ConvexSet::ball(vec({1.0, 2.0}), 0.5);
  const auto fam = SetFamily::dilated_ball(base, [](double t) { return std::exp(-t); });
  for (double t : {0.0, 0.5, 3.0}) {
    EXPECT_NEAR(fam.hausdorff_to_base(t), std::exp(-t), 1e-15);
  }
}

TEST(PointSamplerTest, DeterministicAndInside) {
  for (const auto& set : catalog_2d()) {
    PointSampler a(set, 42), b(set, 42);
    for (int k = 0; k < 200; ++k) {
      const Vector x = a.next();
      EXPECT_EQ(x, b.next());
      EXPECT_TRUE(set.contains(x, 1e-9)) << set.kind_name();
    }
  }
  PointSampler empty;
  EXPECT_TRUE(empty.empty());
}

}  // namespace
}  // namespace tikflow
