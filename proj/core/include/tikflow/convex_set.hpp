#pragma once

#include <memory>
#include <optional>
#include <string>
#include <variant>

#include "tikflow/vector.hpp"

namespace tikflow {

/// Closed convex subset of R^n with an exact (closed-form) projection.
///
/// Values are immutable once constructed; copies share nothing mutable, so a
/// set may be queried from any number of threads.
class ConvexSet {
 public:
  struct WholeSpace {
    Index dim;
  };
  /// {x : lo <= x <= hi} coordinatewise.
  struct Box {
    Vector lo;
    Vector hi;
  };
  struct Ball {
    Vector center;
    double radius;
  };
  /// {x : <normal, x> <= offset}.
  struct Halfspace {
    Vector normal;
    double offset;
  };
  /// {x : <normal, x> = offset}.
  struct Hyperplane {
    Vector normal;
    double offset;
  };
  /// base + span(directions); the columns of `directions` are orthonormal.
  struct AffineSubspace {
    Vector base;
    Matrix directions;
  };
  /// shift + scale * base, scale > 0.
  struct TranslateDilate {
    std::shared_ptr<const ConvexSet> base;
    Vector shift;
    double scale;
  };

  using Kind = std::variant<WholeSpace, Box, Ball, Halfspace, Hyperplane,
                            AffineSubspace, TranslateDilate>;

  static ConvexSet whole_space(Index dim);
  static ConvexSet box(Vector lo, Vector hi);
  static ConvexSet ball(Vector center, double radius);
  static ConvexSet halfspace(Vector normal, double offset);
  static ConvexSet hyperplane(Vector normal, double offset);
  static ConvexSet affine_subspace(Vector base, Matrix directions);
  static ConvexSet translate_dilate(const ConvexSet& base, Vector shift,
                                    double scale);

  Index dim() const;
  const Kind& kind() const noexcept { return kind_; }
  std::string kind_name() const;

  Vector project(const Vector& x) const;
  double distance(const Vector& x) const;
  bool contains(const Vector& x, double tol = kMembershipTol) const;

  bool bounded() const;
  /// Smallest axis-aligned box containing the set, when bounded.
  std::optional<Box> bounding_box() const;

  /// Rewrites translate-dilate wrappers into the equivalent primitive set.
  ConvexSet normalized() const;

  friend bool operator==(const ConvexSet& a, const ConvexSet& b);

 private:
  explicit ConvexSet(Kind kind) : kind_(std::move(kind)) {}

  Kind kind_;
};

/// Free-function spelling of ConvexSet::project.
inline Vector project(const ConvexSet& set, const Vector& x) {
  return set.project(x);
}
inline double distance(const ConvexSet& set, const Vector& x) {
  return set.distance(x);
}

/// Exact Hausdorff distance for the analytic pairs: two balls, two boxes,
/// two parallel hyperplanes or halfspaces, or identical sets. Anything else
/// throws CapabilityError.
double hausdorff(const ConvexSet& a, const ConvexSet& b);

/// Whether `inner` is a subset of `outer`, for pairs where that is decidable
/// in closed form. Throws CapabilityError otherwise.
bool includes(const ConvexSet& outer, const ConvexSet& inner,
              double tol = kMembershipTol);

}  // namespace tikflow
