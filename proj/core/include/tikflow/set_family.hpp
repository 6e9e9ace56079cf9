#pragma once

#include <functional>
#include <span>
#include <string>

#include "tikflow/convex_set.hpp"

namespace tikflow {

/// Time-indexed perturbation C_t of a base set C, shrinking onto C as the
/// nonnegative, nonincreasing offset delta(t) decays.
class SetFamily {
 public:
  enum class Kind { InflatedBox, DilatedBall };
  using Offset = std::function<double(double)>;

  /// C_t = [lo, hi + delta(t) * 1].
  static SetFamily inflated_box(ConvexSet base, Offset delta);
  /// C_t = ball(center, r + delta(t)).
  static SetFamily dilated_ball(ConvexSet base, Offset delta);

  Kind kind() const noexcept { return kind_; }
  const ConvexSet& base() const noexcept { return base_; }
  double delta(double t) const;
  ConvexSet member(double t) const;

  /// Haus(C_t, C), evaluated exactly through hausdorff().
  double hausdorff_to_base(double t) const;

  /// The member for offset `delta_max`; contains every C_t with
  /// delta(t) <= delta_max and the base.
  ConvexSet envelope(double delta_max) const;

 private:
  SetFamily(Kind kind, ConvexSet base, Offset delta)
      : kind_(kind), base_(std::move(base)), delta_(std::move(delta)) {}

  ConvexSet inflate(double d) const;

  Kind kind_;
  ConvexSet base_;
  Offset delta_;
};

}  // namespace tikflow
