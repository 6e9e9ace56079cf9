#include "tikflow/set_family.hpp"

#include <cmath>

#include "tikflow/error.hpp"

namespace tikflow {

SetFamily SetFamily::inflated_box(ConvexSet base, Offset delta) {
  if (!std::holds_alternative<ConvexSet::Box>(base.normalized().kind())) {
    throw ParameterError("inflated_box: base set must be a box");
  }
  if (!delta) throw ParameterError("inflated_box: missing offset function");
  return SetFamily(Kind::InflatedBox, base.normalized(), std::move(delta));
}

SetFamily SetFamily::dilated_ball(ConvexSet base, Offset delta) {
  if (!std::holds_alternative<ConvexSet::Ball>(base.normalized().kind())) {
    throw ParameterError("dilated_ball: base set must be a ball");
  }
  if (!delta) throw ParameterError("dilated_ball: missing offset function");
  return SetFamily(Kind::DilatedBall, base.normalized(), std::move(delta));
}

double SetFamily::delta(double t) const {
  const double d = delta_(t);
  if (!std::isfinite(d) || d < 0.0) {
    throw ParameterError("set family offset must be finite and nonnegative");
  }
  return d;
}

ConvexSet SetFamily::inflate(double d) const {
  if (kind_ == Kind::InflatedBox) {
    const auto& b = std::get<ConvexSet::Box>(base_.kind());
    return ConvexSet::box(b.lo, b.hi + Vector::Constant(b.hi.size(), d));
  }
  const auto& b = std::get<ConvexSet::Ball>(base_.kind());
  return ConvexSet::ball(b.center, b.radius + d);
}

ConvexSet SetFamily::member(double t) const { return inflate(delta(t)); }

double SetFamily::hausdorff_to_base(double t) const {
  return hausdorff(member(t), base_);
}

ConvexSet SetFamily::envelope(double delta_max) const {
  if (!(delta_max >= 0.0)) {
    throw ParameterError("envelope: delta_max must be nonnegative");
  }
  return inflate(delta_max);
}

}  // namespace tikflow
