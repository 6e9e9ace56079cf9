#include "tikflow/family.hpp"

#include <cmath>

#include "tikflow/error.hpp"
#include "tikflow/set_family.hpp"

namespace tikflow {

OperatorFamily::OperatorFamily(std::string name, Operator limit, Map member,
                               std::optional<Envelope> drift_bound,
                               bool constant)
    : name_(std::move(name)),
      limit_(std::move(limit)),
      member_(std::move(member)),
      drift_bound_(std::move(drift_bound)),
      constant_(constant) {
  if (!member_) throw ParameterError("operator family has no member map");
}

OperatorFamily OperatorFamily::constant(Operator limit) {
  Operator copy = limit;
  return OperatorFamily(
      "constant(" + limit.name() + ")", std::move(limit),
      [T = std::move(copy)](double, const Vector& x) { return T(x); },
      Envelope([](double) { return 0.0; }), true);
}

Operator OperatorFamily::member(double t) const {
  return Operator(
      name_ + "@t", limit_.domain(),
      [m = member_, t](const Vector& x) { return m(t, x); },
      limit_.declared());
}

double OperatorFamily::drift(double t, const Vector& x) const {
  return (member_(t, x) - limit_(x)).norm();
}

namespace ops {

OperatorFamily switching(Operator before, Operator after, double switch_time) {
  if (before.dim() != after.dim()) {
    throw ParameterError("switching family: dimension mismatch");
  }
  Operator a = after;
  return OperatorFamily(
      "switching", std::move(after),
      [before = std::move(before), a = std::move(a), switch_time](
          double t, const Vector& x) { return t < switch_time ? before(x) : a(x); });
}

OperatorFamily shifted(Operator limit, Vector shift,
                       std::function<double(double)> decay) {
  require_finite(shift, "shifted family");
  if (shift.size() != limit.dim()) {
    throw ParameterError("shifted family: dimension mismatch");
  }
  if (!decay) throw ParameterError("shifted family: missing decay");
  Operator T = limit;
  const double size = shift.norm();
  return OperatorFamily(
      "shifted(" + limit.name() + ")", std::move(limit),
      [T = std::move(T), shift = std::move(shift), decay](double t,
                                                          const Vector& x) {
        return Vector(T(x) + decay(t) * shift);
      },
      OperatorFamily::Envelope(
          [decay, size](double t) { return std::abs(decay(t)) * size; }));
}

OperatorFamily projected_gradient(const SetFamily& sets, Operator grad,
                                  double mu, ConvexSet domain) {
  if (!(mu > 0.0)) throw ParameterError("projected_gradient: mu must be > 0");
  if (grad.dim() != sets.base().dim() || domain.dim() != grad.dim()) {
    throw ParameterError("projected_gradient: dimension mismatch");
  }
  const ConvexSet base = sets.base();
  Operator g = grad;
  Operator limit(
      "projected-gradient", domain,
      [base, g, mu](const Vector& x) { return base.project(x - mu * g(x)); },
      ClassClaim::nonexpansive());
  return OperatorFamily(
      "projected-gradient-family", std::move(limit),
      [sets, g = std::move(grad), mu](double t, const Vector& x) {
        return sets.member(t).project(x - mu * g(x));
      });
}

}  // namespace ops

}  // namespace tikflow
