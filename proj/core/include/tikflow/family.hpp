#pragma once

#include <functional>
#include <optional>
#include <string>

#include "tikflow/operator.hpp"

namespace tikflow {

class SetFamily;

/// Time-indexed operators T_t sharing the domain of their limit T.
class OperatorFamily {
 public:
  using Map = std::function<Vector(double, const Vector&)>;
  /// User-supplied upper bound for sup over compacts of ||T_t(x) - T(x)||.
  using Envelope = std::function<double(double)>;

  OperatorFamily(std::string name, Operator limit, Map member,
                 std::optional<Envelope> drift_bound = std::nullopt,
                 bool constant = false);

  /// T_t = T for every t.
  static OperatorFamily constant(Operator limit);

  Vector operator()(double t, const Vector& x) const { return member_(t, x); }
  Operator member(double t) const;
  const Operator& limit() const noexcept { return limit_; }
  const std::string& name() const noexcept { return name_; }
  const ConvexSet& domain() const noexcept { return limit_.domain(); }
  bool is_constant() const noexcept { return constant_; }

  /// w(t, x) = ||T_t(x) - T(x)||, evaluated exactly.
  double drift(double t, const Vector& x) const;
  const std::optional<Envelope>& drift_bound() const noexcept {
    return drift_bound_;
  }

 private:
  std::string name_;
  Operator limit_;
  Map member_;
  std::optional<Envelope> drift_bound_;
  bool constant_;
};

namespace ops {

/// T_t = before for t < switch_time, T_t = after afterwards.
OperatorFamily switching(Operator before, Operator after, double switch_time);

/// T_t(x) = T(x) + decay(t) * shift; only nonexpansive into D when D is
/// translation invariant along `shift` (e.g. the whole space).
OperatorFamily shifted(Operator limit, Vector shift,
                       std::function<double(double)> decay);

/// T_t(x) = proj_{C_t}(x - mu * grad(x)), limit proj_C(x - mu * grad(x)),
/// on the domain `domain` that must contain every C_t.
OperatorFamily projected_gradient(const SetFamily& sets, Operator grad,
                                  double mu, ConvexSet domain);

}  // namespace ops

}  // namespace tikflow
