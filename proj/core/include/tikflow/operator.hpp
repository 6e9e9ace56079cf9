#pragma once

#include <functional>
#include <optional>
#include <string>

#include "tikflow/convex_set.hpp"

namespace tikflow {

enum class OperatorClass {
  Nonexpansive,
  FirmlyNonexpansive,
  Contraction,  // modulus alpha in [0, 1)
  Cocoercive,   // modulus beta > 0
  Unclassified,
};

struct ClassClaim {
  OperatorClass kind = OperatorClass::Unclassified;
  double modulus = 0.0;

  static ClassClaim nonexpansive() { return {OperatorClass::Nonexpansive, 1.0}; }
  static ClassClaim firmly_nonexpansive() {
    return {OperatorClass::FirmlyNonexpansive, 1.0};
  }
  static ClassClaim contraction(double alpha);
  static ClassClaim cocoercive(double beta);
  static ClassClaim unclassified() { return {}; }
};

std::string to_string(OperatorClass kind);
std::string to_string(const ClassClaim& claim);

/// A map defined on a closed convex domain, tagged with the class its author
/// claims for it. Evaluation is pure and reentrant.
class Operator {
 public:
  using Map = std::function<Vector(const Vector&)>;

  Operator(std::string name, ConvexSet domain, Map eval,
           ClassClaim declared = {});

  /// Evaluates without a domain check.
  Vector operator()(const Vector& x) const { return eval_(x); }
  /// Evaluates after checking membership of `x` in the domain.
  Vector apply(const Vector& x, double tol = kMembershipTol) const;

  const std::string& name() const noexcept { return name_; }
  const ConvexSet& domain() const noexcept { return domain_; }
  const ClassClaim& declared() const noexcept { return declared_; }
  Index dim() const { return domain_.dim(); }

  Operator restricted_to(ConvexSet domain) const;
  Operator with_claim(ClassClaim claim) const;
  Operator renamed(std::string name) const;

 private:
  std::string name_;
  ConvexSet domain_;
  Map eval_;
  ClassClaim declared_;
};

/// G(x) = x - T(x). Throws DomainError when x is outside the domain of T.
Vector residual(const Operator& T, const Vector& x,
                double tol = kMembershipTol);

namespace ops {

Operator identity(Index dim);
Operator constant(Vector value);
/// Projection onto `set`, defined on the whole space.
Operator projection(const ConvexSet& set);
/// x -> alpha * R(angle) x in R^2.
Operator scaled_rotation(double alpha, double angle_rad);
/// x -> M x; declared class supplied by the caller.
Operator linear(Matrix m, ClassClaim claim = {});
/// x -> x + shift (nonexpansive, no fixed point for shift != 0).
Operator translation(Vector shift);
/// x -> factor * x.
Operator scaling(Index dim, double factor);
/// x -> A x - b for symmetric positive semidefinite A: gradient of
/// 0.5 x'Ax - b'x, declared cocoercive with beta = 1 / lambda_max(A).
Operator affine_gradient(Matrix a, Vector b);

}  // namespace ops

}  // namespace tikflow
