#include "tikflow/operator.hpp"

#include <cmath>
#include <sstream>

#include "tikflow/error.hpp"

namespace tikflow {

ClassClaim ClassClaim::contraction(double alpha) {
  if (!(alpha >= 0.0 && alpha < 1.0)) {
    throw ParameterError("contraction modulus must lie in [0, 1)");
  }
  return {OperatorClass::Contraction, alpha};
}

ClassClaim ClassClaim::cocoercive(double beta) {
  if (!(beta > 0.0) || !std::isfinite(beta)) {
    throw ParameterError("cocoercivity modulus must be positive");
  }
  return {OperatorClass::Cocoercive, beta};
}

std::string to_string(OperatorClass kind) {
  switch (kind) {
    case OperatorClass::Nonexpansive: return "nonexpansive";
    case OperatorClass::FirmlyNonexpansive: return "firmly-nonexpansive";
    case OperatorClass::Contraction: return "contraction";
    case OperatorClass::Cocoercive: return "cocoercive";
    case OperatorClass::Unclassified: return "unclassified";
  }
  return "unclassified";
}

std::string to_string(const ClassClaim& claim) {
  if (claim.kind == OperatorClass::Contraction ||
      claim.kind == OperatorClass::Cocoercive) {
    std::ostringstream os;
    os << to_string(claim.kind) << "(" << claim.modulus << ")";
    return os.str();
  }
  return to_string(claim.kind);
}

Operator::Operator(std::string name, ConvexSet domain, Map eval,
                   ClassClaim declared)
    : name_(std::move(name)),
      domain_(std::move(domain)),
      eval_(std::move(eval)),
      declared_(declared) {
  if (!eval_) throw ParameterError("operator '" + name_ + "' has no map");
}

Vector Operator::apply(const Vector& x, double tol) const {
  if (!domain_.contains(x, tol)) {
    throw DomainError("operator '" + name_ + "': point outside domain (" +
                      domain_.kind_name() + ")");
  }
  return eval_(x);
}

Operator Operator::restricted_to(ConvexSet domain) const {
  if (domain.dim() != dim()) {
    throw ParameterError("restricted_to: dimension mismatch");
  }
  Operator out = *this;
  out.domain_ = std::move(domain);
  return out;
}

Operator Operator::with_claim(ClassClaim claim) const {
  Operator out = *this;
  out.declared_ = claim;
  return out;
}

Operator Operator::renamed(std::string name) const {
  Operator out = *this;
  out.name_ = std::move(name);
  return out;
}

Vector residual(const Operator& T, const Vector& x, double tol) {
  return x - T.apply(x, tol);
}

namespace ops {

Operator identity(Index dim) {
  return Operator("identity", ConvexSet::whole_space(dim),
                  [](const Vector& x) { return x; },
                  ClassClaim::firmly_nonexpansive());
}

Operator constant(Vector value) {
  require_finite(value, "constant operator value");
  const Index n = value.size();
  return Operator(
      "constant", ConvexSet::whole_space(n),
      [value = std::move(value)](const Vector&) { return value; },
      ClassClaim::contraction(0.0));
}

Operator projection(const ConvexSet& set) {
  return Operator(
      "projection(" + set.kind_name() + ")", ConvexSet::whole_space(set.dim()),
      [set](const Vector& x) { return set.project(x); },
      ClassClaim::firmly_nonexpansive());
}

Operator scaled_rotation(double alpha, double angle_rad) {
  if (!(alpha >= 0.0) || !std::isfinite(alpha)) {
    throw ParameterError("scaled_rotation: alpha must be nonnegative");
  }
  Matrix m(2, 2);
  const double c = std::cos(angle_rad);
  const double s = std::sin(angle_rad);
  m << c, -s, s, c;
  m *= alpha;
  ClassClaim claim = alpha < 1.0    ? ClassClaim::contraction(alpha)
                     : alpha == 1.0 ? ClassClaim::nonexpansive()
                                    : ClassClaim::unclassified();
  return linear(std::move(m), claim).renamed("scaled-rotation");
}

Operator linear(Matrix m, ClassClaim claim) {
  if (m.rows() != m.cols() || m.rows() < 1) {
    throw ParameterError("linear operator: matrix must be square");
  }
  if (!m.allFinite()) throw ParameterError("linear operator: non-finite entry");
  const Index n = m.rows();
  return Operator(
      "linear", ConvexSet::whole_space(n),
      [m = std::move(m)](const Vector& x) -> Vector { return m * x; }, claim);
}

Operator translation(Vector shift) {
  require_finite(shift, "translation shift");
  const Index n = shift.size();
  return Operator(
      "translation", ConvexSet::whole_space(n),
      [shift = std::move(shift)](const Vector& x) -> Vector {
        return x + shift;
      },
      ClassClaim::nonexpansive());
}

Operator scaling(Index dim, double factor) {
  if (!std::isfinite(factor)) throw ParameterError("scaling: factor");
  const double a = std::abs(factor);
  ClassClaim claim = a < 1.0    ? ClassClaim::contraction(a)
                     : a == 1.0 ? ClassClaim::nonexpansive()
                                : ClassClaim::unclassified();
  return Operator(
      "scaling", ConvexSet::whole_space(dim),
      [factor](const Vector& x) -> Vector { return factor * x; }, claim);
}

Operator affine_gradient(Matrix a, Vector b) {
  if (a.rows() != a.cols() || a.rows() != b.size()) {
    throw ParameterError("affine_gradient: shape mismatch");
  }
  require_finite(b, "affine_gradient offset");
  if (!a.isApprox(a.transpose(), 1e-12)) {
    throw ParameterError("affine_gradient: matrix must be symmetric");
  }
  Eigen::SelfAdjointEigenSolver<Matrix> eig(a);
  const double lo = eig.eigenvalues().minCoeff();
  const double hi = eig.eigenvalues().maxCoeff();
  if (lo < -1e-12) {
    throw ParameterError("affine_gradient: matrix must be positive semidefinite");
  }
  const Index n = b.size();
  // The zero map is cocoercive for every modulus; 1 is as good as any.
  ClassClaim claim = ClassClaim::cocoercive(hi > 0.0 ? 1.0 / hi : 1.0);
  return Operator(
      "affine-gradient", ConvexSet::whole_space(n),
      [a = std::move(a), b = std::move(b)](const Vector& x) -> Vector {
        return a * x - b;
      },
      claim);
}

}  // namespace ops

}  // namespace tikflow
