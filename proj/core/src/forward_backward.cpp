#include "tikflow/forward_backward.hpp"

#include <sstream>

#include "tikflow/error.hpp"

namespace tikflow {

Operator make_forward_backward(const ProxSpec& phi, const Operator& B) {
  if (B.declared().kind != OperatorClass::Cocoercive) {
    throw ParameterError("forward-backward: B must be declared cocoercive, got " +
                         to_string(B.declared()));
  }
  const double beta = B.declared().modulus;
  const double mu = phi.mu;
  if (!(mu > 0.0 && mu < 2.0 * beta)) {
    std::ostringstream os;
    os << "forward-backward: mu = " << mu << " outside (0, 2 beta) = (0, "
       << 2.0 * beta << ")";
    throw ParameterError(os.str());
  }
  const ConvexSet dom_phi = phi.fn.domain_closure(B.dim());
  if (!includes(B.domain(), dom_phi)) {
    throw ParameterError(
        "forward-backward: domain of B does not contain the closure of dom Phi");
  }
  return Operator(
      "forward-backward(" + phi.fn.kind_name() + ")", B.domain(),
      [phi, B](const Vector& x) { return phi.fn.prox(phi.mu, x - phi.mu * B(x)); },
      ClassClaim::nonexpansive());
}

}  // namespace tikflow
