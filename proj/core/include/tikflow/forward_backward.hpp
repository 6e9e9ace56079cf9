#pragma once

#include "tikflow/operator.hpp"
#include "tikflow/prox.hpp"

namespace tikflow {

/// T(x) = prox_{mu Phi}(x - mu B x) on the domain of B.
///
/// B must declare cocoercive(beta) and phi.mu must lie in (0, 2 beta);
/// otherwise ParameterError. The domain of B must contain the closure of
/// dom Phi. The result is declared nonexpansive.
Operator make_forward_backward(const ProxSpec& phi, const Operator& B);

}  // namespace tikflow
