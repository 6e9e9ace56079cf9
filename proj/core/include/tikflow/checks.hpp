#pragma once

#include <cstddef>
#include <functional>
#include <string>

#include "tikflow/operator.hpp"
#include "tikflow/report.hpp"
#include "tikflow/sampling.hpp"

namespace tikflow {

inline constexpr std::size_t kDefaultPairs = 1000;
inline constexpr double kDefaultCheckTol = 1e-9;

/// Violation of a pairwise inequality: positive means the inequality fails
/// by that much.
using PairMargin = std::function<double(const Vector& x, const Vector& y)>;

/// Evaluates `margin` on `pairs` sampled pairs and reports the worst one.
/// Passes iff the worst margin is <= tol.
CheckReport check_pairs(std::string id, const PairMargin& margin,
                        PointSampler& sampler, std::size_t pairs, double tol);

/// Samples the defining inequality of `claim` (nonexpansive, firmly
/// nonexpansive, contraction(alpha), cocoercive(beta)) for T.
CheckReport check_class(const Operator& T, const ClassClaim& claim,
                        PointSampler& sampler,
                        std::size_t pairs = kDefaultPairs,
                        double tol = kDefaultCheckTol);

/// Checks ||Bx - By|| <= (1/beta)||x - y|| against the 1/beta bound.
CheckReport check_lipschitz(const Operator& B, double lipschitz,
                            PointSampler& sampler, std::size_t pairs,
                            double tol);

struct BaillonHaddadReport {
  CheckReport lipschitz;
  CheckReport cocoercive;
  bool passed = false;
  /// One direction held and the other did not: the gradient is not of a
  /// convex function, or beta is mis-declared.
  bool inconsistent = false;
};

/// Samples both the 1/beta-Lipschitz and the beta-cocoercive inequality on
/// the same pairs. Passes only if both hold.
BaillonHaddadReport check_baillon_haddad(const Operator& grad, double beta,
                                         PointSampler& sampler,
                                         std::size_t pairs = kDefaultPairs,
                                         double tol = kDefaultCheckTol);

/// ||Tx - Ty||^2 + mu (2 beta - mu) ||Bx - By||^2 <= ||x - y||^2 for the
/// forward-backward operator T built from B.
CheckReport check_forward_backward_inequality(const Operator& T,
                                              const Operator& B, double mu,
                                              double beta,
                                              PointSampler& sampler,
                                              std::size_t pairs = kDefaultPairs,
                                              double tol = kDefaultCheckTol);

/// <G x - G y, x - y> >= 0 for G = I - T.
CheckReport check_residual_monotone(const Operator& T, PointSampler& sampler,
                                    std::size_t pairs = kDefaultPairs,
                                    double tol = 1e-10);

/// T maps sampled points of its domain into `target` (distance <= tol).
CheckReport check_maps_into(const Operator& T, const ConvexSet& target,
                            PointSampler& sampler,
                            std::size_t samples = kDefaultPairs,
                            double tol = kMembershipTol);

}  // namespace tikflow
