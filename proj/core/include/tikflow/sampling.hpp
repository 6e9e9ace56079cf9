#pragma once

#include <cstdint>
#include <optional>
#include <random>

#include "tikflow/convex_set.hpp"

namespace tikflow {

/// Seeded source of points in a convex set: uniform on boxes and balls,
/// projected Gaussian (centered on a point of the set) otherwise.
///
/// A default-constructed sampler is empty; checkers reject it.
class PointSampler {
 public:
  PointSampler() = default;
  PointSampler(ConvexSet set, std::uint64_t seed, double spread = 5.0);

  bool empty() const noexcept { return !set_.has_value(); }
  const ConvexSet& set() const;

  Vector next();

  /// Uniform scalar in [lo, hi) drawn from the same stream.
  double uniform(double lo, double hi);

 private:
  std::optional<ConvexSet> set_;
  std::mt19937_64 engine_;
  double spread_ = 5.0;
};

}  // namespace tikflow
