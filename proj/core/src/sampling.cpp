#include "tikflow/sampling.hpp"

#include <cmath>

#include "tikflow/error.hpp"

namespace tikflow {

PointSampler::PointSampler(ConvexSet set, std::uint64_t seed, double spread)
    : set_(set.normalized()), engine_(seed), spread_(spread) {
  if (!(spread > 0.0)) throw ParameterError("sampler spread must be positive");
}

const ConvexSet& PointSampler::set() const {
  if (!set_) throw ConfigError("empty domain sampler");
  return *set_;
}

double PointSampler::uniform(double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(engine_);
}

Vector PointSampler::next() {
  const ConvexSet& s = set();
  const Index n = s.dim();
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  if (const auto* b = std::get_if<ConvexSet::Box>(&s.kind())) {
    Vector x(n);
    for (Index i = 0; i < n; ++i) {
      x[i] = b->lo[i] + (b->hi[i] - b->lo[i]) * unit(engine_);
    }
    return x;
  }
  if (const auto* b = std::get_if<ConvexSet::Ball>(&s.kind())) {
    Vector dir(n);
    for (Index i = 0; i < n; ++i) dir[i] = gauss(engine_);
    const double norm = dir.norm();
    if (norm == 0.0) return b->center;
    const double r = b->radius * std::pow(unit(engine_), 1.0 / double(n));
    return b->center + (r / norm) * dir;
  }
  Vector g(n);
  for (Index i = 0; i < n; ++i) g[i] = spread_ * gauss(engine_);
  const Vector anchor = s.project(Vector::Zero(n));
  return s.project(anchor + g);
}

}  // namespace tikflow
