#pragma once

#include <memory>
#include <string>
#include <variant>
#include <vector>

#include "tikflow/convex_set.hpp"

namespace tikflow {

class ProxFunction;

/// Indicator of a closed convex set; its prox is the projection.
struct IndicatorFn {
  ConvexSet set;
};
/// weight * ||y||_1.
struct L1Fn {
  double weight;
};
/// (weight / 2) * ||y - center||^2.
struct QuadraticFn {
  Vector center;
  double weight;
};
/// Sum of functions acting on consecutive coordinate blocks.
struct SeparableFn {
  struct Block {
    Index size;
    std::shared_ptr<const ProxFunction> fn;
  };
  std::vector<Block> blocks;
};

/// Proper convex lsc function with a closed-form proximal map.
class ProxFunction {
 public:
  using Kind = std::variant<IndicatorFn, L1Fn, QuadraticFn, SeparableFn>;

  static ProxFunction indicator(ConvexSet set);
  static ProxFunction l1(double weight);
  static ProxFunction quadratic(Vector center, double weight);
  static ProxFunction separable(
      std::vector<std::pair<Index, ProxFunction>> blocks);

  const Kind& kind() const noexcept { return kind_; }
  std::string kind_name() const;

  /// Phi(y); +infinity outside the effective domain.
  double value(const Vector& y) const;

  /// argmin_y Phi(y) + ||y - x||^2 / (2 mu).
  Vector prox(double mu, const Vector& x) const;

  /// Closure of dom Phi in R^dim.
  ConvexSet domain_closure(Index dim) const;

 private:
  explicit ProxFunction(Kind kind) : kind_(std::move(kind)) {}
  Kind kind_;
};

/// A function together with its prox step mu > 0.
struct ProxSpec {
  ProxFunction fn;
  double mu;

  ProxSpec(ProxFunction fn, double mu);
};

Vector prox(const ProxSpec& spec, const Vector& x);

/// Phi(y) + ||y - x||^2 / (2 mu), the quantity prox minimizes.
double prox_objective(const ProxSpec& spec, const Vector& x, const Vector& y);

}  // namespace tikflow
