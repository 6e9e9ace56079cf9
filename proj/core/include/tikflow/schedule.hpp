#pragma once

#include <functional>
#include <span>
#include <string>
#include <vector>

#include "tikflow/convex_set.hpp"
#include "tikflow/report.hpp"

namespace tikflow {

/// Regularization weight eps(t) together with its derivative.
class EpsilonSchedule {
 public:
  enum class Kind { Power, Constant, Zero, Custom };
  using Fn = std::function<double(double)>;

  /// eps(t) = eps0 * (1 + t)^(-beta).
  static EpsilonSchedule power(double eps0, double beta);
  static EpsilonSchedule constant(double value);
  /// eps = 0: the unregularized flow.
  static EpsilonSchedule zero();
  static EpsilonSchedule custom(std::string name, Fn value, Fn derivative);

  double operator()(double t) const { return value_(t); }
  double derivative(double t) const { return derivative_(t); }

  Kind kind() const noexcept { return kind_; }
  const std::string& name() const noexcept { return name_; }
  double eps0() const noexcept { return eps0_; }
  double beta() const noexcept { return beta_; }

  /// Closed-form integral of eps over [0, t] (power, constant, zero only).
  double integral(double t) const;

  /// Symbolic properties by kind. Custom schedules report false.
  bool vanishes_at_infinity() const;
  bool nonintegrable() const;
  /// eps'(t) / eps(t)^2 -> 0.
  bool ratio_vanishes() const;

 private:
  EpsilonSchedule(Kind kind, std::string name, Fn value, Fn derivative,
                  double eps0, double beta)
      : kind_(kind),
        name_(std::move(name)),
        value_(std::move(value)),
        derivative_(std::move(derivative)),
        eps0_(eps0),
        beta_(beta) {}

  Kind kind_;
  std::string name_;
  Fn value_;
  Fn derivative_;
  double eps0_ = 0.0;
  double beta_ = 0.0;
};

/// Anchor trajectory y(t) with derivative and limit.
class AnchorPath {
 public:
  enum class Kind { Constant, Moving, Custom };
  using Fn = std::function<Vector(double)>;

  static AnchorPath constant(Vector y);
  /// y(t) = limit + exp(-rate t) (y0 - limit).
  static AnchorPath moving(Vector y0, Vector limit, double rate);
  static AnchorPath custom(std::string name, Fn value, Fn derivative,
                           Vector limit);

  Vector operator()(double t) const { return value_(t); }
  Vector derivative(double t) const { return derivative_(t); }
  const Vector& limit() const noexcept { return limit_; }
  Kind kind() const noexcept { return kind_; }
  const std::string& name() const noexcept { return name_; }
  Index dim() const { return limit_.size(); }

 private:
  AnchorPath(Kind kind, std::string name, Fn value, Fn derivative, Vector limit)
      : kind_(kind),
        name_(std::move(name)),
        value_(std::move(value)),
        derivative_(std::move(derivative)),
        limit_(std::move(limit)) {}

  Kind kind_;
  std::string name_;
  Fn value_;
  Fn derivative_;
  Vector limit_;
};

struct Schedule {
  EpsilonSchedule eps;
  AnchorPath anchor;

  /// eps = 0 with a constant anchor: the plain flow.
  static Schedule none(Index dim);
};

/// Sampled and symbolic checks of the regularization data: eps positive,
/// nonincreasing, vanishing, nonintegrable, eps'/eps^2 -> 0; anchor in D;
/// ||y'(t)|| decaying.
Report validate_schedule(const Schedule& sched, const ConvexSet& domain,
                         std::span<const double> times);

}  // namespace tikflow
