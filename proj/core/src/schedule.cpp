#include "tikflow/schedule.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "tikflow/error.hpp"

namespace tikflow {

EpsilonSchedule EpsilonSchedule::power(double eps0, double beta) {
  if (!(eps0 > 0.0) || !std::isfinite(eps0)) {
    throw ParameterError("power schedule: eps0 must be positive");
  }
  if (!(beta > 0.0) || !std::isfinite(beta)) {
    throw ParameterError("power schedule: beta must be positive");
  }
  std::ostringstream name;
  name << "power(" << eps0 << "," << beta << ")";
  return EpsilonSchedule(
      Kind::Power, name.str(),
      [eps0, beta](double t) { return eps0 * std::pow(1.0 + t, -beta); },
      [eps0, beta](double t) {
        return -beta * eps0 * std::pow(1.0 + t, -beta - 1.0);
      },
      eps0, beta);
}

EpsilonSchedule EpsilonSchedule::constant(double value) {
  if (!(value > 0.0) || !std::isfinite(value)) {
    throw ParameterError("constant schedule: value must be positive");
  }
  return EpsilonSchedule(
      Kind::Constant, "constant", [value](double) { return value; },
      [](double) { return 0.0; }, value, 0.0);
}

EpsilonSchedule EpsilonSchedule::zero() {
  return EpsilonSchedule(
      Kind::Zero, "zero", [](double) { return 0.0; }, [](double) { return 0.0; },
      0.0, 0.0);
}

EpsilonSchedule EpsilonSchedule::custom(std::string name, Fn value,
                                        Fn derivative) {
  if (!value || !derivative) {
    throw ParameterError("custom schedule: value and derivative required");
  }
  return EpsilonSchedule(Kind::Custom, std::move(name), std::move(value),
                         std::move(derivative), 0.0, 0.0);
}

double EpsilonSchedule::integral(double t) const {
  switch (kind_) {
    case Kind::Power:
      if (beta_ == 1.0) return eps0_ * std::log1p(t);
      return eps0_ * (std::pow(1.0 + t, 1.0 - beta_) - 1.0) / (1.0 - beta_);
    case Kind::Constant:
      return eps0_ * t;
    case Kind::Zero:
      return 0.0;
    case Kind::Custom:
      break;
  }
  throw CapabilityError("integral: no closed form for schedule " + name_);
}

bool EpsilonSchedule::vanishes_at_infinity() const {
  return kind_ == Kind::Power || kind_ == Kind::Zero;
}

bool EpsilonSchedule::nonintegrable() const {
  return (kind_ == Kind::Power && beta_ <= 1.0) || kind_ == Kind::Constant;
}

bool EpsilonSchedule::ratio_vanishes() const {
  // -eps'/eps^2 = (beta / eps0) (1+t)^(beta-1)
  return (kind_ == Kind::Power && beta_ < 1.0) || kind_ == Kind::Constant;
}

AnchorPath AnchorPath::constant(Vector y) {
  require_finite(y, "constant anchor");
  const Index n = y.size();
  Vector copy = y;
  return AnchorPath(
      Kind::Constant, "constant",
      [y = std::move(copy)](double) { return y; },
      [n](double) { return Vector(Vector::Zero(n)); }, std::move(y));
}

AnchorPath AnchorPath::moving(Vector y0, Vector limit, double rate) {
  require_finite(y0, "moving anchor start");
  require_finite(limit, "moving anchor limit");
  require_same_dim(y0, limit, "moving anchor");
  if (!(rate > 0.0)) throw ParameterError("moving anchor: rate must be > 0");
  const Vector gap = y0 - limit;
  Vector lim = limit;
  return AnchorPath(
      Kind::Moving, "moving",
      [lim, gap, rate](double t) { return Vector(lim + std::exp(-rate * t) * gap); },
      [gap, rate](double t) { return Vector(-rate * std::exp(-rate * t) * gap); },
      std::move(limit));
}

AnchorPath AnchorPath::custom(std::string name, Fn value, Fn derivative,
                              Vector limit) {
  if (!value || !derivative) {
    throw ParameterError("custom anchor: value and derivative required");
  }
  require_finite(limit, "custom anchor limit");
  return AnchorPath(Kind::Custom, std::move(name), std::move(value),
                    std::move(derivative), std::move(limit));
}

Schedule Schedule::none(Index dim) {
  return Schedule{EpsilonSchedule::zero(),
                  AnchorPath::constant(Vector::Zero(dim))};
}

Report validate_schedule(const Schedule& sched, const ConvexSet& domain,
                         std::span<const double> times) {
  Report r;
  const auto& eps = sched.eps;
  double min_eps = std::numeric_limits<double>::infinity();
  double worst_increase = 0.0;
  double worst_anchor = 0.0;
  for (std::size_t k = 0; k < times.size(); ++k) {
    min_eps = std::min(min_eps, eps(times[k]));
    if (k > 0) {
      worst_increase = std::max(worst_increase, eps(times[k]) - eps(times[k - 1]));
    }
    worst_anchor = std::max(worst_anchor, domain.distance(sched.anchor(times[k])));
  }
  r.add(make_check("schedule.eps-positive", min_eps > 0.0 ? 0.0 : 1.0, 0.0,
                   times.size(), "1 when some sampled eps is <= 0"));
  r.add(make_check("schedule.eps-nonincreasing", worst_increase, 0.0,
                   times.size()));
  r.add(make_check("schedule.eps-vanishes", eps.vanishes_at_infinity() ? 0 : 1,
                   0.0, 1, "symbolic, by kind " + eps.name()));
  r.add(make_check("schedule.eps-nonintegrable", eps.nonintegrable() ? 0 : 1,
                   0.0, 1, "symbolic, by kind " + eps.name()));
  r.add(make_check("schedule.eps-ratio-vanishes", eps.ratio_vanishes() ? 0 : 1,
                   0.0, 1, "symbolic: eps'/eps^2 -> 0"));
  r.add(make_check("schedule.anchor-in-domain", worst_anchor, kMembershipTol,
                   times.size()));
  if (!times.empty()) {
    r.add(make_check("schedule.anchor-derivative-decays",
                     sched.anchor.derivative(times.back()).norm(), 1e-6, 1,
                     "||y'(t)|| at the last sampled time"));
  }
  return r;
}

}  // namespace tikflow
