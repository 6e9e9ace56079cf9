#include "tikflow/checks.hpp"

#include <cmath>
#include <limits>

#include "tikflow/error.hpp"

namespace tikflow {
namespace {

void require_usable(const PointSampler& sampler, std::size_t pairs) {
  if (sampler.empty()) throw ConfigError("check: empty domain sampler");
  if (pairs == 0) throw ConfigError("check: pair count must be >= 1");
}

}  // namespace

CheckReport check_pairs(std::string id, const PairMargin& margin,
                        PointSampler& sampler, std::size_t pairs, double tol) {
  require_usable(sampler, pairs);
  double worst = -std::numeric_limits<double>::infinity();
  CheckReport::Witness witness;
  for (std::size_t k = 0; k < pairs; ++k) {
    Vector x = sampler.next();
    Vector y = sampler.next();
    const double m = margin(x, y);
    if (std::isnan(m)) {
      throw NumericalError("check '" + id + "': margin evaluated to NaN");
    }
    if (m > worst) {
      worst = m;
      witness = {std::move(x), std::move(y)};
    }
  }
  CheckReport r = make_check(std::move(id), worst, tol, pairs);
  if (!r.passed) r.witness = std::move(witness);
  return r;
}

CheckReport check_class(const Operator& T, const ClassClaim& claim,
                        PointSampler& sampler, std::size_t pairs, double tol) {
  const std::string id = "class." + to_string(claim.kind) + "." + T.name();
  switch (claim.kind) {
    case OperatorClass::Nonexpansive:
      return check_pairs(
          id,
          [&](const Vector& x, const Vector& y) {
            return (T(x) - T(y)).norm() - (x - y).norm();
          },
          sampler, pairs, tol);
    case OperatorClass::FirmlyNonexpansive:
      return check_pairs(
          id,
          [&](const Vector& x, const Vector& y) {
            const Vector dt = T(x) - T(y);
            const Vector dx = x - y;
            return dt.squaredNorm() + (dx - dt).squaredNorm() - dx.squaredNorm();
          },
          sampler, pairs, tol);
    case OperatorClass::Contraction: {
      const double alpha = claim.modulus;
      return check_pairs(
          id,
          [&](const Vector& x, const Vector& y) {
            return (T(x) - T(y)).norm() - alpha * (x - y).norm();
          },
          sampler, pairs, tol);
    }
    case OperatorClass::Cocoercive: {
      const double beta = claim.modulus;
      return check_pairs(
          id,
          [&](const Vector& x, const Vector& y) {
            const Vector dt = T(x) - T(y);
            return beta * dt.squaredNorm() - dt.dot(x - y);
          },
          sampler, pairs, tol);
    }
    case OperatorClass::Unclassified:
      break;
  }
  throw ParameterError("check_class: claim must name an operator class");
}

CheckReport check_lipschitz(const Operator& B, double lipschitz,
                            PointSampler& sampler, std::size_t pairs,
                            double tol) {
  return check_pairs(
      "lipschitz." + B.name(),
      [&](const Vector& x, const Vector& y) {
        return (B(x) - B(y)).norm() - lipschitz * (x - y).norm();
      },
      sampler, pairs, tol);
}

BaillonHaddadReport check_baillon_haddad(const Operator& grad, double beta,
                                         PointSampler& sampler,
                                         std::size_t pairs, double tol) {
  if (!(beta > 0.0)) throw ParameterError("baillon-haddad: beta must be > 0");
  require_usable(sampler, pairs);
  double worst_lip = -std::numeric_limits<double>::infinity();
  double worst_coco = worst_lip;
  CheckReport::Witness wl, wc;
  for (std::size_t k = 0; k < pairs; ++k) {
    const Vector x = sampler.next();
    const Vector y = sampler.next();
    const Vector dg = grad(x) - grad(y);
    const Vector dx = x - y;
    const double lip = dg.norm() - dx.norm() / beta;
    const double coco = beta * dg.squaredNorm() - dg.dot(dx);
    if (lip > worst_lip) {
      worst_lip = lip;
      wl = {x, y};
    }
    if (coco > worst_coco) {
      worst_coco = coco;
      wc = {x, y};
    }
  }
  BaillonHaddadReport out;
  out.lipschitz = make_check("baillon-haddad.lipschitz." + grad.name(),
                             worst_lip, tol, pairs);
  out.cocoercive = make_check("baillon-haddad.cocoercive." + grad.name(),
                              worst_coco, tol, pairs);
  if (!out.lipschitz.passed) out.lipschitz.witness = wl;
  if (!out.cocoercive.passed) out.cocoercive.witness = wc;
  out.passed = out.lipschitz.passed && out.cocoercive.passed;
  out.inconsistent = out.lipschitz.passed != out.cocoercive.passed;
  return out;
}

CheckReport check_forward_backward_inequality(const Operator& T,
                                              const Operator& B, double mu,
                                              double beta,
                                              PointSampler& sampler,
                                              std::size_t pairs, double tol) {
  const double weight = mu * (2.0 * beta - mu);
  return check_pairs(
      "forward-backward.inequality." + T.name(),
      [&](const Vector& x, const Vector& y) {
        return (T(x) - T(y)).squaredNorm() +
               weight * (B(x) - B(y)).squaredNorm() - (x - y).squaredNorm();
      },
      sampler, pairs, tol);
}

CheckReport check_residual_monotone(const Operator& T, PointSampler& sampler,
                                    std::size_t pairs, double tol) {
  return check_pairs(
      "residual-monotone." + T.name(),
      [&](const Vector& x, const Vector& y) {
        const Vector dg = (x - T(x)) - (y - T(y));
        return -dg.dot(x - y);
      },
      sampler, pairs, tol);
}

CheckReport check_maps_into(const Operator& T, const ConvexSet& target,
                            PointSampler& sampler, std::size_t samples,
                            double tol) {
  require_usable(sampler, samples);
  double worst = 0.0;
  CheckReport::Witness w;
  for (std::size_t k = 0; k < samples; ++k) {
    Vector x = sampler.next();
    const double d = target.distance(T(x));
    if (d > worst) {
      worst = d;
      w = {x, x};
    }
  }
  CheckReport r = make_check("maps-into." + T.name(), worst, tol, samples);
  if (!r.passed) r.witness = w;
  return r;
}

}  // namespace tikflow
