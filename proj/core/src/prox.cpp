#include "tikflow/prox.hpp"

#include <cmath>
#include <limits>

#include "tikflow/error.hpp"

namespace tikflow {
namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

constexpr double kInf = std::numeric_limits<double>::infinity();

double soft_threshold(double v, double level) {
  if (v > level) return v - level;
  if (v < -level) return v + level;
  return 0.0;
}

Index total_size(const SeparableFn& s) {
  Index n = 0;
  for (const auto& b : s.blocks) n += b.size;
  return n;
}

}  // namespace

ProxFunction ProxFunction::indicator(ConvexSet set) {
  return ProxFunction(IndicatorFn{std::move(set)});
}

ProxFunction ProxFunction::l1(double weight) {
  if (!(weight >= 0.0) || !std::isfinite(weight)) {
    throw ParameterError("l1: weight must be finite and nonnegative");
  }
  return ProxFunction(L1Fn{weight});
}

ProxFunction ProxFunction::quadratic(Vector center, double weight) {
  require_finite(center, "quadratic center");
  if (!(weight >= 0.0) || !std::isfinite(weight)) {
    throw ParameterError("quadratic: weight must be finite and nonnegative");
  }
  return ProxFunction(QuadraticFn{std::move(center), weight});
}

ProxFunction ProxFunction::separable(
    std::vector<std::pair<Index, ProxFunction>> blocks) {
  if (blocks.empty()) throw ParameterError("separable: no blocks");
  SeparableFn s;
  for (auto& [size, fn] : blocks) {
    if (size < 1) throw ParameterError("separable: block size must be >= 1");
    s.blocks.push_back({size, std::make_shared<const ProxFunction>(std::move(fn))});
  }
  return ProxFunction(std::move(s));
}

std::string ProxFunction::kind_name() const {
  return std::visit(overloaded{
                        [](const IndicatorFn&) { return std::string("indicator"); },
                        [](const L1Fn&) { return std::string("l1"); },
                        [](const QuadraticFn&) { return std::string("quadratic"); },
                        [](const SeparableFn&) { return std::string("separable"); },
                    },
                    kind_);
}

double ProxFunction::value(const Vector& y) const {
  return std::visit(
      overloaded{
          [&](const IndicatorFn& f) {
            return f.set.contains(y) ? 0.0 : kInf;
          },
          [&](const L1Fn& f) { return f.weight * y.lpNorm<1>(); },
          [&](const QuadraticFn& f) {
            require_same_dim(y, f.center, "quadratic value");
            return 0.5 * f.weight * (y - f.center).squaredNorm();
          },
          [&](const SeparableFn& f) {
            if (total_size(f) != y.size()) {
              throw ParameterError("separable value: dimension mismatch");
            }
            double acc = 0.0;
            Index offset = 0;
            for (const auto& b : f.blocks) {
              acc += b.fn->value(y.segment(offset, b.size));
              offset += b.size;
            }
            return acc;
          },
      },
      kind_);
}

Vector ProxFunction::prox(double mu, const Vector& x) const {
  if (!(mu > 0.0)) throw ParameterError("prox: step mu must be positive");
  return std::visit(
      overloaded{
          [&](const IndicatorFn& f) -> Vector { return f.set.project(x); },
          [&](const L1Fn& f) -> Vector {
            Vector out(x.size());
            for (Index i = 0; i < x.size(); ++i) {
              out[i] = soft_threshold(x[i], mu * f.weight);
            }
            return out;
          },
          [&](const QuadraticFn& f) -> Vector {
            require_same_dim(x, f.center, "quadratic prox");
            return (x + mu * f.weight * f.center) / (1.0 + mu * f.weight);
          },
          [&](const SeparableFn& f) -> Vector {
            if (total_size(f) != x.size()) {
              throw ParameterError("separable prox: dimension mismatch");
            }
            Vector out(x.size());
            Index offset = 0;
            for (const auto& b : f.blocks) {
              out.segment(offset, b.size) =
                  b.fn->prox(mu, x.segment(offset, b.size));
              offset += b.size;
            }
            return out;
          },
      },
      kind_);
}

ConvexSet ProxFunction::domain_closure(Index dim) const {
  return std::visit(
      overloaded{
          [&](const IndicatorFn& f) {
            if (f.set.dim() != dim) {
              throw ParameterError("indicator: dimension mismatch");
            }
            return f.set;
          },
          [&](const SeparableFn& f) {
            if (total_size(f) != dim) {
              throw ParameterError("separable: dimension mismatch");
            }
            // A product of boxes and whole spaces is a box only when every
            // block is bounded; mixed products are not in the set catalog.
            bool all_whole = true;
            for (const auto& b : f.blocks) {
              const ConvexSet d = b.fn->domain_closure(b.size).normalized();
              if (!std::holds_alternative<ConvexSet::WholeSpace>(d.kind())) {
                all_whole = false;
              }
            }
            if (all_whole) return ConvexSet::whole_space(dim);
            Vector lo(dim), hi(dim);
            Index offset = 0;
            for (const auto& b : f.blocks) {
              const ConvexSet d = b.fn->domain_closure(b.size).normalized();
              const auto* box = std::get_if<ConvexSet::Box>(&d.kind());
              if (box == nullptr) {
                throw CapabilityError(
                    "separable: domain is not a product of boxes");
              }
              lo.segment(offset, b.size) = box->lo;
              hi.segment(offset, b.size) = box->hi;
              offset += b.size;
            }
            return ConvexSet::box(lo, hi);
          },
          [&](const auto&) { return ConvexSet::whole_space(dim); },
      },
      kind_);
}

ProxSpec::ProxSpec(ProxFunction f, double step) : fn(std::move(f)), mu(step) {
  if (!(mu > 0.0) || !std::isfinite(mu)) {
    throw ParameterError("prox step mu must be positive and finite");
  }
}

Vector prox(const ProxSpec& spec, const Vector& x) {
  require_finite(x, "prox input");
  return spec.fn.prox(spec.mu, x);
}

double prox_objective(const ProxSpec& spec, const Vector& x, const Vector& y) {
  return spec.fn.value(y) + (y - x).squaredNorm() / (2.0 * spec.mu);
}

}  // namespace tikflow
