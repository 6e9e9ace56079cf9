#include "tikflow/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <initializer_list>
#include <numbers>
#include <sstream>

#include <nlohmann/json.hpp>

#include "tikflow/error.hpp"
#include "tikflow/forward_backward.hpp"

namespace tikflow {
namespace {

using json = nlohmann::json;

[[noreturn]] void fail(const std::string& path, const std::string& what) {
  throw ConfigError(path + ": " + what);
}

std::string child(const std::string& path, std::string_view key) {
  return path + "." + std::string(key);
}

void expect_object(const json& j, const std::string& path) {
  if (!j.is_object()) fail(path, "expected an object");
}

/// Rejects keys outside `allowed` so that typos do not silently fall back
/// to defaults.
void expect_keys(const json& j, const std::string& path,
                 std::initializer_list<std::string_view> allowed) {
  expect_object(j, path);
  for (const auto& [key, value] : j.items()) {
    if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
      fail(child(path, key), "unknown key");
    }
  }
}

const json& require(const json& j, std::string_view key,
                    const std::string& path) {
  auto it = j.find(std::string(key));
  if (it == j.end()) fail(child(path, key), "missing required key");
  return *it;
}

double as_double(const json& j, const std::string& path) {
  if (!j.is_number()) fail(path, "expected a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) fail(path, "expected a finite number");
  return v;
}

double get_double(const json& j, std::string_view key, const std::string& path,
                  double fallback) {
  auto it = j.find(std::string(key));
  return it == j.end() ? fallback : as_double(*it, child(path, key));
}

double require_double(const json& j, std::string_view key,
                      const std::string& path) {
  return as_double(require(j, key, path), child(path, key));
}

std::size_t get_count(const json& j, std::string_view key,
                      const std::string& path, std::size_t fallback) {
  auto it = j.find(std::string(key));
  if (it == j.end()) return fallback;
  if (!it->is_number_unsigned()) {
    fail(child(path, key), "expected a nonnegative integer");
  }
  return it->get<std::size_t>();
}

std::string get_string(const json& j, std::string_view key,
                       const std::string& path, std::string fallback) {
  auto it = j.find(std::string(key));
  if (it == j.end()) return fallback;
  if (!it->is_string()) fail(child(path, key), "expected a string");
  return it->get<std::string>();
}

std::string require_kind(const json& j, const std::string& path) {
  expect_object(j, path);
  const json& k = require(j, "kind", path);
  if (!k.is_string()) fail(child(path, "kind"), "expected a string");
  return k.get<std::string>();
}

Vector as_vector(const json& j, const std::string& path, Index dim) {
  if (!j.is_array()) fail(path, "expected an array of numbers");
  if (dim > 0 && static_cast<Index>(j.size()) != dim) {
    fail(path, "expected " + std::to_string(dim) + " coordinates, got " +
                   std::to_string(j.size()));
  }
  if (j.empty()) fail(path, "expected a nonempty array");
  Vector v(static_cast<Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) {
    v[static_cast<Index>(i)] = as_double(j[i], path + "[" + std::to_string(i) + "]");
  }
  return v;
}

Vector require_vector(const json& j, std::string_view key,
                      const std::string& path, Index dim) {
  return as_vector(require(j, key, path), child(path, key), dim);
}

/// Row-major array of arrays.
Matrix as_matrix(const json& j, const std::string& path, Index rows,
                 Index cols) {
  if (!j.is_array() || static_cast<Index>(j.size()) != rows) {
    fail(path, "expected " + std::to_string(rows) + " rows");
  }
  Matrix m(rows, cols);
  for (Index r = 0; r < rows; ++r) {
    const auto rp = path + "[" + std::to_string(r) + "]";
    m.row(r) = as_vector(j[static_cast<std::size_t>(r)], rp, cols).transpose();
  }
  return m;
}

/// Runs a catalog factory and reports its precondition failures as
/// configuration errors at `path`.
template <class F>
auto build(const std::string& path, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const ParameterError& e) {
    fail(path, e.what());
  } catch (const CapabilityError& e) {
    fail(path, e.what());
  }
}

ConvexSet parse_set(const json& j, const std::string& path, Index dim) {
  const std::string kind = require_kind(j, path);
  if (kind == "whole-space") {
    expect_keys(j, path, {"kind"});
    return ConvexSet::whole_space(dim);
  }
  if (kind == "box") {
    expect_keys(j, path, {"kind", "lo", "hi"});
    Vector lo = require_vector(j, "lo", path, dim);
    Vector hi = require_vector(j, "hi", path, dim);
    return build(path, [&] { return ConvexSet::box(lo, hi); });
  }
  if (kind == "ball") {
    expect_keys(j, path, {"kind", "center", "radius"});
    Vector c = require_vector(j, "center", path, dim);
    const double r = require_double(j, "radius", path);
    return build(path, [&] { return ConvexSet::ball(c, r); });
  }
  if (kind == "halfspace" || kind == "hyperplane") {
    expect_keys(j, path, {"kind", "normal", "offset"});
    Vector a = require_vector(j, "normal", path, dim);
    const double b = require_double(j, "offset", path);
    return build(path, [&] {
      return kind == "halfspace" ? ConvexSet::halfspace(a, b)
                                 : ConvexSet::hyperplane(a, b);
    });
  }
  if (kind == "affine-subspace") {
    expect_keys(j, path, {"kind", "base", "directions"});
    Vector base = require_vector(j, "base", path, dim);
    const json& dirs = require(j, "directions", path);
    if (!dirs.is_array()) fail(child(path, "directions"), "expected an array");
    // Listed as one direction per entry; stored as columns.
    Matrix d(dim, static_cast<Index>(dirs.size()));
    for (std::size_t k = 0; k < dirs.size(); ++k) {
      d.col(static_cast<Index>(k)) = as_vector(
          dirs[k], child(path, "directions") + "[" + std::to_string(k) + "]",
          dim);
    }
    return build(path, [&] { return ConvexSet::affine_subspace(base, d); });
  }
  if (kind == "translate-dilate") {
    expect_keys(j, path, {"kind", "base", "shift", "scale"});
    ConvexSet base = parse_set(require(j, "base", path), child(path, "base"), dim);
    Vector shift = require_vector(j, "shift", path, dim);
    const double scale = require_double(j, "scale", path);
    return build(path,
                 [&] { return ConvexSet::translate_dilate(base, shift, scale); });
  }
  fail(child(path, "kind"), "unknown set kind '" + kind + "'");
}

ClassClaim parse_claim(const json& j, const std::string& path) {
  expect_keys(j, path, {"class", "modulus"});
  const std::string cls = get_string(j, "class", path, "");
  return build(path, [&]() -> ClassClaim {
    if (cls == "nonexpansive") return ClassClaim::nonexpansive();
    if (cls == "firmly-nonexpansive") return ClassClaim::firmly_nonexpansive();
    if (cls == "contraction") {
      return ClassClaim::contraction(require_double(j, "modulus", path));
    }
    if (cls == "cocoercive") {
      return ClassClaim::cocoercive(require_double(j, "modulus", path));
    }
    if (cls == "unclassified") return ClassClaim::unclassified();
    fail(child(path, "class"), "unknown operator class '" + cls + "'");
  });
}

ProxFunction parse_prox(const json& j, const std::string& path, Index dim) {
  const std::string kind = require_kind(j, path);
  if (kind == "indicator") {
    expect_keys(j, path, {"kind", "set"});
    return ProxFunction::indicator(
        parse_set(require(j, "set", path), child(path, "set"), dim));
  }
  if (kind == "l1") {
    expect_keys(j, path, {"kind", "weight"});
    const double w = get_double(j, "weight", path, 1.0);
    return build(path, [&] { return ProxFunction::l1(w); });
  }
  if (kind == "quadratic") {
    expect_keys(j, path, {"kind", "center", "weight"});
    Vector c = require_vector(j, "center", path, dim);
    const double w = get_double(j, "weight", path, 1.0);
    return build(path, [&] { return ProxFunction::quadratic(c, w); });
  }
  if (kind == "separable") {
    expect_keys(j, path, {"kind", "blocks"});
    const json& blocks = require(j, "blocks", path);
    if (!blocks.is_array()) fail(child(path, "blocks"), "expected an array");
    std::vector<std::pair<Index, ProxFunction>> parts;
    Index total = 0;
    for (std::size_t k = 0; k < blocks.size(); ++k) {
      const auto bp = child(path, "blocks") + "[" + std::to_string(k) + "]";
      expect_keys(blocks[k], bp, {"size", "fn"});
      const auto size = static_cast<Index>(get_count(blocks[k], "size", bp, 0));
      if (size < 1) fail(child(bp, "size"), "block size must be positive");
      parts.emplace_back(size,
                         parse_prox(require(blocks[k], "fn", bp), child(bp, "fn"), size));
      total += size;
    }
    if (total != dim) fail(path, "block sizes must add up to the dimension");
    return build(path, [&] { return ProxFunction::separable(std::move(parts)); });
  }
  fail(child(path, "kind"), "unknown function kind '" + kind + "'");
}

struct BuiltOperator {
  Operator op;
  std::optional<ForwardBackwardParts> fb;
};

BuiltOperator parse_operator(const json& j, const std::string& path, Index dim) {
  const std::string kind = require_kind(j, path);
  auto with_claim = [&](Operator op) {
    auto it = j.find("claim");
    if (it != j.end()) op = op.with_claim(parse_claim(*it, child(path, "claim")));
    return op;
  };
  auto direct = [&](std::initializer_list<std::string_view> keys, auto make) {
    expect_keys(j, path, keys);
    return BuiltOperator{with_claim(build(path, make)), std::nullopt};
  };

  if (kind == "identity") {
    return direct({"kind", "claim"}, [&] { return ops::identity(dim); });
  }
  if (kind == "constant") {
    return direct({"kind", "value", "claim"}, [&] {
      return ops::constant(require_vector(j, "value", path, dim));
    });
  }
  if (kind == "projection") {
    return direct({"kind", "set", "claim"}, [&] {
      return ops::projection(
          parse_set(require(j, "set", path), child(path, "set"), dim));
    });
  }
  if (kind == "linear") {
    return direct({"kind", "matrix", "claim"}, [&] {
      return ops::linear(
          as_matrix(require(j, "matrix", path), child(path, "matrix"), dim, dim));
    });
  }
  if (kind == "scaled-rotation") {
    if (dim != 2) fail(path, "scaled-rotation requires dim = 2");
    return direct({"kind", "alpha", "angle_deg", "claim"}, [&] {
      const double alpha = require_double(j, "alpha", path);
      const double deg = require_double(j, "angle_deg", path);
      return ops::scaled_rotation(alpha, deg * std::numbers::pi / 180.0);
    });
  }
  if (kind == "translation") {
    return direct({"kind", "shift", "claim"}, [&] {
      return ops::translation(require_vector(j, "shift", path, dim));
    });
  }
  if (kind == "scaling") {
    return direct({"kind", "factor", "claim"}, [&] {
      return ops::scaling(dim, require_double(j, "factor", path));
    });
  }
  if (kind == "affine-gradient") {
    return direct({"kind", "matrix", "b", "claim"}, [&] {
      return ops::affine_gradient(
          as_matrix(require(j, "matrix", path), child(path, "matrix"), dim, dim),
          require_vector(j, "b", path, dim));
    });
  }
  if (kind == "forward-backward") {
    expect_keys(j, path, {"kind", "phi", "mu", "B", "claim"});
    ProxFunction phi = parse_prox(require(j, "phi", path), child(path, "phi"), dim);
    const double mu = require_double(j, "mu", path);
    BuiltOperator B = parse_operator(require(j, "B", path), child(path, "B"), dim);
    if (B.op.declared().kind != OperatorClass::Cocoercive) {
      fail(child(path, "B"), "must declare a cocoercive class");
    }
    if (!(mu > 0.0)) fail(child(path, "mu"), "must be positive");
    ProxSpec spec(phi, mu);
    Operator T = with_claim(build(path, [&] {
      return make_forward_backward(spec, B.op);
    }));
    return BuiltOperator{
        std::move(T), ForwardBackwardParts{spec, B.op, B.op.declared().modulus}};
  }
  fail(child(path, "kind"), "unknown operator kind '" + kind + "'");
}

EpsilonSchedule parse_epsilon(const json& j, const std::string& path) {
  const std::string kind = require_kind(j, path);
  if (kind == "power") {
    expect_keys(j, path, {"kind", "eps0", "beta"});
    const double e0 = get_double(j, "eps0", path, 1.0);
    const double b = get_double(j, "beta", path, 0.5);
    return build(path, [&] { return EpsilonSchedule::power(e0, b); });
  }
  if (kind == "constant") {
    expect_keys(j, path, {"kind", "value"});
    const double v = require_double(j, "value", path);
    return build(path, [&] { return EpsilonSchedule::constant(v); });
  }
  fail(child(path, "kind"), "unknown epsilon kind '" + kind + "'");
}

AnchorPath parse_anchor(const json& j, const std::string& path, Index dim) {
  const std::string kind = require_kind(j, path);
  if (kind == "constant") {
    expect_keys(j, path, {"kind", "y"});
    Vector y = require_vector(j, "y", path, dim);
    return build(path, [&] { return AnchorPath::constant(y); });
  }
  if (kind == "moving") {
    expect_keys(j, path, {"kind", "y0", "limit", "rate"});
    Vector y0 = require_vector(j, "y0", path, dim);
    Vector lim = require_vector(j, "limit", path, dim);
    const double rate = require_double(j, "rate", path);
    return build(path, [&] { return AnchorPath::moving(y0, lim, rate); });
  }
  fail(child(path, "kind"), "unknown anchor kind '" + kind + "'");
}

/// delta(t) for a set family together with the exponent r such that
/// Haus^{1/2}(C_t, C) / eps(t) behaves like (1 + t)^{-r} (power schedules).
struct Offset {
  SetFamily::Offset fn;
  std::string description;
  std::optional<double> decay_exponent;
};

Offset parse_offset(const json& j, const std::string& path,
                    const std::optional<Schedule>& sched) {
  const std::string kind = require_kind(j, path);
  const bool power_eps =
      sched && sched->eps.kind() == EpsilonSchedule::Kind::Power;
  const double beta = power_eps ? sched->eps.beta() : 0.0;
  if (kind == "eps-power") {
    expect_keys(j, path, {"kind", "k"});
    if (!sched) fail(path, "eps-power offset requires a schedule");
    const double k = require_double(j, "k", path);
    if (!(k > 0.0)) fail(child(path, "k"), "must be positive");
    EpsilonSchedule eps = sched->eps;
    Offset out{[eps, k](double t) { return std::pow(eps(t), k); },
               "eps^" + std::to_string(k), std::nullopt};
    // Haus ~ eps^k, so Haus^{1/2} / eps ~ eps^{k/2 - 1}.
    if (power_eps) out.decay_exponent = beta * (k / 2.0 - 1.0);
    return out;
  }
  if (kind == "power") {
    expect_keys(j, path, {"kind", "delta0", "gamma"});
    const double d0 = require_double(j, "delta0", path);
    const double g = require_double(j, "gamma", path);
    if (!(d0 >= 0.0) || !(g >= 0.0)) fail(path, "delta0, gamma must be >= 0");
    Offset out{[d0, g](double t) { return d0 * std::pow(1.0 + t, -g); },
               "power", std::nullopt};
    if (power_eps) out.decay_exponent = g / 2.0 - beta;
    return out;
  }
  fail(child(path, "kind"), "unknown offset kind '" + kind + "'");
}

CheckReport premise(std::string id, bool passed, double measured,
                    double threshold, std::string note = {}) {
  CheckReport r;
  r.id = std::move(id);
  r.passed = passed;
  r.measured = measured;
  r.threshold = threshold;
  r.samples = 1;
  r.note = std::move(note);
  return r;
}

struct BuiltFamily {
  OperatorFamily family;
  std::optional<ForwardBackwardParts> fb;
  std::optional<DriftParts> drift;
};

BuiltFamily parse_projected_gradient(const json& j, const std::string& path,
                                     Index dim, const ConvexSet& domain,
                                     const std::optional<Schedule>& sched,
                                     Report& premises) {
  expect_keys(j, path, {"kind", "sets", "grad", "mu", "drift_radius"});
  const json& sj = require(j, "sets", path);
  const std::string sp = child(path, "sets");
  const std::string skind = require_kind(sj, sp);
  expect_keys(sj, sp, {"kind", "base", "delta"});
  ConvexSet base = parse_set(require(sj, "base", sp), child(sp, "base"), dim);
  Offset offset = parse_offset(require(sj, "delta", sp), child(sp, "delta"), sched);
  std::optional<SetFamily> sets;
  if (skind == "inflated-box") {
    sets = build(sp, [&] { return SetFamily::inflated_box(base, offset.fn); });
  } else if (skind == "dilated-ball") {
    sets = build(sp, [&] { return SetFamily::dilated_ball(base, offset.fn); });
  } else {
    fail(child(sp, "kind"), "unknown set family kind '" + skind + "'");
  }

  BuiltOperator grad = parse_operator(require(j, "grad", path), child(path, "grad"), dim);
  if (grad.op.declared().kind != OperatorClass::Cocoercive) {
    fail(child(path, "grad"), "must declare a cocoercive class");
  }
  const double beta = grad.op.declared().modulus;
  const double mu = require_double(j, "mu", path);
  premises.add(premise("premise.step-range", mu > 0.0 && mu < 2.0 * beta, mu,
                       2.0 * beta, "mu must lie in (0, 2 beta)"));
  if (!(mu > 0.0 && mu < 2.0 * beta)) {
    fail(child(path, "mu"), "must lie in (0, 2 beta) = (0, " +
                                std::to_string(2.0 * beta) + ")");
  }

  // Uniform bound: delta nonincreasing on a sample grid, so every C_t lies
  // in the bounded envelope C_0, which must itself lie in D.
  double worst_rise = 0.0;
  double prev = sets->delta(0.0);
  for (double t = 1e-3; t <= 1e8; t *= 1.5) {
    const double d = sets->delta(t);
    worst_rise = std::max(worst_rise, d - prev);
    prev = d;
  }
  const ConvexSet envelope = sets->envelope(sets->delta(0.0));
  bool inside = false;
  try {
    inside = includes(domain, envelope);
  } catch (const CapabilityError&) {
    fail(path, "cannot decide whether the set family lies in the domain");
  }
  const bool bounded = envelope.bounded() && worst_rise <= 0.0 && inside;
  premises.add(premise("premise.uniform-bound", bounded, worst_rise, 0.0,
                       "delta nonincreasing, envelope bounded and inside D"));
  if (!bounded) fail(sp, "set family is not uniformly bounded inside D");

  if (!offset.decay_exponent) {
    fail(sp, "the Hausdorff premise needs a power epsilon schedule");
  }
  const double r = *offset.decay_exponent;
  premises.add(premise("premise.hausdorff-ratio-vanishes", r > 0.0, -r, 0.0,
                       "Haus^{1/2}(C_t,C)/eps(t) ~ (1+t)^{-r}, need r > 0"));
  if (!(r > 0.0)) {
    fail(sp, "Haus^{1/2}(C_t, C) / eps(t) does not vanish (offset " +
                 offset.description + ")");
  }

  OperatorFamily family = build(path, [&] {
    return ops::projected_gradient(*sets, grad.op, mu, domain);
  });
  ForwardBackwardParts fb{ProxSpec(ProxFunction::indicator(base), mu), grad.op,
                          beta};
  DriftParts drift{*sets, mu, get_double(j, "drift_radius", path, 10.0)};
  return BuiltFamily{std::move(family), std::move(fb), std::move(drift)};
}

IntegratorControls parse_controls(const json& run, const std::string& path,
                                  std::string_view prefix,
                                  IntegratorControls c) {
  auto key = [&](std::string_view k) { return std::string(prefix) + std::string(k); };
  auto it = run.find(key("method"));
  if (it != run.end()) {
    if (!it->is_string()) fail(child(path, key("method")), "expected a string");
    c.method = build(child(path, key("method")),
                     [&] { return parse_method(it->get<std::string>()); });
  }
  c.step = get_double(run, key("step"), path, c.step);
  c.rtol = get_double(run, key("rtol"), path, c.rtol);
  c.atol = get_double(run, key("atol"), path, c.atol);
  c.min_step = get_double(run, key("min_step"), path, c.min_step);
  c.max_step = get_double(run, key("max_step"), path, c.max_step);
  if (!(c.step > 0.0 && c.rtol > 0.0 && c.atol > 0.0 && c.min_step > 0.0 &&
        c.max_step >= c.min_step)) {
    fail(path, "integrator controls must be positive");
  }
  return c;
}

RunControls parse_run(const json& j, const std::string& path) {
  RunControls r;
  r.integrator.method = Method::DormandPrince;
  if (j.is_null()) return r;
  expect_keys(j, path,
              {"horizon", "plain_horizon", "method", "step", "rtol", "atol",
               "min_step", "max_step", "plain_method", "plain_step",
               "plain_rtol", "plain_atol", "plain_min_step", "plain_max_step",
               "samples", "grid", "grid_first", "monitor_times"});
  r.horizon = get_double(j, "horizon", path, r.horizon);
  r.plain_horizon = get_double(j, "plain_horizon", path, r.plain_horizon);
  if (!(r.horizon > 0.0 && r.plain_horizon > 0.0)) {
    fail(path, "horizons must be positive");
  }
  r.integrator = parse_controls(j, path, "", r.integrator);
  r.plain_integrator = parse_controls(j, path, "plain_", r.plain_integrator);
  r.samples = get_count(j, "samples", path, r.samples);
  if (r.samples < 2) fail(child(path, "samples"), "need at least 2 samples");
  const std::string grid = get_string(j, "grid", path, "log");
  if (grid == "log") {
    r.grid = GridKind::Log;
  } else if (grid == "uniform") {
    r.grid = GridKind::Uniform;
  } else {
    fail(child(path, "grid"), "expected 'log' or 'uniform'");
  }
  r.grid_first = get_double(j, "grid_first", path, r.grid_first);
  if (!(r.grid_first > 0.0)) fail(child(path, "grid_first"), "must be positive");
  if (auto it = j.find("monitor_times"); it != j.end()) {
    const Vector v = as_vector(*it, child(path, "monitor_times"), 0);
    r.monitor_times.assign(v.begin(), v.end());
    for (std::size_t k = 0; k < r.monitor_times.size(); ++k) {
      if (!(r.monitor_times[k] > 0.0) ||
          (k > 0 && !(r.monitor_times[k] > r.monitor_times[k - 1]))) {
        fail(child(path, "monitor_times"),
             "must be positive and strictly increasing");
      }
    }
  }
  return r;
}

CheckControls parse_checks(const json& j, const std::string& path) {
  CheckControls c;
  if (j.is_null()) return c;
  expect_keys(j, path,
              {"pairs", "tol", "regpath_tol", "resolvent_sweeps",
               "lipschitz_sweeps", "fejer_sweeps", "drift_samples", "eps_lo",
               "eps_hi", "path_eps0", "path_ratio", "path_count", "path_tol",
               "divergence_radius"});
  c.pairs = get_count(j, "pairs", path, c.pairs);
  c.tol = get_double(j, "tol", path, c.tol);
  c.regpath_tol = get_double(j, "regpath_tol", path, c.regpath_tol);
  c.resolvent_sweeps = get_count(j, "resolvent_sweeps", path, c.resolvent_sweeps);
  c.lipschitz_sweeps = get_count(j, "lipschitz_sweeps", path, c.lipschitz_sweeps);
  c.fejer_sweeps = get_count(j, "fejer_sweeps", path, c.fejer_sweeps);
  c.drift_samples = get_count(j, "drift_samples", path, c.drift_samples);
  c.eps_lo = get_double(j, "eps_lo", path, c.eps_lo);
  c.eps_hi = get_double(j, "eps_hi", path, c.eps_hi);
  c.path_eps0 = get_double(j, "path_eps0", path, c.path_eps0);
  c.path_ratio = get_double(j, "path_ratio", path, c.path_ratio);
  c.path_count = get_count(j, "path_count", path, c.path_count);
  c.path_tol = get_double(j, "path_tol", path, c.path_tol);
  c.divergence_radius = get_double(j, "divergence_radius", path, c.divergence_radius);
  if (c.pairs == 0) fail(child(path, "pairs"), "must be positive");
  if (!(c.tol > 0.0 && c.regpath_tol > 0.0 && c.path_tol > 0.0)) {
    fail(path, "tolerances must be positive");
  }
  if (!(c.eps_lo > 0.0 && c.eps_hi > c.eps_lo)) {
    fail(path, "need 0 < eps_lo < eps_hi");
  }
  if (!(c.path_eps0 > 0.0) || !(c.path_ratio > 0.0 && c.path_ratio < 1.0) ||
      c.path_count == 0) {
    fail(path, "need path_eps0 > 0, path_ratio in (0, 1), path_count >= 1");
  }
  return c;
}

Analytics parse_analytics(const json& j, const std::string& path, Index dim) {
  Analytics a;
  if (j.is_null()) return a;
  expect_keys(j, path,
              {"target", "fix_distance", "fix_set", "fixed_point", "alpha",
               "fix_empty", "target_tol", "agreement_tol", "path_target_tol"});
  if (j.contains("target")) a.target = require_vector(j, "target", path, dim);
  if (j.contains("fix_distance")) {
    a.fix_distance = require_double(j, "fix_distance", path);
    if (!(*a.fix_distance >= 0.0)) {
      fail(child(path, "fix_distance"), "must be nonnegative");
    }
  }
  if (j.contains("fix_set")) {
    a.fix_set = parse_set(j["fix_set"], child(path, "fix_set"), dim);
  }
  if (j.contains("fixed_point")) {
    a.fixed_point = require_vector(j, "fixed_point", path, dim);
  }
  if (j.contains("alpha")) {
    a.alpha = require_double(j, "alpha", path);
    if (!(*a.alpha >= 0.0 && *a.alpha < 1.0)) {
      fail(child(path, "alpha"), "must lie in [0, 1)");
    }
  }
  if (auto it = j.find("fix_empty"); it != j.end()) {
    if (!it->is_boolean()) fail(child(path, "fix_empty"), "expected a boolean");
    a.fix_empty = it->get<bool>();
  }
  a.target_tol = get_double(j, "target_tol", path, a.target_tol);
  a.agreement_tol = get_double(j, "agreement_tol", path, a.agreement_tol);
  a.path_target_tol = get_double(j, "path_target_tol", path, a.path_target_tol);
  return a;
}

}  // namespace

double Scenario::drift_constant() const {
  if (!drift) throw ConfigError(name + ": scenario has no drift description");
  const ConvexSet& base = drift->sets.base();
  const Vector z0 = base.project(Vector::Zero(base.dim()));
  // delta is nonincreasing, so the supremum of Haus(C_t, C) is at t = 0.
  const double c = drift->sets.hausdorff_to_base(0.0);
  return z0.norm() + c / 2.0;
}

Scenario parse_scenario(std::string_view text) {
  json j;
  try {
    j = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("scenario: invalid JSON: ") + e.what());
  }
  const std::string root = "scenario";
  expect_keys(j, root,
              {"name", "description", "dim", "seed", "domain", "operator",
               "family", "schedule", "starts", "run", "checks", "analytics"});
  const std::string name = get_string(j, "name", root, "");
  if (name.empty()) fail(child(root, "name"), "missing or empty");
  const std::string path = name;

  const auto dim = static_cast<Index>(get_count(j, "dim", path, 0));
  if (dim < 1) fail(child(path, "dim"), "must be a positive integer");
  const auto seed = static_cast<std::uint64_t>(get_count(j, "seed", path, 0));

  ConvexSet domain = j.contains("domain")
                         ? parse_set(j["domain"], child(path, "domain"), dim)
                         : ConvexSet::whole_space(dim);

  std::optional<Schedule> schedule;
  if (j.contains("schedule")) {
    const json& sj = j["schedule"];
    const auto sp = child(path, "schedule");
    expect_keys(sj, sp, {"epsilon", "anchor"});
    schedule = Schedule{
        parse_epsilon(require(sj, "epsilon", sp), child(sp, "epsilon")),
        parse_anchor(require(sj, "anchor", sp), child(sp, "anchor"), dim)};
  }

  Report premises;
  std::optional<BuiltOperator> base_op;
  if (j.contains("operator")) {
    base_op = parse_operator(j["operator"], child(path, "operator"), dim);
    if (base_op->fb) {
      const double mu = base_op->fb->phi.mu;
      const double beta = base_op->fb->beta;
      premises.add(premise("premise.step-range", true, mu, 2.0 * beta,
                           "mu must lie in (0, 2 beta)"));
    }
  }

  auto restrict = [&](const Operator& op) {
    return build(child(path, "operator"), [&] {
      if (op.dim() != dim) throw ParameterError("dimension mismatch");
      return op.restricted_to(domain);
    });
  };

  std::optional<BuiltFamily> built;
  const json* fj = j.contains("family") ? &j["family"] : nullptr;
  const std::string fp = child(path, "family");
  const std::string fkind = fj ? require_kind(*fj, fp) : "constant";
  if (fkind == "projected-gradient") {
    if (base_op) fail(fp, "a projected-gradient family defines its own operator");
    built = parse_projected_gradient(*fj, fp, dim, domain, schedule, premises);
  } else {
    if (!base_op) fail(child(path, "operator"), "missing required key");
    const Operator T = restrict(base_op->op);
    if (fkind == "constant") {
      if (fj) expect_keys(*fj, fp, {"kind"});
      built = BuiltFamily{OperatorFamily::constant(T), base_op->fb, std::nullopt};
    } else if (fkind == "switching") {
      expect_keys(*fj, fp, {"kind", "before", "switch_time"});
      const Operator before = restrict(
          parse_operator(require(*fj, "before", fp), child(fp, "before"), dim).op);
      const double t0 = require_double(*fj, "switch_time", fp);
      built = BuiltFamily{build(fp, [&] { return ops::switching(before, T, t0); }),
                          base_op->fb, std::nullopt};
    } else if (fkind == "shifted") {
      expect_keys(*fj, fp, {"kind", "shift", "rate"});
      Vector shift = require_vector(*fj, "shift", fp, dim);
      const double rate = require_double(*fj, "rate", fp);
      if (!(rate > 0.0)) fail(child(fp, "rate"), "must be positive");
      if (domain.kind_name() != "whole-space") {
        fail(fp, "a shifted family maps into D only when D is the whole space");
      }
      built = BuiltFamily{
          build(fp, [&] {
            return ops::shifted(T, shift,
                                [rate](double t) { return std::exp(-rate * t); });
          }),
          base_op->fb, std::nullopt};
    } else {
      fail(child(fp, "kind"), "unknown family kind '" + fkind + "'");
    }
  }

  if (schedule) {
    const bool inside = domain.contains(schedule->anchor.limit()) &&
                        domain.contains(schedule->anchor(0.0));
    premises.add(premise("premise.anchor-in-domain", inside,
                         domain.distance(schedule->anchor.limit()), kMembershipTol));
    if (!inside) fail(child(path, "schedule.anchor"), "anchor must lie in D");
  }

  std::vector<Vector> starts;
  if (j.contains("starts")) {
    const json& sj = j["starts"];
    const auto sp = child(path, "starts");
    if (!sj.is_array() || sj.empty()) fail(sp, "expected a nonempty array");
    for (std::size_t k = 0; k < sj.size(); ++k) {
      const auto kp = sp + "[" + std::to_string(k) + "]";
      Vector x0 = as_vector(sj[k], kp, dim);
      if (!domain.contains(x0)) fail(kp, "start must lie in D");
      starts.push_back(std::move(x0));
    }
  }

  Scenario s{
      .name = name,
      .dim = dim,
      .seed = seed,
      .domain = domain,
      .op = built->family.limit(),
      .family = built->family,
      .schedule = std::move(schedule),
      .starts = std::move(starts),
      .forward_backward = built->fb,
      .drift = built->drift,
      .run = parse_run(j.value("run", json()), child(path, "run")),
      .checks = parse_checks(j.value("checks", json()), child(path, "checks")),
      .analytics = parse_analytics(j.value("analytics", json()),
                                   child(path, "analytics"), dim),
      .premises = std::move(premises),
  };
  if (s.analytics.fix_distance && !s.schedule) {
    fail(child(path, "analytics.fix_distance"), "only meaningful with a schedule");
  }
  return s;
}

Scenario load_scenario(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open scenario file " + path.string());
  std::ostringstream text;
  text << in.rdbuf();
  return parse_scenario(text.str());
}

Scenario builtin_scenario(std::string_view name) {
  return parse_scenario(builtin_scenario_text(name));
}

}  // namespace tikflow
