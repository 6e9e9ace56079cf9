#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <string_view>
#include <vector>

#include "tikflow/vector.hpp"

namespace tikflow {

enum class Method { Euler, Rk4, DormandPrince };

const char* to_string(Method method);
/// "euler", "rk4", "adaptive" (alias "dopri5"). Throws ConfigError.
Method parse_method(std::string_view name);

struct IntegratorControls {
  Method method = Method::Rk4;
  /// Fixed step, or the initial step for the adaptive pair.
  double step = 1e-3;
  double rtol = 1e-9;
  double atol = 1e-12;
  double min_step = 1e-12;
  double max_step = 10.0;
  std::size_t max_steps = 500'000'000;
};

using VectorField = std::function<Vector(double, const Vector&)>;

struct OdeSolution {
  std::vector<double> times;
  std::vector<Vector> states;
  std::size_t accepted = 0;
  std::size_t rejected = 0;
  std::size_t evaluations = 0;
};

/// Integrates x' = field(t, x) from x(0) = x0 to t_end and records the state
/// at every time in `sample_grid` (strictly increasing, within [0, t_end]).
/// Fixed-step methods split each inter-sample interval into equal steps no
/// larger than controls.step; the adaptive Dormand-Prince 5(4) pair clips
/// steps to land on sample times.
///
/// Throws StiffnessError when the adaptive step falls below min_step and
/// DivergenceError when the state becomes non-finite.
OdeSolution integrate_ode(const VectorField& field, const Vector& x0,
                          double t_end, const IntegratorControls& controls,
                          std::span<const double> sample_grid);

/// 0, t_end / intervals, ..., t_end.
std::vector<double> uniform_grid(double t_end, std::size_t intervals);
/// 0 followed by `points` log-spaced times from t_first to t_end.
std::vector<double> log_grid(double t_first, double t_end, std::size_t points);

}  // namespace tikflow
