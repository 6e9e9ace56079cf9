#include "tikflow/integrator.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "tikflow/error.hpp"

namespace tikflow {
namespace {

void require_finite_state(const Vector& x, double t) {
  if (!all_finite(x)) {
    throw DivergenceError("integrate: non-finite state at t=" + std::to_string(t), t);
  }
}

struct Stepper {
  const VectorField& f;
  std::size_t evaluations = 0;

  Vector eval(double t, const Vector& x) {
    ++evaluations;
    return f(t, x);
  }

  Vector euler(double t, const Vector& x, double h) { return x + h * eval(t, x); }

  Vector rk4(double t, const Vector& x, double h) {
    const Vector k1 = eval(t, x);
    const Vector k2 = eval(t + 0.5 * h, x + 0.5 * h * k1);
    const Vector k3 = eval(t + 0.5 * h, x + 0.5 * h * k2);
    const Vector k4 = eval(t + h, x + h * k3);
    return x + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  }
};

// Dormand-Prince 5(4) tableau.
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187,
                 a53 = 64448.0 / 6561, a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                 a64 = 49.0 / 176, a65 = -5103.0 / 18656;
constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                 b5 = -2187.0 / 6784, b6 = 11.0 / 84;
// b - b*, the embedded fourth-order error weights
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                 e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;

void validate(const IntegratorControls& c, double t_end,
              std::span<const double> grid) {
  if (!(t_end > 0.0) || !std::isfinite(t_end)) {
    throw ParameterError("integrate: t_end must be positive");
  }
  if (!(c.step > 0.0)) throw ParameterError("integrate: step must be positive");
  if (c.method == Method::DormandPrince &&
      !(c.rtol > 0.0 && c.atol > 0.0 && c.min_step > 0.0 && c.max_step > 0.0)) {
    throw ParameterError("integrate: adaptive controls must be positive");
  }
  if (grid.empty()) throw ParameterError("integrate: empty sample grid");
  for (std::size_t k = 0; k < grid.size(); ++k) {
    if (grid[k] < 0.0 || grid[k] > t_end) {
      throw ParameterError("integrate: sample time outside [0, t_end]");
    }
    if (k > 0 && !(grid[k] > grid[k - 1])) {
      throw ParameterError("integrate: sample grid must be strictly increasing");
    }
  }
}

}  // namespace

const char* to_string(Method method) {
  switch (method) {
    case Method::Euler: return "euler";
    case Method::Rk4: return "rk4";
    case Method::DormandPrince: return "adaptive";
  }
  return "rk4";
}

Method parse_method(std::string_view name) {
  if (name == "euler") return Method::Euler;
  if (name == "rk4") return Method::Rk4;
  if (name == "adaptive" || name == "dopri5") return Method::DormandPrince;
  throw ConfigError("unknown integration method '" + std::string(name) + "'");
}

OdeSolution integrate_ode(const VectorField& field, const Vector& x0,
                          double t_end, const IntegratorControls& controls,
                          std::span<const double> sample_grid) {
  validate(controls, t_end, sample_grid);
  require_finite(x0, "integrate initial state");

  OdeSolution out;
  out.times.reserve(sample_grid.size());
  out.states.reserve(sample_grid.size());
  Stepper stepper{field};

  double t = 0.0;
  Vector x = x0;
  std::size_t next = 0;
  auto record_due = [&] {
    while (next < sample_grid.size() && sample_grid[next] <= t) {
      out.times.push_back(sample_grid[next]);
      out.states.push_back(x);
      ++next;
    }
  };
  record_due();

  std::vector<double> stops(sample_grid.begin() + next, sample_grid.end());
  if (stops.empty() || stops.back() < t_end) stops.push_back(t_end);

  if (controls.method != Method::DormandPrince) {
    for (double stop : stops) {
      const double span = stop - t;
      const auto n = static_cast<std::size_t>(
          std::max(1.0, std::ceil(span / controls.step - 1e-9)));
      const double h = span / static_cast<double>(n);
      for (std::size_t i = 0; i < n; ++i) {
        const double ti = t + static_cast<double>(i) * h;
        x = controls.method == Method::Euler ? stepper.euler(ti, x, h)
                                             : stepper.rk4(ti, x, h);
        require_finite_state(x, ti + h);
        if (++out.accepted > controls.max_steps) {
          throw NumericalError("integrate: step budget exhausted");
        }
      }
      t = stop;
      record_due();
    }
    out.evaluations = stepper.evaluations;
    return out;
  }

  double h = std::min(controls.step, controls.max_step);
  Vector k1 = stepper.eval(t, x);
  for (double stop : stops) {
    while (t < stop) {
      const bool clipped = t + h >= stop;
      const double step = clipped ? stop - t : h;
      const Vector k2 = stepper.eval(t + c2 * step, x + step * (a21 * k1));
      const Vector k3 =
          stepper.eval(t + c3 * step, x + step * (a31 * k1 + a32 * k2));
      const Vector k4 = stepper.eval(
          t + c4 * step, x + step * (a41 * k1 + a42 * k2 + a43 * k3));
      const Vector k5 = stepper.eval(
          t + c5 * step,
          x + step * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4));
      const Vector k6 = stepper.eval(
          t + step,
          x + step * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5));
      Vector xn =
          x + step * (b1 * k1 + b3 * k3 + b4 * k4 + b5 * k5 + b6 * k6);
      const double tn = clipped ? stop : t + step;
      const Vector k7 = stepper.eval(tn, xn);
      const Vector err =
          step * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7);

      double norm = 0.0;
      for (Index i = 0; i < x.size(); ++i) {
        const double scale =
            controls.atol +
            controls.rtol * std::max(std::abs(x[i]), std::abs(xn[i]));
        norm = std::max(norm, std::abs(err[i]) / scale);
      }
      if (!std::isfinite(norm)) {
        require_finite_state(xn, tn);
        norm = 1e10;
      }
      const double factor =
          norm == 0.0 ? 5.0
                      : std::clamp(0.9 * std::pow(norm, -0.2), 0.2, 5.0);
      if (norm <= 1.0) {
        t = tn;
        x = std::move(xn);
        k1 = k7;
        ++out.accepted;
        // A clipped step says nothing about how large h may grow.
        if (!clipped || factor < 1.0) {
          h = std::min(step * factor, controls.max_step);
        }
      } else {
        ++out.rejected;
        h = step * std::max(factor, 0.2);
      }
      if (h < controls.min_step) {
        throw StiffnessError(
            "integrate: adaptive step underflow at t=" + std::to_string(t), t);
      }
      if (out.accepted + out.rejected > controls.max_steps) {
        throw NumericalError("integrate: step budget exhausted");
      }
    }
    record_due();
  }
  out.evaluations = stepper.evaluations;
  return out;
}

std::vector<double> uniform_grid(double t_end, std::size_t intervals) {
  if (!(t_end > 0.0) || intervals == 0) {
    throw ParameterError("uniform_grid: need t_end > 0 and intervals >= 1");
  }
  std::vector<double> g(intervals + 1);
  for (std::size_t k = 0; k <= intervals; ++k) {
    g[k] = t_end * static_cast<double>(k) / static_cast<double>(intervals);
  }
  g.back() = t_end;
  return g;
}

std::vector<double> log_grid(double t_first, double t_end, std::size_t points) {
  if (!(t_first > 0.0 && t_end > t_first) || points < 2) {
    throw ParameterError("log_grid: need 0 < t_first < t_end and points >= 2");
  }
  std::vector<double> g{0.0};
  const double a = std::log(t_first);
  const double b = std::log(t_end);
  for (std::size_t k = 0; k < points; ++k) {
    g.push_back(std::exp(a + (b - a) * static_cast<double>(k) /
                                 static_cast<double>(points - 1)));
  }
  g[1] = t_first;
  g.back() = t_end;
  return g;
}

}  // namespace tikflow
