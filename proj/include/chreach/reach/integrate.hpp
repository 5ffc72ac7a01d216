#pragma once

#include "chreach/core.hpp"

#include <functional>
#include <string>
#include <vector>

namespace chreach {

/// Uniform time grid t0 = t_0 < ... < t_steps = tf with spacing h.
struct TimeGrid {
  double t0 = 0.0;
  double tf = 1.0;
  int steps = 1;

  TimeGrid() = default;
  TimeGrid(double t0_, double tf_, int steps_) : t0(t0_), tf(tf_), steps(steps_) {
    if (!(tf > t0) || steps < 1) {
      throw ConfigError("TimeGrid: need tf > t0 and steps >= 1");
    }
  }

  double h() const { return (tf - t0) / double(steps); }
  int nodes() const { return steps + 1; }
  double t(int k) const { return t0 + h() * double(k); }
};

/// Classical fixed-step RK4. Returns the state at every grid node.
/// Raises a divergence error (with the node index) on NaN/Inf.
inline std::vector<Vec> rk4_integrate(
    const std::function<Vec(double, const Vec&)>& rhs, const TimeGrid& grid,
    const Vec& x0) {
  std::vector<Vec> out;
  out.reserve(grid.nodes());
  out.push_back(x0);
  const double h = grid.h();
  Vec x = x0;
  for (int k = 0; k < grid.steps; ++k) {
    const double t = grid.t(k);
    const Vec k1 = rhs(t, x);
    const Vec k2 = rhs(t + 0.5 * h, x + 0.5 * h * k1);
    const Vec k3 = rhs(t + 0.5 * h, x + 0.5 * h * k2);
    const Vec k4 = rhs(t + h, x + h * k3);
    x += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    if (!all_finite(x)) {
      throw NumericalError("rk4_integrate: divergence at node " +
                           std::to_string(k + 1));
    }
    out.push_back(x);
  }
  return out;
}

/// Single RK4 step (used by the discrete-time step maps).
inline Vec rk4_step(const std::function<Vec(double, const Vec&)>& rhs, double t,
                    double h, const Vec& x) {
  const Vec k1 = rhs(t, x);
  const Vec k2 = rhs(t + 0.5 * h, x + 0.5 * h * k1);
  const Vec k3 = rhs(t + 0.5 * h, x + 0.5 * h * k2);
  const Vec k4 = rhs(t + h, x + h * k3);
  return x + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

}  // namespace chreach
