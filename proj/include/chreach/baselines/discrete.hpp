#pragma once

#include "chreach/core.hpp"
#include "chreach/reach/integrate.hpp"
#include "chreach/systems/system.hpp"

#include <functional>
#include <utility>

namespace chreach {

/// Discrete-time model x_{k+1} = fbar(x_k) + w_k on a fixed step dt over K
/// steps. step_nominal is the RK4 flow of the continuous dynamics with w = 0;
/// step_disturbed is the same flow with w held constant across the step, for
/// rollouts that must stay inside the continuous-time reachable sets.
struct DiscreteSystem {
  int n = 0;
  double dt = 0.0;
  int horizon_steps = 0;
  std::function<Vec(int, const Vec&)> step_nominal;
  std::function<Vec(int, const Vec&, const Vec&)> step_disturbed;
};

/// Discretization of a disturbance-affine system with `substeps` RK4 steps
/// per dt.
inline DiscreteSystem discretize(const SystemDef& sys, double t0, double dt,
                                 int horizon_steps, int substeps = 1) {
  if (!(dt > 0.0) || horizon_steps < 1 || substeps < 1) {
    throw ConfigError("discretize: need dt > 0, steps >= 1, substeps >= 1");
  }
  DiscreteSystem d;
  d.n = sys.n;
  d.dt = dt;
  d.horizon_steps = horizon_steps;
  d.step_disturbed = [sys, t0, dt, substeps](int k, const Vec& x, const Vec& w) {
    Vec xk = x;
    const double h = dt / double(substeps);
    for (int s = 0; s < substeps; ++s) {
      const double t = t0 + dt * double(k) + h * double(s);
      xk = rk4_step(
          [&](double ts, const Vec& xs) {
            return Vec(sys.f(ts, xs) + sys.g(ts, xs) * w);
          },
          t, h, xk);
    }
    return xk;
  };
  auto disturbed = d.step_disturbed;
  const Vec zero_w = Vec::Zero(sys.m);
  d.step_nominal = [disturbed, zero_w](int k, const Vec& x) {
    return disturbed(k, x, zero_w);
  };
  return d;
}

}  // namespace chreach
