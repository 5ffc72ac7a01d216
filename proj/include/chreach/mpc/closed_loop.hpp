#pragma once

#include "chreach/core.hpp"
#include "chreach/mpc/scp.hpp"
#include "chreach/rng.hpp"

#include <chrono>
#include <cstdint>
#include <vector>

namespace chreach {

struct MpcStepRecord {
  ScpStatus solver_status = ScpStatus::Converged;
  std::vector<ScpIterate> scp_trace;
  double solve_seconds = 0.0;
  bool held_previous = false;  // infeasible subproblem: kept the old ubar
};

struct ClosedLoopTrace {
  std::vector<Vec> states;     // per simulation substep node (7-dim)
  std::vector<Vec> controls;   // applied u = ubar_0 + K w at the same nodes
  std::vector<MpcStepRecord> steps;
  int omega_violations = 0;
  int control_violations = 0;
};

/// Receding-horizon robust MPC: solve the tightened OCP, apply the feedback
/// control for one dt under sampled disturbances (held constant per RK4
/// substep), shift, repeat. Warm-started with the shifted previous solution;
/// after the first solve only a few SCP iterations are run per step.
inline ClosedLoopTrace mpc_closed_loop(const OcpSpec& spec, const Vec& x0,
                                       int steps, std::uint64_t seed,
                                       const ScpConfig& cold_cfg,
                                       const ScpConfig& warm_cfg,
                                       int threads = 0) {
  if (steps < 1) throw ConfigError("mpc_closed_loop: steps must be >= 1");
  spec.validate();
  const int K = spec.horizon_steps();
  const Mat Jinv = spec.J_diag.cwiseInverse().asDiagonal();
  const SystemDef plant = make_spacecraft_full(
      spec.J_diag, spec.K_fb,
      PiecewiseControl::constant(Vec::Zero(3), 0.0, spec.dt));

  ClosedLoopTrace trace;
  Vec x = x0;
  trace.states.push_back(x);
  ControlSequence ubar = feedback_cancel_init(spec, x0);
  Rng rng(seed);
  const double tol = 1e-12;
  auto check_omega = [&](const Vec& w) {
    if (w.cwiseAbs().maxCoeff() > spec.omega_max + tol) trace.omega_violations++;
  };
  auto check_control = [&](const Vec& u) {
    if (u.cwiseAbs().maxCoeff() > spec.u_max + tol) trace.control_violations++;
  };
  check_omega(x.tail(3));

  for (int s = 0; s < steps; ++s) {
    MpcStepRecord rec;
    const auto t_start = std::chrono::steady_clock::now();
    const ScpResult sol =
        scp_solve(spec, x, ubar, s == 0 ? cold_cfg : warm_cfg, threads);
    rec.solve_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t_start)
            .count();
    rec.solver_status = sol.status;
    rec.scp_trace = sol.trace;
    if (sol.status == ScpStatus::InfeasibleSubproblem) {
      rec.held_previous = true;  // log and hold the previous (shifted) ubar
    } else {
      ubar = sol.ubar;
    }
    trace.steps.push_back(std::move(rec));

    // Apply the first segment under sampled disturbances.
    const Vec u0 = ubar[0];
    trace.controls.push_back(u0 + spec.K_fb * x.tail(3));
    check_control(trace.controls.back());
    const double h = spec.dt / double(spec.substeps);
    for (int sub = 0; sub < spec.substeps; ++sub) {
      const Vec w = spec.W.sample_uniform(rng);
      auto rhs = [&](double, const Vec& xs) {
        Vec xdot = plant.f(0.0, xs);  // ubar = 0 inside, K w feedback applied
        xdot.tail(3) += Jinv * (u0 + w);
        return xdot;
      };
      x = rk4_step(rhs, 0.0, h, x);
      if (!all_finite(x)) throw NumericalError("mpc_closed_loop: divergence");
      trace.states.push_back(x);
      check_omega(x.tail(3));
      const Vec u_applied = u0 + spec.K_fb * x.tail(3);
      trace.controls.push_back(u_applied);
      check_control(u_applied);
    }

    // Shift for the warm start; the tail segment is duplicated, which keeps
    // the tail control rows feasible when the plan rides the rate bound.
    for (int k = 0; k + 1 < K; ++k) ubar[k] = ubar[k + 1];
  }
  return trace;
}

}  // namespace chreach
