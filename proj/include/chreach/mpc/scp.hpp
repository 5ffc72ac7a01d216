#pragma once

#include "chreach/core.hpp"
#include "chreach/mpc/ocp.hpp"
#include "chreach/mpc/qp.hpp"
#include "chreach/parallel.hpp"

#include <limits>
#include <string>
#include <vector>

namespace chreach {

struct ScpConfig {
  int max_iterations = 10;
  double trust_radius = 0.05;   // infinity-norm bound on the ubar update
  double tol = 1e-4;            // convergence on ||delta ubar||_inf
  double qp_tol = 1e-6;
  int qp_max_iterations = 10000;
  // Extra margin on the linearized rows so QP-tolerance-level inexactness
  // cannot leave the iterate sitting just past an active bound.
  double constraint_margin = 1e-6;
};

enum class ScpStatus { Converged, MaxIterations, InfeasibleSubproblem };

struct ScpIterate {
  double objective = 0.0;       // true nonlinear cost after the update
  double constraint_violation = 0.0;  // max(0, -min margin) after the update
  double step_norm = 0.0;       // ||delta ubar||_inf of the update
};

struct ScpResult {
  ControlSequence ubar;
  std::vector<ScpIterate> trace;
  ScpStatus status = ScpStatus::MaxIterations;
  double max_violation = 0.0;   // only meaningful for infeasible subproblems
};

/// Sequential convex programming for the robust OCP: linearize the nominal
/// cost and the tightened constraints around the incumbent ubar, solve the
/// trust-region QP in the update, repeat until the update stalls.
inline ScpResult scp_solve(const OcpSpec& spec, const Vec& x0,
                           const ControlSequence& ubar_init,
                           const ScpConfig& cfg, int threads = 0) {
  spec.validate();
  const int K = spec.horizon_steps();
  const int nu = 3 * K;
  if (int(ubar_init.size()) != K) {
    throw ConfigError("scp_solve: ubar_init must have K segments");
  }

  ScpResult res;
  res.ubar = ubar_init;
  const double fd_step = 1e-6;
  for (int it = 0; it < cfg.max_iterations; ++it) {
    const auto nodes = nominal_rollout(spec, res.ubar, x0);
    const auto con = tightened_constraints(spec, res.ubar, x0, threads);

    // State sensitivities d x_k / d ubar by forward differences.
    std::vector<Mat> X(K + 1, Mat::Zero(7, nu));
    std::vector<std::vector<Vec>> pert(nu);
    parallel_for(
        nu,
        [&](int c) {
          ControlSequence up = res.ubar;
          up[c / 3][c % 3] += fd_step;
          pert[c] = nominal_rollout(spec, up, x0);
        },
        threads);
    for (int c = 0; c < nu; ++c) {
      for (int k = 0; k <= K; ++k) {
        X[k].col(c) = (pert[c][k] - nodes[k]) / fd_step;
      }
    }

    Mat P = Mat::Zero(nu, nu);
    Vec q = Vec::Zero(nu);
    for (int k = 0; k <= K; ++k) {
      const double wk = (k == 0 || k == K) ? 0.5 * spec.dt : spec.dt;
      P += 2.0 * wk * X[k].transpose() * spec.Q * X[k];
      q += 2.0 * wk * X[k].transpose() * (spec.Q * (nodes[k] - spec.x_ref));
    }
    for (int k = 0; k < K; ++k) {
      P.block<3, 3>(3 * k, 3 * k) += 2.0 * spec.dt * spec.R;
      q.segment<3>(3 * k) += 2.0 * spec.dt * spec.R * res.ubar[k];
    }
    P += 1e-9 * Mat::Identity(nu, nu);

    // Rows whose margin cannot close within the trust region are dropped;
    // any |delta| <= trust_radius keeps them satisfied.
    std::vector<int> active;
    for (int i = 0; i < con.values.size(); ++i) {
      const double reach = con.jacobian.row(i).cwiseAbs().sum() * cfg.trust_radius;
      if (con.values[i] < reach + cfg.constraint_margin) active.push_back(i);
    }
    const int rows = static_cast<int>(active.size());
    Mat A(rows + nu, nu);
    Vec l(rows + nu), u(rows + nu);
    for (int r = 0; r < rows; ++r) {
      A.row(r) = con.jacobian.row(active[r]);
      l[r] = -con.values[active[r]] + cfg.constraint_margin;
      u[r] = std::numeric_limits<double>::infinity();
    }
    A.bottomRows(nu) = Mat::Identity(nu, nu);
    l.tail(nu).setConstant(-cfg.trust_radius);
    u.tail(nu).setConstant(cfg.trust_radius);

    QpSettings qp_settings;
    qp_settings.tol = cfg.qp_tol;
    qp_settings.max_iterations = cfg.qp_max_iterations;
    const QpResult qp = solve_qp(P, q, A, l, u, qp_settings);
    if (qp.status != QpStatus::Solved) {
      res.status = ScpStatus::InfeasibleSubproblem;
      res.max_violation = std::max(0.0, -con.values.minCoeff());
      if (res.trace.empty()) {
        res.trace.push_back({ocp_cost(spec, res.ubar, nodes),
                             res.max_violation, 0.0});
      }
      return res;
    }

    for (int k = 0; k < K; ++k) res.ubar[k] += qp.x.segment<3>(3 * k);
    const double step = qp.x.cwiseAbs().maxCoeff();

    const auto new_nodes = nominal_rollout(spec, res.ubar, x0);
    const Vec new_margins = detail::constraint_values(spec, res.ubar,
                                                      Vec(x0.tail(3)), threads);
    res.trace.push_back({ocp_cost(spec, res.ubar, new_nodes),
                         std::max(0.0, -new_margins.minCoeff()), step});
    if (step < cfg.tol) {
      res.status = ScpStatus::Converged;
      return res;
    }
  }
  res.status = ScpStatus::MaxIterations;
  return res;
}

}  // namespace chreach
