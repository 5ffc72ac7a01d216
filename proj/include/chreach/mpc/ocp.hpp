#pragma once

#include "chreach/core.hpp"
#include "chreach/geometry/sets.hpp"
#include "chreach/geometry/sphere.hpp"
#include "chreach/parallel.hpp"
#include "chreach/reach/error_bounds.hpp"
#include "chreach/reach/extremal.hpp"
#include "chreach/systems/benchmarks.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <utility>
#include <vector>

namespace chreach {

/// Robust OCP data for the spacecraft attitude task: quadratic tracking cost
/// over (q, w), infinity-norm limits on w and on the applied control, and
/// reachability-tightened margins eps_t at the constraint nodes.
struct OcpSpec {
  double T = 10.0;
  double dt = 1.0;
  Mat Q;                 // 7x7 stage weight
  Mat R;                 // 3x3 control weight
  Vec x_ref;             // reference (q, w)
  double omega_max = 0.1;
  double u_max = 0.1;
  Mat K_fb;              // feedback gain, u = ubar + K w
  Vec J_diag;            // inertia diagonal
  SmoothConvexSet W;     // disturbance set (over R^3)
  std::vector<Direction> dirs;  // extremal sampling directions
  std::vector<double> eps;      // tightening per constraint node (K+1)
  int substeps = 5;             // RK4 substeps per dt in all rollouts

  int horizon_steps() const {
    const double k = T / dt;
    const int ki = int(std::lround(k));
    if (std::abs(k - double(ki)) > 1e-9 || ki < 1) {
      throw ConfigError("OcpSpec: T/dt must be a positive integer");
    }
    return ki;
  }

  void validate() const {
    const int K = horizon_steps();
    if (int(eps.size()) != K + 1) {
      throw ConfigError("OcpSpec: eps must have one entry per node");
    }
    for (double e : eps) {
      if (!(e >= 0.0)) throw ConfigError("OcpSpec: eps must be >= 0");
      if (e >= omega_max || e >= u_max) {
        throw ConfigError("OcpSpec: tightening leaves an empty constraint box");
      }
    }
  }
};

using ControlSequence = std::vector<Vec>;  // one 3-vector per dt segment

inline PiecewiseControl to_control(const OcpSpec& spec,
                                   const ControlSequence& ubar) {
  return PiecewiseControl(0.0, spec.dt, ubar);
}

/// Nominal closed-loop rollout of the full (q, w) state with w = 0; returns
/// states at the constraint nodes k*dt.
inline std::vector<Vec> nominal_rollout(const OcpSpec& spec,
                                        const ControlSequence& ubar,
                                        const Vec& x0) {
  const SystemDef sys = make_spacecraft_full(spec.J_diag, spec.K_fb,
                                             to_control(spec, ubar));
  const int K = spec.horizon_steps();
  const TimeGrid grid(0.0, spec.T, K * spec.substeps);
  const auto fine = rk4_integrate(
      [&](double t, const Vec& x) { return sys.f(t, x); }, grid, x0);
  std::vector<Vec> nodes;
  nodes.reserve(K + 1);
  for (int k = 0; k <= K; ++k) nodes.push_back(fine[k * spec.substeps]);
  return nodes;
}

/// Trapezoidal tracking cost plus rectangle-rule control effort.
inline double ocp_cost(const OcpSpec& spec, const ControlSequence& ubar,
                       const std::vector<Vec>& nodes) {
  const int K = spec.horizon_steps();
  double cost = 0.0;
  for (int k = 0; k <= K; ++k) {
    const Vec e = nodes[k] - spec.x_ref;
    const double wk = (k == 0 || k == K) ? 0.5 * spec.dt : spec.dt;
    cost += wk * e.dot(spec.Q * e);
  }
  for (int k = 0; k < K; ++k) cost += spec.dt * ubar[k].dot(spec.R * ubar[k]);
  return cost;
}

struct ConstraintEval {
  Vec values;    // stacked margins, feasible iff all >= 0
  Mat jacobian;  // d values / d ubar (row-major over the stacked margins)
};

namespace detail {

/// Stacked margins of the tightened box constraints. Layout per direction i,
/// node k, axis j: [w_upper, w_lower, u_upper, u_lower].
inline Vec constraint_values(const OcpSpec& spec, const ControlSequence& ubar,
                             const Vec& omega0, int threads = 0) {
  const int K = spec.horizon_steps();
  const int M = static_cast<int>(spec.dirs.size());
  const SystemDef sys = make_spacecraft_omega(spec.J_diag, spec.K_fb,
                                              to_control(spec, ubar));
  const InitialSetSpec X0 = InitialSetSpec::singleton(omega0);
  const TimeGrid grid(0.0, spec.T, K * spec.substeps);
  std::vector<std::vector<Vec>> omega(std::max(M, 1));
  if (M == 0) {
    // No extremal sampling: the constraints degrade to the nominal rollout.
    omega[0] = rk4_integrate(
        [&](double t, const Vec& w) { return sys.f(t, w); }, grid, omega0);
  } else {
    parallel_for(
        M,
        [&](int i) {
          omega[i] = extremal_trajectory(sys, spec.W, X0, spec.dirs[i], grid).x;
        },
        threads);
  }
  const int rows_m = std::max(M, 1);

  Vec values(rows_m * (K + 1) * 3 * 4);
  int idx = 0;
  for (int i = 0; i < rows_m; ++i) {
    for (int k = 0; k <= K; ++k) {
      const Vec& w = omega[i][k * spec.substeps];
      const Vec& uk = ubar[std::min(k, K - 1)];
      const Vec u = uk + spec.K_fb * w;
      for (int j = 0; j < 3; ++j) {
        values[idx++] = (spec.omega_max - spec.eps[k]) - w[j];
        values[idx++] = w[j] + (spec.omega_max - spec.eps[k]);
        values[idx++] = (spec.u_max - spec.eps[k]) - u[j];
        values[idx++] = u[j] + (spec.u_max - spec.eps[k]);
      }
    }
  }
  return values;
}

}  // namespace detail

/// Tightened constraint margins of the robust OCP and their Jacobian with
/// respect to the stacked ubar entries (forward differences, step 1e-6).
inline ConstraintEval tightened_constraints(const OcpSpec& spec,
                                            const ControlSequence& ubar,
                                            const Vec& x0, int threads = 0) {
  spec.validate();
  const int K = spec.horizon_steps();
  if (int(ubar.size()) != K) {
    throw ConfigError("tightened_constraints: ubar must have K segments");
  }
  const Vec omega0 = x0.tail(3);
  ConstraintEval out;
  out.values = detail::constraint_values(spec, ubar, omega0, threads);
  const int rows = static_cast<int>(out.values.size());
  const int nu = 3 * K;
  out.jacobian = Mat::Zero(rows, nu);
  const double h = 1e-6;
  std::vector<Vec> columns(nu);
  parallel_for(
      nu,
      [&](int c) {
        ControlSequence up = ubar;
        up[c / 3][c % 3] += h;
        // Inner rollouts stay serial here; parallelism is over the columns.
        columns[c] = (detail::constraint_values(spec, up, omega0, 1) -
                      out.values) /
                     h;
      },
      threads);
  for (int c = 0; c < nu; ++c) out.jacobian.col(c) = columns[c];
  return out;
}

struct TighteningReport {
  std::vector<double> eps;        // chosen per node: min(naive, quadratic)
  std::vector<double> eps_naive;
  std::vector<double> eps_quad;
  double delta = 0.0;             // measured covering radius of the dirs
  double max_L_drift = 0.0;       // relative L variation across ubar probes
  int lipschitz_probes = 0;
};

/// Computes the per-node tightenings from sampled Lipschitz estimates of the
/// extremal flow, maximizing over random admissible ubar probes and
/// monitoring the drift of L_t across them.
inline TighteningReport compute_tightenings(const OcpSpec& spec_wo_eps,
                                            const Vec& x0, int lipschitz_probes,
                                            int ubar_probes, std::uint64_t seed,
                                            int threads = 0) {
  const int K = spec_wo_eps.horizon_steps();
  const Vec omega0 = x0.tail(3);
  const TimeGrid grid(0.0, spec_wo_eps.T, K * spec_wo_eps.substeps);
  const double delta =
      covering_radius(spec_wo_eps.dirs, 20000, Rng::derive(seed, 1));

  std::vector<double> L(grid.nodes(), 0.0), H(grid.nodes(), 0.0);
  std::vector<double> L_final;
  Rng rng(Rng::derive(seed, 2));
  for (int p = 0; p < ubar_probes; ++p) {
    ControlSequence ubar(K, Vec::Zero(3));
    if (p > 0) {
      for (auto& u : ubar) {
        for (int j = 0; j < 3; ++j) u[j] = rng.uniform(-0.05, 0.05);
      }
    }
    const SystemDef sys = make_spacecraft_omega(
        spec_wo_eps.J_diag, spec_wo_eps.K_fb, to_control(spec_wo_eps, ubar));
    const auto lip = lipschitz_estimates(sys, spec_wo_eps.W,
                                         InitialSetSpec::singleton(omega0),
                                         grid, lipschitz_probes,
                                         Rng::derive(seed, 3 + p), threads);
    for (int k = 0; k < grid.nodes(); ++k) {
      L[k] = std::max(L[k], lip.L[k]);
      H[k] = std::max(H[k], lip.H[k]);
    }
    L_final.push_back(lip.L.back());
  }
  const double lmax = *std::max_element(L_final.begin(), L_final.end());
  const double lmin = *std::min_element(L_final.begin(), L_final.end());
  const double drift = lmax > 0.0 ? (lmax - lmin) / lmax : 0.0;
  if (drift >= 0.5) {
    throw NumericalError(
        "compute_tightenings: L_t varies by >= 50% across ubar probes; "
        "per-instance tightening is not trustworthy here");
  }

  TighteningReport rep;
  rep.delta = delta;
  rep.max_L_drift = drift;
  rep.lipschitz_probes = lipschitz_probes;
  rep.eps.resize(K + 1);
  rep.eps_naive.resize(K + 1);
  rep.eps_quad.resize(K + 1);
  for (int k = 0; k <= K; ++k) {
    const int fine = k * spec_wo_eps.substeps;
    rep.eps_naive[k] = L[fine] * delta;
    rep.eps_quad[k] = 0.5 * (L[fine] + H[fine]) * delta * delta;
    rep.eps[k] = std::min(rep.eps_naive[k], rep.eps_quad[k]);
  }
  return rep;
}

/// Feasible initial guess for the OCP: cancel the feedback term along the
/// zero-input nominal rollout, so the control rows start near zero applied
/// control instead of |K w(0)|, which can exceed the limit.
inline ControlSequence feedback_cancel_init(const OcpSpec& spec, const Vec& x0) {
  const int K = spec.horizon_steps();
  const SystemDef sys = make_spacecraft_omega(
      spec.J_diag, spec.K_fb,
      PiecewiseControl::constant(Vec::Zero(3), 0.0, spec.T));
  const TimeGrid grid(0.0, spec.T, K * spec.substeps);
  const auto omega = rk4_integrate(
      [&](double t, const Vec& w) { return sys.f(t, w); }, grid, Vec(x0.tail(3)));
  ControlSequence ubar(K, Vec::Zero(3));
  for (int k = 0; k < K; ++k) {
    ubar[k] = -spec.K_fb * omega[k * spec.substeps];
  }
  return ubar;
}

/// Paper-scale spacecraft instance: J = diag(5,2,1), K = -diag(5,2,1),
/// W = B(0, 1e-2), T = 10 s, dt = 1 s, Q = 10 I7, R = I3, x_ref = identity
/// attitude at rest, M Fibonacci directions. Tightenings are filled in by
/// compute_tightenings.
inline OcpSpec make_spacecraft_ocp(int M = 50) {
  Vec jd(3);
  jd << 5.0, 2.0, 1.0;
  Vec xr = Vec::Zero(7);
  xr[0] = 1.0;
  OcpSpec spec{
      /*T=*/10.0,
      /*dt=*/1.0,
      /*Q=*/10.0 * Mat::Identity(7, 7),
      /*R=*/Mat::Identity(3, 3),
      /*x_ref=*/xr,
      /*omega_max=*/0.1,
      /*u_max=*/0.1,
      /*K_fb=*/Mat(Vec(-jd).asDiagonal()),
      /*J_diag=*/jd,
      /*W=*/SmoothConvexSet::ball(Vec::Zero(3), 1e-2),
      /*dirs=*/sample_sphere(3, M, SphereScheme::Fibonacci),
      /*eps=*/std::vector<double>(11, 0.0),
      /*substeps=*/5};
  return spec;
}

}  // namespace chreach
