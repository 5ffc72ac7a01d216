#pragma once

#include "chreach/core.hpp"
#include "chreach/geometry/hull.hpp"
#include "chreach/geometry/sets.hpp"
#include "chreach/parallel.hpp"
#include "chreach/reach/integrate.hpp"
#include "chreach/systems/system.hpp"

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace chreach {

/// Set of initial conditions: a single state or a smooth strictly convex set.
class InitialSetSpec {
 public:
  static InitialSetSpec singleton(Vec x0) {
    InitialSetSpec s;
    s.x0_ = std::move(x0);
    return s;
  }
  static InitialSetSpec ovaloid(SmoothConvexSet set) {
    InitialSetSpec s;
    s.set_ = std::move(set);
    return s;
  }

  bool is_singleton() const { return x0_.has_value(); }
  const Vec& point() const { return *x0_; }
  const SmoothConvexSet& set() const { return *set_; }
  int dim() const { return is_singleton() ? int(x0_->size()) : set_->dim(); }

 private:
  std::optional<Vec> x0_;
  std::optional<SmoothConvexSet> set_;
};

struct AugmentedRhsResult {
  Vec xdot;
  Vec pdot;
  Vec w;
};

/// Right-hand side of the augmented state-costate system: the disturbance is
/// the boundary point of W minimizing p^T g w, selected through the inverse
/// Gauss map, and the costate follows pdot = -(grad f + grad g w)^T p.
inline AugmentedRhsResult augmented_rhs(const SystemDef& sys,
                                        const SmoothConvexSet& W, double t,
                                        const Vec& x, const Vec& p) {
  if (p.norm() <= 1e-12) {
    throw NumericalError("augmented_rhs: vanishing costate");
  }
  const Mat g = sys.g(t, x);
  const Vec gtp = g.transpose() * p;
  const double gtp_norm = gtp.norm();
  if (gtp_norm < 1e-12) {
    throw NumericalError(
        "augmented_rhs: singular costate, g(t,x)^T p vanished "
        "(assumption violation)");
  }
  const Direction dir(Vec(-gtp / gtp_norm));
  AugmentedRhsResult out;
  out.w = W.support_point(dir);
  out.xdot = sys.f(t, x) + g * out.w;
  out.pdot = -(sys.jac_f(t, x) + sys.jac_g_times(t, x, out.w)).transpose() * p;
  return out;
}

/// Initial condition of the augmented system for a direction d0: p(0) = d0
/// and x(0) either the fixed initial state or the boundary point of X0 with
/// outward normal -d0.
inline std::pair<Vec, Vec> initial_pair(const Direction& d0,
                                        const InitialSetSpec& X0) {
  if (X0.is_singleton()) return {X0.point(), d0.vec()};
  return {X0.set().inverse_gauss_map(Direction(Vec(-d0.vec()))), d0.vec()};
}

/// One extremal trajectory: states, costates, and boundary disturbances on
/// the grid, plus the per-stage disturbances actually applied by RK4 so the
/// state trajectory can be replayed from the disturbance signal alone.
struct ExtremalTrajectory {
  TimeGrid grid;
  Vec d0;
  std::vector<Vec> x;
  std::vector<Vec> p;
  std::vector<Vec> w;
  // stage_w[k] holds the four RK4 stage disturbances of step k.
  std::vector<std::array<Vec, 4>> stage_w;
};

inline ExtremalTrajectory extremal_trajectory(const SystemDef& sys,
                                              const SmoothConvexSet& W,
                                              const InitialSetSpec& X0,
                                              const Direction& d0,
                                              const TimeGrid& grid) {
  if (W.dim() != sys.m) {
    throw ConfigError("extremal_trajectory: W dimension != m");
  }
  if (sys.n != sys.m) {
    throw ConfigError(
        "extremal_trajectory: requires a square system (n = m); use the "
        "relaxation schemes otherwise");
  }
  ExtremalTrajectory traj;
  traj.grid = grid;
  traj.d0 = d0.vec();
  traj.x.reserve(grid.nodes());
  traj.p.reserve(grid.nodes());
  traj.w.reserve(grid.nodes());
  traj.stage_w.reserve(grid.steps);

  auto [x, p] = initial_pair(d0, X0);
  const double h = grid.h();
  auto record_node = [&](double t, const Vec& xn, const Vec& pn) {
    traj.x.push_back(xn);
    traj.p.push_back(pn);
    traj.w.push_back(augmented_rhs(sys, W, t, xn, pn).w);
  };
  record_node(grid.t0, x, p);
  for (int k = 0; k < grid.steps; ++k) {
    const double t = grid.t(k);
    std::array<Vec, 4> stages;
    auto eval = [&](int s, double ts, const Vec& xs, const Vec& ps) {
      auto r = augmented_rhs(sys, W, ts, xs, ps);
      stages[s] = r.w;
      return std::make_pair(r.xdot, r.pdot);
    };
    const auto [xd1, pd1] = eval(0, t, x, p);
    const auto [xd2, pd2] = eval(1, t + 0.5 * h, x + 0.5 * h * xd1, p + 0.5 * h * pd1);
    const auto [xd3, pd3] = eval(2, t + 0.5 * h, x + 0.5 * h * xd2, p + 0.5 * h * pd2);
    const auto [xd4, pd4] = eval(3, t + h, x + h * xd3, p + h * pd3);
    x += (h / 6.0) * (xd1 + 2.0 * xd2 + 2.0 * xd3 + xd4);
    p += (h / 6.0) * (pd1 + 2.0 * pd2 + 2.0 * pd3 + pd4);
    if (!all_finite(x) || !all_finite(p)) {
      throw NumericalError("extremal_trajectory: divergence at node " +
                           std::to_string(k + 1));
    }
    const double pn = p.norm();
    if (pn < 1e-8 || pn > 1e8) {
      throw NumericalError("extremal_trajectory: costate norm left [1e-8, 1e8]");
    }
    traj.stage_w.push_back(std::move(stages));
    record_node(grid.t(k + 1), x, p);
  }
  return traj;
}

/// Re-integrates the state equation alone, driven by the recorded stage
/// disturbances. Exactness of the replay certifies that every node state is
/// reachable by an explicit admissible disturbance signal.
inline std::vector<Vec> replay_trajectory(const SystemDef& sys,
                                          const ExtremalTrajectory& traj) {
  std::vector<Vec> out;
  out.reserve(traj.grid.nodes());
  Vec x = traj.x.front();
  out.push_back(x);
  const double h = traj.grid.h();
  for (int k = 0; k < traj.grid.steps; ++k) {
    const double t = traj.grid.t(k);
    const auto& sw = traj.stage_w[k];
    auto xdot = [&](double ts, const Vec& xs, const Vec& ws) {
      return Vec(sys.f(ts, xs) + sys.g(ts, xs) * ws);
    };
    const Vec k1 = xdot(t, x, sw[0]);
    const Vec k2 = xdot(t + 0.5 * h, x + 0.5 * h * k1, sw[1]);
    const Vec k3 = xdot(t + 0.5 * h, x + 0.5 * h * k2, sw[2]);
    const Vec k4 = xdot(t + h, x + h * k3, sw[3]);
    x += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    out.push_back(x);
  }
  return out;
}

/// Per-node convex hull estimates with padding and sampling provenance.
struct HullEstimate {
  TimeGrid grid;
  std::vector<HullVertices> hulls;  // one per grid node
  std::vector<double> eps;          // padding per node (0 until bounds attach)
  int sample_count = 0;
  std::string scheme;
  std::uint64_t seed = 0;

  const HullVertices& at(int node) const { return hulls.at(node); }

  /// Outer-set membership test: within eps_t of the stored vertex hull.
  bool outer_contains(int node, const Vec& x, double slack = 0.0) const {
    return distance_to_hull(x, hulls.at(node)) <= eps.at(node) + slack;
  }
};

/// Algorithm: integrate the augmented ODE once per direction and take
/// per-node hulls of the extremal states. Integrations run concurrently;
/// aggregation is ordered by direction index so output is deterministic.
inline HullEstimate estimate_hulls(const SystemDef& sys,
                                   const SmoothConvexSet& W,
                                   const InitialSetSpec& X0,
                                   const std::vector<Direction>& dirs,
                                   const TimeGrid& grid, int threads = 0) {
  if (dirs.empty()) throw ConfigError("estimate_hulls: no directions");
  std::vector<std::vector<Vec>> states(dirs.size());
  std::vector<std::string> failures(dirs.size());
  parallel_for(
      static_cast<int>(dirs.size()),
      [&](int i) {
        try {
          states[i] = extremal_trajectory(sys, W, X0, dirs[i], grid).x;
        } catch (const std::exception& e) {
          failures[i] = e.what();
        }
      },
      threads);
  for (std::size_t i = 0; i < dirs.size(); ++i) {
    if (!failures[i].empty()) {
      throw NumericalError("estimate_hulls: direction " + std::to_string(i) +
                           " failed: " + failures[i]);
    }
  }
  HullEstimate est;
  est.grid = grid;
  est.sample_count = static_cast<int>(dirs.size());
  est.hulls.reserve(grid.nodes());
  est.eps.assign(grid.nodes(), 0.0);
  for (int k = 0; k < grid.nodes(); ++k) {
    std::vector<Vec> cloud;
    cloud.reserve(dirs.size());
    for (std::size_t i = 0; i < dirs.size(); ++i) cloud.push_back(states[i][k]);
    if (sys.n == 2) {
      est.hulls.push_back(convex_hull_2d(cloud));
    } else {
      est.hulls.push_back(HullVertices{std::move(cloud), false});
    }
  }
  return est;
}

}  // namespace chreach
