#pragma once

#include "chreach/core.hpp"
#include "chreach/geometry/sphere.hpp"
#include "chreach/parallel.hpp"
#include "chreach/reach/extremal.hpp"

#include <cstdint>
#include <limits>
#include <vector>

namespace chreach {

/// Sampled per-node estimates of the Lipschitz constants of F(., t) and of
/// its differential.
struct LipschitzEstimates {
  std::vector<double> L;  // max_j ||dF(d_j, t)|| per node
  std::vector<double> H;  // max over nearby probe pairs of the dF difference
  int probe_count = 0;
};

/// Estimates L_t and H_t by finite differences of the extremal flow in
/// tangent directions of the sphere (step 1e-5), maximizing over a probe set
/// of directions; H_t comes from differences of dF between nearest probes.
inline LipschitzEstimates lipschitz_estimates(
    const SystemDef& sys, const SmoothConvexSet& W, const InitialSetSpec& X0,
    const TimeGrid& grid, int probe_count = 1000, std::uint64_t seed = 0,
    int threads = 0) {
  if (probe_count < 2) throw ConfigError("lipschitz_estimates: need >= 2 probes");
  const int n = sys.n;
  const SphereScheme scheme = n == 2   ? SphereScheme::UniformAngle
                              : n == 3 ? SphereScheme::Fibonacci
                                       : SphereScheme::Random;
  const auto probes = sample_sphere(n, probe_count, scheme, seed);
  const double h_fd = 1e-5;
  const int nodes = grid.nodes();

  // dF at each probe, stored as the ambient n x n matrix dF * P with
  // P = I - d d^T, so differentials at nearby probes are comparable.
  std::vector<std::vector<Mat>> dF(probe_count,
                                   std::vector<Mat>(nodes, Mat::Zero(n, n)));
  parallel_for(
      probe_count,
      [&](int i) {
        const Mat basis = tangent_basis(probes[i]);
        std::vector<std::vector<Vec>> cols(n - 1);
        for (int j = 0; j < n - 1; ++j) {
          const Direction dp =
              Direction::normalized(probes[i].vec() + h_fd * basis.col(j));
          const Direction dm =
              Direction::normalized(probes[i].vec() - h_fd * basis.col(j));
          const auto xp = extremal_trajectory(sys, W, X0, dp, grid).x;
          const auto xm = extremal_trajectory(sys, W, X0, dm, grid).x;
          cols[j].resize(nodes);
          for (int k = 0; k < nodes; ++k) {
            cols[j][k] = (xp[k] - xm[k]) / (2.0 * h_fd);
          }
        }
        for (int k = 0; k < nodes; ++k) {
          Mat a = Mat::Zero(n, n);
          for (int j = 0; j < n - 1; ++j) {
            a += cols[j][k] * basis.col(j).transpose();
          }
          dF[i][k] = a;
        }
      },
      threads);

  LipschitzEstimates out;
  out.probe_count = probe_count;
  out.L.assign(nodes, 0.0);
  out.H.assign(nodes, 0.0);
  for (int i = 0; i < probe_count; ++i) {
    for (int k = 0; k < nodes; ++k) {
      out.L[k] = std::max(out.L[k], dF[i][k].operatorNorm());
    }
  }
  // Nearest-neighbor pairs for the second-order constant.
  for (int i = 0; i < probe_count; ++i) {
    int jbest = -1;
    double dbest = std::numeric_limits<double>::infinity();
    for (int j = 0; j < probe_count; ++j) {
      if (j == i) continue;
      const double d = (probes[i].vec() - probes[j].vec()).norm();
      if (d < dbest) {
        dbest = d;
        jbest = j;
      }
    }
    if (jbest < 0 || dbest <= 0.0) continue;
    for (int k = 0; k < nodes; ++k) {
      out.H[k] =
          std::max(out.H[k], (dF[i][k] - dF[jbest][k]).operatorNorm() / dbest);
    }
  }
  return out;
}

struct ErrorBounds {
  std::vector<double> eps_naive;  // L_t * delta
  std::vector<double> eps_quad;   // (L_t + H_t)/2 * delta^2
};

/// Covering-based padding: the first-order bound L_t*delta and the quadratic
/// bound (L_t + H_t)/2 * delta^2. Callers pick the minimum per node.
inline ErrorBounds error_bounds(const LipschitzEstimates& lip, double delta) {
  if (!(delta >= 0.0)) throw ConfigError("error_bounds: delta must be >= 0");
  ErrorBounds out;
  out.eps_naive.reserve(lip.L.size());
  out.eps_quad.reserve(lip.L.size());
  for (std::size_t k = 0; k < lip.L.size(); ++k) {
    out.eps_naive.push_back(lip.L[k] * delta);
    out.eps_quad.push_back(0.5 * (lip.L[k] + lip.H[k]) * delta * delta);
  }
  return out;
}

}  // namespace chreach
