#pragma once

#include "chreach/baselines/discrete.hpp"
#include "chreach/core.hpp"
#include "chreach/rng.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <vector>

namespace chreach {

/// Ellipsoidal tube {y : (y - center_k)^T Q_k^{-1} (y - center_k) <= 1}
/// around a nominal discrete trajectory; Q_0 = 0.
struct EllipsoidTube {
  std::vector<Vec> centers;
  std::vector<Mat> shapes;
};

/// Lipschitz constant of grad_x fbar estimated from sampled Jacobian
/// differences over a box around the nominal trajectory.
inline double estimate_step_hessian_bound(const DiscreteSystem& dsys,
                                          const std::vector<Vec>& nominal,
                                          double box_radius, int probes = 1000,
                                          std::uint64_t seed = 11) {
  Rng rng(seed);
  const int n = dsys.n;
  const double h = 1e-5;
  auto jac = [&](int k, const Vec& x) {
    Mat j(n, n);
    for (int c = 0; c < n; ++c) {
      Vec xp = x, xm = x;
      xp[c] += h;
      xm[c] -= h;
      j.col(c) = (dsys.step_nominal(k, xp) - dsys.step_nominal(k, xm)) / (2.0 * h);
    }
    return j;
  };
  double worst = 0.0;
  for (int p = 0; p < probes; ++p) {
    const int k = int(rng.next_u64() % std::uint64_t(dsys.horizon_steps));
    Vec a = nominal[k], b = nominal[k];
    for (int i = 0; i < n; ++i) {
      a[i] += rng.uniform(-box_radius, box_radius);
      b[i] += rng.uniform(-box_radius, box_radius);
    }
    const double dist = (a - b).norm();
    if (dist <= 1e-12) continue;
    worst = std::max(worst, (jac(k, a) - jac(k, b)).operatorNorm() / dist);
  }
  return worst;
}

/// Lipschitz-remainder ellipsoid recursion:
///   Q_{k+1} = (c+1)/c * Qnom_k + (1+c) * Qlip_k,
///   Qnom_k  = A_k Q_k A_k^T,  A_k = grad_x fbar at the nominal,
///   Qlip_k  = 3 (wbar + H/2 * lam_max(Q_k))^2 I,
///   c^2     = trace(Qnom_k) / trace(Qlip_k),
/// with the c -> 0 limit (Q_k = 0) giving Q_{k+1} = Qlip_k.
inline EllipsoidTube lipschitz_tube(const DiscreteSystem& dsys, const Vec& x0,
                                    double wbar, double Hbar) {
  if (wbar < 0.0 || Hbar < 0.0) {
    throw ConfigError("lipschitz_tube: need wbar >= 0 and Hbar >= 0");
  }
  const int n = dsys.n;
  const double h = 1e-5;
  EllipsoidTube tube;
  tube.centers.push_back(x0);
  tube.shapes.push_back(Mat::Zero(n, n));
  Vec xk = x0;
  Mat Q = Mat::Zero(n, n);
  for (int k = 0; k < dsys.horizon_steps; ++k) {
    Mat A(n, n);
    for (int c = 0; c < n; ++c) {
      Vec xp = xk, xm = xk;
      xp[c] += h;
      xm[c] -= h;
      A.col(c) = (dsys.step_nominal(k, xp) - dsys.step_nominal(k, xm)) / (2.0 * h);
    }
    const Mat Qnom = A * Q * A.transpose();
    const double lam_max =
        Q.isZero(0.0) ? 0.0
                      : Eigen::SelfAdjointEigenSolver<Mat>(Q).eigenvalues().maxCoeff();
    const double lip_scale = 3.0 * std::pow(wbar + 0.5 * Hbar * lam_max, 2);
    const Mat Qlip = lip_scale * Mat::Identity(n, n);
    if (Qlip.trace() <= 0.0) {
      Q = Qnom;  // no disturbance/remainder term: pure linear propagation
    } else {
      const double c = std::sqrt(std::max(Qnom.trace() / Qlip.trace(), 0.0));
      // c -> 0 limit: the (c+1)/c * Qnom term vanishes since Qnom is O(c^2).
      Q = c > 1e-12 ? Mat((c + 1.0) / c * Qnom + (1.0 + c) * Qlip) : Qlip;
    }
    xk = dsys.step_nominal(k, xk);
    tube.centers.push_back(xk);
    tube.shapes.push_back(Q);
  }
  return tube;
}

/// Tube membership (y - center)^T Q^{-1} (y - center) <= 1; the k = 0 shell
/// is the nominal point itself.
inline bool tube_contains(const EllipsoidTube& tube, int k, const Vec& y,
                          double tol = 1e-9) {
  const Vec r = y - tube.centers.at(k);
  const Mat& Q = tube.shapes.at(k);
  if (Q.isZero(0.0)) return r.norm() <= tol;
  return r.dot(Q.ldlt().solve(r)) <= 1.0 + tol;
}

}  // namespace chreach
