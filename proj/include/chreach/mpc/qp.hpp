#pragma once

#include "chreach/core.hpp"

#include <Eigen/Cholesky>

#include <algorithm>
#include <cmath>
#include <limits>

namespace chreach {

enum class QpStatus { Solved, MaxIterations };

struct QpResult {
  Vec x;
  Vec y;  // multipliers for l <= A x <= u
  QpStatus status = QpStatus::MaxIterations;
  int iterations = 0;
  double primal_residual = 0.0;
  double dual_residual = 0.0;
};

struct QpSettings {
  double tol = 1e-6;
  int max_iterations = 10000;
  double sigma = 1e-6;
  double alpha = 1.6;
  int check_interval = 25;
  int ruiz_iterations = 10;
};

/// Operator-splitting solver for min 0.5 x^T P x + q^T x s.t. l <= A x <= u
/// with P positive semidefinite (dense, small problems). Ruiz equilibration
/// of the stacked data, splitting on z = Ax, over-relaxation, and periodic
/// rho adaptation from the unscaled residual ratio.
inline QpResult solve_qp(const Mat& P_in, const Vec& q_in, const Mat& A_in,
                         const Vec& l_in, const Vec& u_in,
                         const QpSettings& settings = {}) {
  const int n = static_cast<int>(q_in.size());
  const int m = static_cast<int>(l_in.size());
  if (P_in.rows() != n || P_in.cols() != n || A_in.cols() != n ||
      A_in.rows() != m || u_in.size() != m) {
    throw ConfigError("solve_qp: dimension mismatch");
  }
  for (int i = 0; i < m; ++i) {
    if (l_in[i] > u_in[i]) {
      throw ConfigError("solve_qp: l > u in row " + std::to_string(i));
    }
  }

  // Modified Ruiz equilibration on [P A^T; A 0] plus cost normalization.
  Mat P = P_in;
  Mat A = A_in;
  Vec q = q_in;
  Vec col_scale = Vec::Ones(n);
  Vec row_scale = Vec::Ones(m);
  for (int it = 0; it < settings.ruiz_iterations; ++it) {
    Vec gamma(n), delta(m);
    for (int j = 0; j < n; ++j) {
      const double cp = P.col(j).cwiseAbs().maxCoeff();
      const double ca = m > 0 ? A.col(j).cwiseAbs().maxCoeff() : 0.0;
      const double c = std::max(cp, ca);
      gamma[j] = c > 0.0 ? 1.0 / std::sqrt(c) : 1.0;
    }
    for (int i = 0; i < m; ++i) {
      const double r = A.row(i).cwiseAbs().maxCoeff();
      delta[i] = r > 0.0 ? 1.0 / std::sqrt(r) : 1.0;
    }
    P = gamma.asDiagonal() * P * gamma.asDiagonal();
    q = gamma.asDiagonal() * q;
    A = delta.asDiagonal() * A * gamma.asDiagonal();
    col_scale = col_scale.cwiseProduct(gamma);
    row_scale = row_scale.cwiseProduct(delta);
  }
  double cost_scale = 1.0;
  {
    double pmax = P.cwiseAbs().maxCoeff();
    double qmax = q.cwiseAbs().maxCoeff();
    const double s = std::max(pmax, qmax);
    if (s > 0.0) {
      cost_scale = 1.0 / s;
      P *= cost_scale;
      q *= cost_scale;
    }
  }
  Vec l(m), u(m);
  for (int i = 0; i < m; ++i) {
    l[i] = std::isfinite(l_in[i]) ? l_in[i] * row_scale[i] : l_in[i];
    u[i] = std::isfinite(u_in[i]) ? u_in[i] * row_scale[i] : u_in[i];
  }

  double rho = 0.1;
  Eigen::LDLT<Mat> kkt;
  auto refactor = [&]() {
    kkt.compute(P + settings.sigma * Mat::Identity(n, n) +
                rho * A.transpose() * A);
  };
  refactor();

  Vec x = Vec::Zero(n);
  Vec z = Vec::Zero(m);
  Vec y = Vec::Zero(m);
  QpResult res;
  auto unscaled_x = [&]() { return Vec(col_scale.asDiagonal() * x); };
  auto unscaled_y = [&]() {
    return Vec(row_scale.asDiagonal() * y / cost_scale);
  };
  for (int it = 0; it < settings.max_iterations; ++it) {
    const Vec rhs = settings.sigma * x - q + A.transpose() * (rho * z - y);
    const Vec x_tilde = kkt.solve(rhs);
    const Vec z_tilde = A * x_tilde;
    x = settings.alpha * x_tilde + (1.0 - settings.alpha) * x;
    const Vec z_relaxed = settings.alpha * z_tilde + (1.0 - settings.alpha) * z;
    const Vec z_new = (z_relaxed + y / rho).cwiseMax(l).cwiseMin(u);
    y += rho * (z_relaxed - z_new);
    z = z_new;
    res.iterations = it + 1;

    if ((it + 1) % settings.check_interval != 0 &&
        it + 1 != settings.max_iterations) {
      continue;
    }
    // Residuals in the original (unscaled) problem.
    const Vec xu = unscaled_x();
    const Vec yu = unscaled_y();
    const Vec ax = A_in * xu;
    const Vec zu = row_scale.cwiseInverse().asDiagonal() * z;
    const double r_prim = (ax - zu).cwiseAbs().maxCoeff();
    const double r_dual =
        (P_in * xu + q_in + A_in.transpose() * yu).cwiseAbs().maxCoeff();
    res.primal_residual = r_prim;
    res.dual_residual = r_dual;
    const double prim_scale =
        std::max({ax.cwiseAbs().maxCoeff(), zu.cwiseAbs().maxCoeff(), 1.0});
    const double dual_scale =
        std::max({(P_in * xu).cwiseAbs().maxCoeff(), q_in.cwiseAbs().maxCoeff(),
                  (A_in.transpose() * yu).cwiseAbs().maxCoeff(), 1.0});
    if (r_prim <= settings.tol * prim_scale &&
        r_dual <= settings.tol * dual_scale) {
      res.status = QpStatus::Solved;
      break;
    }
    const double ratio =
        (r_prim / prim_scale) / std::max(r_dual / dual_scale, 1e-16);
    const double scale = std::sqrt(ratio);
    if (scale > 5.0 || scale < 0.2) {
      rho = std::clamp(rho * scale, 1e-6, 1e6);
      refactor();
    }
  }
  res.x = unscaled_x();
  res.y = unscaled_y();
  return res;
}

}  // namespace chreach
