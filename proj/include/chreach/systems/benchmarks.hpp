#pragma once

#include "chreach/core.hpp"
#include "chreach/systems/mlp.hpp"
#include "chreach/systems/system.hpp"

#include <cmath>
#include <memory>
#include <utility>

namespace chreach {

/// Cross-product matrix: S(w) v = w x v.
inline Mat skew(const Vec& w) {
  Mat s = Mat::Zero(3, 3);
  s(0, 1) = -w[2];
  s(0, 2) = w[1];
  s(1, 0) = w[2];
  s(1, 2) = -w[0];
  s(2, 0) = -w[1];
  s(2, 1) = w[0];
  return s;
}

/// Quaternion kinematics matrix (scalar-first): qdot = Omega(w) q.
inline Mat quat_omega(const Vec& w) {
  Mat o = Mat::Zero(4, 4);
  o.block<1, 3>(0, 1) = -0.5 * w.transpose();
  o.block<3, 1>(1, 0) = 0.5 * w;
  o.block<3, 3>(1, 1) = -0.5 * skew(w);
  return o;
}

/// Planar Dubins vehicle (p1, p2, theta) with constant disturbance matrix G.
inline SystemDef make_dubins(double speed, double turn_rate, const Mat& G) {
  if (G.rows() != 3 || (G.cols() != 2 && G.cols() != 3)) {
    throw ConfigError("make_dubins: G must be 3x2 or 3x3");
  }
  SystemDef sys;
  sys.n = 3;
  sys.m = static_cast<int>(G.cols());
  sys.label = "dubins";
  sys.f = [speed, turn_rate](double, const Vec& x) {
    Vec out(3);
    out << speed * std::cos(x[2]), speed * std::sin(x[2]), turn_rate;
    return out;
  };
  sys.g = [G](double, const Vec&) { return G; };
  sys.jac_f = [speed](double, const Vec& x) {
    Mat j = Mat::Zero(3, 3);
    j(0, 2) = -speed * std::sin(x[2]);
    j(1, 2) = speed * std::cos(x[2]);
    return j;
  };
  sys.jac_g_times = [](double, const Vec&, const Vec&) { return Mat::Zero(3, 3); };
  return sys;
}

namespace detail {

// C-infinity step: 0 for u <= 0, 1 for u >= 1.
inline double bump_psi(double u) { return u > 0.0 ? std::exp(-1.0 / u) : 0.0; }

inline double smooth_step(double u) {
  const double a = bump_psi(u);
  const double b = bump_psi(1.0 - u);
  return a / (a + b);
}

inline double smooth_step_grad(double u) {
  if (u <= 0.0 || u >= 1.0) return 0.0;
  const double a = bump_psi(u);
  const double b = bump_psi(1.0 - u);
  const double da = a / (u * u);
  const double db = b / ((1.0 - u) * (1.0 - u));
  return (da * b + a * db) / ((a + b) * (a + b));
}

struct PoleTerm {
  Vec value;
  Mat jac;
};

// s(rho) * (pole - x) / rho^3 with rho = ||x - pole||, cut off smoothly
// inside [cutoff, 2*cutoff].
inline PoleTerm pole_term(const Vec& x, const Vec& pole, double cutoff) {
  const Vec r = pole - x;
  const double rho = r.norm();
  const double u = (rho - cutoff) / cutoff;
  if (u <= 0.0) return {Vec::Zero(x.size()), Mat::Zero(x.size(), x.size())};
  const double s = smooth_step(u);
  const double ds = smooth_step_grad(u) / cutoff;
  const double r3 = rho * rho * rho;
  PoleTerm out;
  out.value = s * r / r3;
  out.jac = -ds / (r3 * rho) * (r * r.transpose()) +
            s * (-Mat::Identity(x.size(), x.size()) / r3 +
                 3.0 / (r3 * rho * rho) * (r * r.transpose()));
  return out;
}

}  // namespace detail

/// Planar attraction-repulsion field with smooth cutoffs at the two poles,
/// g = I2.
inline SystemDef make_attraction_repulsion(const Vec& x_attract,
                                           const Vec& x_repel,
                                           double cutoff_radius) {
  if (x_attract.size() != 2 || x_repel.size() != 2) {
    throw ConfigError("make_attraction_repulsion: poles must be planar");
  }
  if ((x_attract - x_repel).norm() == 0.0) {
    throw ConfigError("make_attraction_repulsion: poles must differ");
  }
  if (!(cutoff_radius > 0.0)) {
    throw ConfigError("make_attraction_repulsion: cutoff must be positive");
  }
  SystemDef sys;
  sys.n = 2;
  sys.m = 2;
  sys.label = "attraction-repulsion";
  sys.f = [x_attract, x_repel, cutoff_radius](double, const Vec& x) {
    return Vec(detail::pole_term(x, x_attract, cutoff_radius).value -
               detail::pole_term(x, x_repel, cutoff_radius).value);
  };
  sys.g = [](double, const Vec&) { return Mat::Identity(2, 2); };
  sys.jac_f = [x_attract, x_repel, cutoff_radius](double, const Vec& x) {
    return Mat(detail::pole_term(x, x_attract, cutoff_radius).jac -
               detail::pole_term(x, x_repel, cutoff_radius).jac);
  };
  sys.jac_g_times = [](double, const Vec&, const Vec&) { return Mat::Zero(2, 2); };
  return sys;
}

/// Closed-loop neural system xdot = A x + B pi(x) + w, g = I2.
inline SystemDef make_neural_loop(const Mat& A, const Mat& B,
                                  std::shared_ptr<const MlpPolicy> policy) {
  if (A.rows() != 2 || A.cols() != 2 || B.rows() != 2) {
    throw ConfigError("make_neural_loop: A must be 2x2 and B 2xk");
  }
  if (!policy || policy->input_dim() != 2 ||
      policy->output_dim() != B.cols()) {
    throw ConfigError("make_neural_loop: policy dimensions do not match B");
  }
  SystemDef sys;
  sys.n = 2;
  sys.m = 2;
  sys.label = "neural-loop";
  sys.f = [A, B, policy](double, const Vec& x) {
    return Vec(A * x + B * policy->eval(x));
  };
  sys.g = [](double, const Vec&) { return Mat::Identity(2, 2); };
  sys.jac_f = [A, B, policy](double, const Vec& x) {
    return Mat(A + B * policy->jacobian(x));
  };
  sys.jac_g_times = [](double, const Vec&, const Vec&) { return Mat::Zero(2, 2); };
  return sys;
}

/// Closed-loop angular-velocity subsystem of the rigid spacecraft:
/// wdot = J^{-1}(ubar(t) + K w - S(w) J w), g = J^{-1}.
inline SystemDef make_spacecraft_omega(const Vec& J_diag, const Mat& K,
                                       PiecewiseControl ubar) {
  if (J_diag.size() != 3 || J_diag.minCoeff() <= 0.0) {
    throw ConfigError("make_spacecraft_omega: J must be diag positive 3x3");
  }
  if (K.rows() != 3 || K.cols() != 3) {
    throw ConfigError("make_spacecraft_omega: K must be 3x3");
  }
  const Mat J = J_diag.asDiagonal();
  const Mat Jinv = J_diag.cwiseInverse().asDiagonal();
  auto u = std::make_shared<PiecewiseControl>(std::move(ubar));
  SystemDef sys;
  sys.n = 3;
  sys.m = 3;
  sys.label = "spacecraft-omega";
  sys.f = [J, Jinv, K, u](double t, const Vec& w) {
    return Vec(Jinv * (u->at(t) + K * w - skew(w) * (J * w)));
  };
  sys.g = [Jinv](double, const Vec&) { return Jinv; };
  sys.jac_f = [J, Jinv, K](double, const Vec& w) {
    return Mat(Jinv * (K - skew(w) * J + skew(J * w)));
  };
  sys.jac_g_times = [](double, const Vec&, const Vec&) { return Mat::Zero(3, 3); };
  return sys;
}

/// Full spacecraft attitude state (q, w) in R^7 with quaternion kinematics
/// qdot = Omega(w) q; disturbances act on the w rows only.
inline SystemDef make_spacecraft_full(const Vec& J_diag, const Mat& K,
                                      PiecewiseControl ubar) {
  if (J_diag.size() != 3 || J_diag.minCoeff() <= 0.0) {
    throw ConfigError("make_spacecraft_full: J must be diag positive 3x3");
  }
  const Mat J = J_diag.asDiagonal();
  const Mat Jinv = J_diag.cwiseInverse().asDiagonal();
  auto u = std::make_shared<PiecewiseControl>(std::move(ubar));
  SystemDef sys;
  sys.n = 7;
  sys.m = 3;
  sys.label = "spacecraft-full";
  sys.f = [J, Jinv, K, u](double t, const Vec& x) {
    const Vec q = x.head(4);
    const Vec w = x.tail(3);
    Vec out(7);
    out.head(4) = quat_omega(w) * q;
    out.tail(3) = Jinv * (u->at(t) + K * w - skew(w) * (J * w));
    return out;
  };
  sys.g = [Jinv](double, const Vec&) {
    Mat g = Mat::Zero(7, 3);
    g.bottomRows(3) = Jinv;
    return g;
  };
  sys.jac_f = [J, Jinv, K](double, const Vec& x) {
    const Vec q = x.head(4);
    const Vec w = x.tail(3);
    Mat j = Mat::Zero(7, 7);
    j.topLeftCorner(4, 4) = quat_omega(w);
    for (int k = 0; k < 3; ++k) {
      j.block<4, 1>(0, 4 + k) = quat_omega(Vec(Vec::Unit(3, k))) * q;
    }
    j.bottomRightCorner(3, 3) = Jinv * (K - skew(w) * J + skew(J * w));
    return j;
  };
  sys.jac_g_times = [](double, const Vec&, const Vec&) { return Mat::Zero(7, 7); };
  return sys;
}

}  // namespace chreach
