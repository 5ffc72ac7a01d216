#pragma once

#include "chreach/core.hpp"

#include <functional>
#include <string>
#include <utility>
#include <vector>

namespace chreach {

/// Disturbance-affine dynamics xdot = f(t, x) + g(t, x) w with analytic
/// Jacobians. jac_g_times(t, x, w) is the n-by-n contraction [grad g(t,x) w]
/// with entries sum_j (d g_ij / d x_k) w_j.
struct SystemDef {
  int n = 0;
  int m = 0;
  std::string label;
  std::function<Vec(double, const Vec&)> f;
  std::function<Mat(double, const Vec&)> g;
  std::function<Mat(double, const Vec&)> jac_f;
  std::function<Mat(double, const Vec&, const Vec&)> jac_g_times;
};

/// Zero-order-hold control signal on a uniform grid over [t0, tf].
/// Queries outside the domain raise an interpolation error.
class PiecewiseControl {
 public:
  PiecewiseControl() = default;

  PiecewiseControl(double t0, double dt, std::vector<Vec> values)
      : t0_(t0), dt_(dt), values_(std::move(values)) {
    if (values_.empty() || dt_ <= 0.0) {
      throw ConfigError("PiecewiseControl: empty knots or nonpositive dt");
    }
  }

  static PiecewiseControl constant(const Vec& u, double t0, double tf) {
    return PiecewiseControl(t0, tf - t0, {u});
  }

  double t0() const { return t0_; }
  double tf() const { return t0_ + dt_ * double(values_.size()); }
  int segments() const { return static_cast<int>(values_.size()); }
  double dt() const { return dt_; }
  const std::vector<Vec>& values() const { return values_; }

  const Vec& at(double t) const {
    const double tol = 1e-9 * std::max(1.0, std::abs(tf()));
    if (t < t0_ - tol || t > tf() + tol) {
      throw NumericalError("PiecewiseControl: query outside domain");
    }
    int k = static_cast<int>(std::floor((t - t0_) / dt_));
    k = std::clamp(k, 0, segments() - 1);
    return values_[k];
  }

 private:
  double t0_ = 0.0;
  double dt_ = 0.0;
  std::vector<Vec> values_;
};

}  // namespace chreach
