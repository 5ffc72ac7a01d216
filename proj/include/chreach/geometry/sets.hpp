#pragma once

#include "chreach/core.hpp"
#include "chreach/rng.hpp"

#include <Eigen/Cholesky>

#include <cmath>
#include <limits>
#include <memory>
#include <utility>
#include <variant>

namespace chreach {

/// Unit vector on S^{n-1}. Construction checks |norm - 1| <= 1e-12.
class Direction {
 public:
  explicit Direction(Vec d) : d_(std::move(d)) {
    if (std::abs(d_.norm() - 1.0) > 1e-12) {
      throw DomainError("Direction: vector is not unit-norm");
    }
  }

  /// Normalizes v (must be nonzero) and wraps it.
  static Direction normalized(const Vec& v) {
    const double n = v.norm();
    if (!(n > 0.0) || !std::isfinite(n)) {
      throw DomainError("Direction: cannot normalize zero/non-finite vector");
    }
    return Direction(Vec(v / n));
  }

  const Vec& vec() const { return d_; }
  int dim() const { return static_cast<int>(d_.size()); }

 private:
  Vec d_;
};

namespace sets {

struct Ball {
  Vec center;
  double radius;
};

struct Ellipsoid {
  Vec center;
  Mat shape;  // Q, symmetric positive definite
};

enum class BoxSide { Under, Over };

/// Smooth lambda-norm surrogate of a hyper-rectangle with half-widths
/// delta (elementwise positive): {x : ||(x-center) ./ delta||_lambda^2 <= c}
/// with c = 1 (Under) or c = n^(2/lambda) (Over).
struct LambdaBall {
  Vec center;
  Vec half_widths;
  double exponent;  // lambda > 1
  BoxSide side;
};

/// Smooth full-dimensional completion of a lower-dimensional Ball/Ellipsoid:
/// {w in R^n : h(w_{1:m}) + 0.5*||w_{m+1:n}||^2 <= 1}. For centered
/// Ball/Ellipsoid bases this is exactly an ellipsoid, stored here.
struct Lifted {
  Ellipsoid equivalent;
  int base_dim;
};

}  // namespace sets

/// Strictly convex compact set with a smooth boundary (an ovaloid) and
/// closed-form Gauss map. Variants cover the disturbance / initial sets used
/// throughout: balls, ellipsoids, lambda-balls, and lifted sets.
class SmoothConvexSet {
 public:
  using Variant =
      std::variant<sets::Ball, sets::Ellipsoid, sets::LambdaBall, sets::Lifted>;

  // radius = 0 is tolerated as the degenerate singleton {center}: support
  // queries return the center, which is what zero-disturbance runs need.
  static SmoothConvexSet ball(Vec center, double radius) {
    if (!(radius >= 0.0)) throw ConfigError("Ball: radius must be nonnegative");
    return SmoothConvexSet(sets::Ball{std::move(center), radius});
  }

  static SmoothConvexSet ellipsoid(Vec center, Mat shape) {
    const int n = static_cast<int>(center.size());
    if (shape.rows() != n || shape.cols() != n) {
      throw ConfigError("Ellipsoid: shape matrix size mismatch");
    }
    if ((shape - shape.transpose()).cwiseAbs().maxCoeff() >
        1e-12 * std::max(1.0, shape.cwiseAbs().maxCoeff())) {
      throw ConfigError("Ellipsoid: shape matrix must be symmetric");
    }
    Eigen::SelfAdjointEigenSolver<Mat> es(shape);
    if (es.eigenvalues().minCoeff() <= 0.0) {
      throw ConfigError("Ellipsoid: shape matrix must be positive definite");
    }
    return SmoothConvexSet(sets::Ellipsoid{std::move(center), std::move(shape)});
  }

  static SmoothConvexSet lambda_ball(Vec center, Vec half_widths,
                                     double exponent, sets::BoxSide side) {
    if (!(exponent > 1.0)) {
      throw ConfigError("LambdaBall: exponent must be > 1");
    }
    if (half_widths.size() != center.size() || half_widths.minCoeff() <= 0.0) {
      throw ConfigError("LambdaBall: half-widths must be positive");
    }
    return SmoothConvexSet(
        sets::LambdaBall{std::move(center), std::move(half_widths), exponent, side});
  }

  int dim() const {
    return std::visit(
        [](const auto& s) -> int {
          using T = std::decay_t<decltype(s)>;
          if constexpr (std::is_same_v<T, sets::Lifted>) {
            return static_cast<int>(s.equivalent.center.size());
          } else {
            return static_cast<int>(s.center.size());
          }
        },
        v_);
  }

  const Variant& variant() const { return v_; }

  bool is_lambda_ball() const {
    return std::holds_alternative<sets::LambdaBall>(v_);
  }

  /// Level-set value h(x) with boundary at h = 1 for every variant.
  double level(const Vec& x) const;

  /// |h(x) - 1|; zero on the boundary.
  double boundary_residual(const Vec& x) const { return std::abs(level(x) - 1.0); }

  bool contains(const Vec& x, double tol = 1e-12) const {
    return level(x) <= 1.0 + tol;
  }

  /// Point on the boundary whose outward normal is d (inverse Gauss map).
  Vec inverse_gauss_map(const Direction& d) const;

  /// Outward unit normal at a boundary point x (residual tolerance 1e-8).
  Direction gauss_map(const Vec& x) const;

  /// Maximizer of d^T v over the set; equals the inverse Gauss map by strict
  /// convexity.
  Vec support_point(const Direction& d) const { return inverse_gauss_map(d); }

  double support_value(const Direction& d) const {
    return d.vec().dot(support_point(d));
  }

  /// Axis-aligned box [lo, hi] containing the set.
  std::pair<Vec, Vec> bounding_box() const;

  /// Uniform sample: direct for Ball/Ellipsoid/Lifted (volume-preserving map
  /// of the unit ball), rejection from the bounding box for lambda-balls.
  Vec sample_uniform(Rng& rng) const;

 private:
  explicit SmoothConvexSet(Variant v) : v_(std::move(v)) {}
  friend SmoothConvexSet lift_set(const SmoothConvexSet&, int);

  Variant v_;
};

namespace detail {

inline void check_unit(const Direction& d) {
  // Direction enforces 1e-12 at construction; re-check at the op tolerance.
  if (std::abs(d.vec().norm() - 1.0) > 1e-9) {
    throw DomainError("inverse_gauss_map: direction is not unit-norm");
  }
}

// |z| clamped away from 0: the lambda-ball inverse has exponents
// (2-lambda)/(lambda-1) < 0 for lambda > 2 whose blow-up at z = 0 is
// removable once multiplied back; the clamp keeps intermediates finite.
inline double clamp_abs(double z) {
  const double a = std::abs(z);
  return a < 1e-14 ? 1e-14 : a;
}

// d .* |d|^((2-lambda)/(lambda-1)) .* delta^(lambda/(lambda-1))
//   / || |d .* delta|^(1/(lambda-1)) ||_lambda
inline Vec lambda_inverse_offset(const Vec& d, const Vec& delta, double lambda) {
  const int n = static_cast<int>(d.size());
  const double e_num = (2.0 - lambda) / (lambda - 1.0);
  const double e_del = lambda / (lambda - 1.0);
  const double e_inv = 1.0 / (lambda - 1.0);
  Vec out(n);
  double denom_acc = 0.0;
  for (int i = 0; i < n; ++i) {
    const double ai = clamp_abs(d[i]);
    out[i] = d[i] * std::pow(ai, e_num) * std::pow(delta[i], e_del);
    denom_acc += std::pow(std::pow(ai * delta[i], e_inv), lambda);
  }
  const double denom = std::pow(denom_acc, 1.0 / lambda);
  return out / denom;
}

}  // namespace detail

inline double SmoothConvexSet::level(const Vec& x) const {
  return std::visit(
      [&](const auto& s) -> double {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, sets::Ball>) {
          if (s.radius == 0.0) {
            return (x - s.center).norm() == 0.0
                       ? 1.0
                       : std::numeric_limits<double>::infinity();
          }
          return (x - s.center).squaredNorm() / (s.radius * s.radius);
        } else if constexpr (std::is_same_v<T, sets::Ellipsoid>) {
          const Vec r = x - s.center;
          return r.dot(s.shape.llt().solve(r));
        } else if constexpr (std::is_same_v<T, sets::LambdaBall>) {
          const Vec z = (x - s.center).cwiseQuotient(s.half_widths);
          const double lam = s.exponent;
          double acc = 0.0;
          for (int i = 0; i < z.size(); ++i) acc += std::pow(std::abs(z[i]), lam);
          double h = std::pow(acc, 2.0 / lam);
          if (s.side == sets::BoxSide::Over) {
            h /= std::pow(double(z.size()), 2.0 / lam);
          }
          return h;
        } else {
          const Vec r = x - s.equivalent.center;
          return r.dot(s.equivalent.shape.llt().solve(r));
        }
      },
      v_);
}

inline Vec SmoothConvexSet::inverse_gauss_map(const Direction& dir) const {
  detail::check_unit(dir);
  const Vec& d = dir.vec();
  if (d.size() != dim()) {
    throw DomainError("inverse_gauss_map: direction dimension mismatch");
  }
  return std::visit(
      [&](const auto& s) -> Vec {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, sets::Ball>) {
          return s.center + s.radius * d;
        } else if constexpr (std::is_same_v<T, sets::Ellipsoid>) {
          const Vec qd = s.shape * d;
          return s.center + qd / std::sqrt(d.dot(qd));
        } else if constexpr (std::is_same_v<T, sets::LambdaBall>) {
          Vec off = detail::lambda_inverse_offset(d, s.half_widths, s.exponent);
          if (s.side == sets::BoxSide::Over) {
            off *= std::pow(double(d.size()), 1.0 / s.exponent);
          }
          return s.center + off;
        } else {
          const Vec qd = s.equivalent.shape * d;
          return s.equivalent.center + qd / std::sqrt(d.dot(qd));
        }
      },
      v_);
}

inline Direction SmoothConvexSet::gauss_map(const Vec& x) const {
  if (boundary_residual(x) > 1e-8) {
    throw DomainError("gauss_map: point is not on the boundary");
  }
  return std::visit(
      [&](const auto& s) -> Direction {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, sets::Ball>) {
          const Vec r = x - s.center;
          const double n = r.norm();
          if (!(n > 0.0)) throw DomainError("gauss_map: point at the center");
          return Direction(Vec(r / n));
        } else if constexpr (std::is_same_v<T, sets::Ellipsoid>) {
          const Vec g = s.shape.llt().solve(x - s.center);
          return Direction::normalized(g);
        } else if constexpr (std::is_same_v<T, sets::LambdaBall>) {
          // (x - c) .* |x - c|^(lambda-2) .* delta^(-lambda), normalized.
          const Vec r = x - s.center;
          if (!(r.norm() > 0.0)) throw DomainError("gauss_map: point at the center");
          const double lam = s.exponent;
          Vec g(r.size());
          for (int i = 0; i < r.size(); ++i) {
            const double ai = detail::clamp_abs(r[i]);
            g[i] = r[i] * std::pow(ai, lam - 2.0) *
                   std::pow(s.half_widths[i], -lam);
          }
          return Direction::normalized(g);
        } else {
          const Vec g = s.equivalent.shape.llt().solve(x - s.equivalent.center);
          return Direction::normalized(g);
        }
      },
      v_);
}

inline std::pair<Vec, Vec> SmoothConvexSet::bounding_box() const {
  return std::visit(
      [&](const auto& s) -> std::pair<Vec, Vec> {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, sets::Ball>) {
          const Vec r = Vec::Constant(s.center.size(), s.radius);
          return {s.center - r, s.center + r};
        } else if constexpr (std::is_same_v<T, sets::Ellipsoid>) {
          // Support in +/- e_i is sqrt(Q_ii).
          const Vec r = s.shape.diagonal().cwiseSqrt();
          return {s.center - r, s.center + r};
        } else if constexpr (std::is_same_v<T, sets::LambdaBall>) {
          Vec r = s.half_widths;
          if (s.side == sets::BoxSide::Over) {
            r *= std::pow(double(r.size()), 1.0 / s.exponent);
          }
          return {s.center - r, s.center + r};
        } else {
          const Vec r = s.equivalent.shape.diagonal().cwiseSqrt();
          return {s.equivalent.center - r, s.equivalent.center + r};
        }
      },
      v_);
}

inline Vec SmoothConvexSet::sample_uniform(Rng& rng) const {
  const int n = dim();
  if (is_lambda_ball()) {
    const auto [lo, hi] = bounding_box();
    for (int attempt = 0; attempt < 100000; ++attempt) {
      Vec x(n);
      for (int i = 0; i < n; ++i) x[i] = rng.uniform(lo[i], hi[i]);
      if (contains(x)) return x;
    }
    throw NumericalError("sample_uniform: rejection sampling failed");
  }
  // Uniform in the unit ball, then a volume-scaling affine map.
  Vec u = rng.normal_vec(n);
  const double nu = u.norm();
  if (nu == 0.0) u[0] = 1.0; else u /= nu;
  const double rad = std::pow(rng.uniform01(), 1.0 / n);
  const Vec z = rad * u;
  return std::visit(
      [&](const auto& s) -> Vec {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, sets::Ball>) {
          return s.center + s.radius * z;
        } else if constexpr (std::is_same_v<T, sets::Ellipsoid>) {
          return s.center + s.shape.llt().matrixL() * z;
        } else if constexpr (std::is_same_v<T, sets::Lifted>) {
          return s.equivalent.center + s.equivalent.shape.llt().matrixL() * z;
        } else {
          throw NumericalError("unreachable");
        }
      },
      v_);
}

/// Completes a centered Ball/Ellipsoid over R^m to an ovaloid over R^n whose
/// projection onto the first m coordinates is the base set:
/// {w : h(w_{1:m}) + 0.5*||w_{m+1:n}||^2 <= 1} with h the base level set.
inline SmoothConvexSet lift_set(const SmoothConvexSet& base, int n) {
  const int m = base.dim();
  if (n <= m) throw ConfigError("lift_set: ambient dimension must exceed base");
  Mat q = Mat::Zero(n, n);
  if (const auto* b = std::get_if<sets::Ball>(&base.variant())) {
    if (b->center.cwiseAbs().maxCoeff() > 0.0) {
      throw ConfigError("lift_set: base must be centered at the origin");
    }
    q.topLeftCorner(m, m) = (b->radius * b->radius) * Mat::Identity(m, m);
  } else if (const auto* e = std::get_if<sets::Ellipsoid>(&base.variant())) {
    if (e->center.cwiseAbs().maxCoeff() > 0.0) {
      throw ConfigError("lift_set: base must be centered at the origin");
    }
    q.topLeftCorner(m, m) = e->shape;
  } else {
    throw ConfigError("lift_set: base must be a Ball or Ellipsoid");
  }
  q.bottomRightCorner(n - m, n - m) = 2.0 * Mat::Identity(n - m, n - m);
  return SmoothConvexSet(SmoothConvexSet::Variant(
      sets::Lifted{sets::Ellipsoid{Vec::Zero(n), std::move(q)}, m}));
}

}  // namespace chreach
