#pragma once

#include "chreach/core.hpp"
#include "chreach/geometry/sets.hpp"
#include "chreach/reach/extremal.hpp"
#include "chreach/rng.hpp"

#include <Eigen/SVD>

#include <functional>
#include <utility>
#include <vector>

namespace chreach {

/// Epsilon-completion of a tall disturbance matrix g (m < n columns): the
/// missing directions are filled with epsilon-scaled unit columns so the
/// extended matrix is square and invertible, and the disturbance set is
/// lifted to R^n.
struct EpsExtensionSpec {
  SystemDef base;                  // n states, m < n disturbances
  std::vector<std::function<Vec(double, const Vec&)>>
      extra_columns;               // n - m columns, unit norm
  double epsilon = 0.1;
  SmoothConvexSet liftedW;         // ovaloid over R^n

  /// Checks the column norms and the invertibility of the extended matrix at
  /// seeded probe points.
  void validate(int probe_points = 1000, std::uint64_t seed = 7) const;
};

/// Constant completion columns: an orthonormal complement of the range of
/// g(t0, x0).
inline std::vector<std::function<Vec(double, const Vec&)>>
default_extra_columns(const SystemDef& base, double t0 = 0.0) {
  const Mat g0 = base.g(t0, Vec::Zero(base.n));
  Eigen::JacobiSVD<Mat> svd(g0, Eigen::ComputeFullU);
  std::vector<std::function<Vec(double, const Vec&)>> cols;
  for (int j = base.m; j < base.n; ++j) {
    const Vec c = svd.matrixU().col(j);
    cols.push_back([c](double, const Vec&) { return c; });
  }
  return cols;
}

namespace detail {

inline Mat extended_g(const EpsExtensionSpec& spec, double t, const Vec& x) {
  Mat g(spec.base.n, spec.base.n);
  g.leftCols(spec.base.m) = spec.base.g(t, x);
  for (int j = 0; j < spec.base.n - spec.base.m; ++j) {
    g.col(spec.base.m + j) = spec.epsilon * spec.extra_columns[j](t, x);
  }
  return g;
}

}  // namespace detail

inline void EpsExtensionSpec::validate(int probe_points,
                                       std::uint64_t seed) const {
  if (base.m >= base.n) {
    throw ConfigError("EpsExtensionSpec: base system must have m < n");
  }
  if (static_cast<int>(extra_columns.size()) != base.n - base.m) {
    throw ConfigError("EpsExtensionSpec: need n - m extra columns");
  }
  if (!(epsilon > 0.0)) throw ConfigError("EpsExtensionSpec: epsilon must be > 0");
  if (liftedW.dim() != base.n) {
    throw ConfigError("EpsExtensionSpec: lifted W must live in R^n");
  }
  Rng rng(seed);
  for (int p = 0; p < probe_points; ++p) {
    const double t = rng.uniform(0.0, 1.0);
    Vec x(base.n);
    for (int i = 0; i < base.n; ++i) x[i] = rng.uniform(-1.0, 1.0);
    for (const auto& col : extra_columns) {
      if (std::abs(col(t, x).norm() - 1.0) > 1e-9) {
        throw ConfigError("EpsExtensionSpec: extra column is not unit norm");
      }
    }
    Eigen::JacobiSVD<Mat> svd(detail::extended_g(*this, t, x));
    if (svd.singularValues().minCoeff() <= 1e-10) {
      throw NumericalError(
          "EpsExtensionSpec: extended g is singular at a probe point");
    }
  }
}

/// Square system with g replaced by [g_1 .. g_m, eps*g_{m+1} .. eps*g_n].
/// Extra columns are treated as state-independent in the costate equation
/// (the shipped defaults are constant), so grad g keeps only the base part.
inline SystemDef make_eps_extension(const EpsExtensionSpec& spec) {
  spec.validate();
  auto holder = std::make_shared<EpsExtensionSpec>(spec);
  SystemDef sys;
  sys.n = spec.base.n;
  sys.m = spec.base.n;
  sys.label = spec.base.label + "-eps-extended";
  sys.f = spec.base.f;
  sys.g = [holder](double t, const Vec& x) {
    return detail::extended_g(*holder, t, x);
  };
  sys.jac_f = spec.base.jac_f;
  sys.jac_g_times = [holder](double t, const Vec& x, const Vec& w) {
    return holder->base.jac_g_times(t, x, Vec(w.head(holder->base.m)));
  };
  return sys;
}

/// Outer hull estimates of the original (m < n) system through the extended
/// square system; the over-approximation error shrinks linearly in epsilon.
inline HullEstimate estimate_hulls_fullrank_relax(
    const EpsExtensionSpec& spec, const InitialSetSpec& X0,
    const std::vector<Direction>& dirs, const TimeGrid& grid,
    int threads = 0) {
  const SystemDef ext = make_eps_extension(spec);
  return estimate_hulls(ext, spec.liftedW, X0, dirs, grid, threads);
}

}  // namespace chreach
