#pragma once

#include "chreach/core.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

namespace chreach {

/// Vertex-cloud representation of a convex hull. In the plane the vertices
/// are stored counter-clockwise (ordered = true); in higher dimensions the
/// raw cloud is kept and all queries go through distance_to_hull.
struct HullVertices {
  std::vector<Vec> points;
  bool ordered = false;

  int dim() const { return points.empty() ? 0 : int(points.front().size()); }
};

namespace detail {

inline double cross2(const Vec& o, const Vec& a, const Vec& b) {
  return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0]);
}

inline double point_segment_distance(const Vec& x, const Vec& a, const Vec& b) {
  const Vec ab = b - a;
  const double den = ab.squaredNorm();
  if (den <= 0.0) return (x - a).norm();
  const double t = std::clamp((x - a).dot(ab) / den, 0.0, 1.0);
  return (x - (a + t * ab)).norm();
}

}  // namespace detail

/// Counter-clockwise convex hull of planar points (monotone chain).
/// Collinear interior points and duplicates are dropped.
inline HullVertices convex_hull_2d(const std::vector<Vec>& points) {
  if (points.empty()) throw ConfigError("convex_hull_2d: no points");
  for (const auto& p : points) {
    if (p.size() != 2) {
      throw ConfigError("convex_hull_2d: only supported in dimension 2");
    }
    if (!all_finite(p)) throw NumericalError("convex_hull_2d: non-finite point");
  }
  std::vector<Vec> pts = points;
  std::sort(pts.begin(), pts.end(), [](const Vec& a, const Vec& b) {
    return a[0] < b[0] || (a[0] == b[0] && a[1] < b[1]);
  });
  pts.erase(std::unique(pts.begin(), pts.end(),
                        [](const Vec& a, const Vec& b) {
                          return a[0] == b[0] && a[1] == b[1];
                        }),
            pts.end());
  const int n = static_cast<int>(pts.size());
  if (n <= 2) return HullVertices{pts, true};

  std::vector<Vec> hull(2 * n);
  int k = 0;
  for (int i = 0; i < n; ++i) {  // lower chain
    while (k >= 2 && detail::cross2(hull[k - 2], hull[k - 1], pts[i]) <= 0.0) --k;
    hull[k++] = pts[i];
  }
  const int lower = k + 1;
  for (int i = n - 2; i >= 0; --i) {  // upper chain
    while (k >= lower && detail::cross2(hull[k - 2], hull[k - 1], pts[i]) <= 0.0) --k;
    hull[k++] = pts[i];
  }
  hull.resize(k - 1);
  return HullVertices{std::move(hull), true};
}

namespace detail {

/// Distance from x to a CCW convex polygon (>= 3 vertices): 0 inside, else
/// the minimum distance to the edges.
inline double polygon_distance(const Vec& x, const std::vector<Vec>& v) {
  const int n = static_cast<int>(v.size());
  bool inside = true;
  for (int i = 0; i < n; ++i) {
    if (cross2(v[i], v[(i + 1) % n], x) < 0.0) {
      inside = false;
      break;
    }
  }
  if (inside) return 0.0;
  double best = std::numeric_limits<double>::infinity();
  for (int i = 0; i < n; ++i) {
    best = std::min(best, point_segment_distance(x, v[i], v[(i + 1) % n]));
  }
  return best;
}

/// Pairwise Frank-Wolfe for min ||V theta - x||^2 over the simplex, stopping
/// once the duality gap certifies the distance to the requested accuracy.
inline double frank_wolfe_distance(const Vec& x, const std::vector<Vec>& v,
                                   double tol, int max_iters = 100000) {
  const int m = static_cast<int>(v.size());
  int start = 0;
  double best_sq = (v[0] - x).squaredNorm();
  for (int i = 1; i < m; ++i) {
    const double d2 = (v[i] - x).squaredNorm();
    if (d2 < best_sq) {
      best_sq = d2;
      start = i;
    }
  }
  if (m == 1) return std::sqrt(best_sq);

  std::vector<double> theta(m, 0.0);
  theta[start] = 1.0;
  Vec y = v[start];
  for (int it = 0; it < max_iters; ++it) {
    const Vec g = 2.0 * (y - x);
    int s = 0, a = -1;
    double smin = std::numeric_limits<double>::infinity();
    double amax = -std::numeric_limits<double>::infinity();
    for (int i = 0; i < m; ++i) {
      const double gi = g.dot(v[i]);
      if (gi < smin) {
        smin = gi;
        s = i;
      }
      if (theta[i] > 0.0 && gi > amax) {
        amax = gi;
        a = i;
      }
    }
    const double f = (y - x).squaredNorm();
    if (f <= tol * tol) break;  // already within tol of x
    const double gap = g.dot(y) - smin;
    if (gap <= std::max(tol * tol, tol * std::sqrt(f))) break;

    const Vec dir = v[s] - v[a];
    const double den = dir.squaredNorm();
    if (den <= 0.0) break;
    const double step = std::clamp(-g.dot(dir) / (2.0 * den), 0.0, theta[a]);
    if (step <= 0.0) break;
    theta[s] += step;
    theta[a] -= step;
    y += step * dir;
    if ((it + 1) % 1024 == 0) {  // refresh against drift
      y.setZero();
      for (int i = 0; i < m; ++i) {
        if (theta[i] > 0.0) y += theta[i] * v[i];
      }
    }
  }
  return (y - x).norm();
}

}  // namespace detail

/// Euclidean distance from x to the convex hull of a vertex cloud, accurate
/// to tol. Ordered planar hulls take an exact edge-walk path; general clouds
/// use pairwise Frank-Wolfe over the simplex.
inline double distance_to_hull(const Vec& x, const HullVertices& hull,
                               double tol = 1e-9) {
  if (hull.points.empty()) throw ConfigError("distance_to_hull: empty hull");
  const auto& pts = hull.points;
  if (pts.size() == 1) return (x - pts[0]).norm();
  if (hull.dim() == 2) {
    if (pts.size() == 2) return detail::point_segment_distance(x, pts[0], pts[1]);
    if (hull.ordered) return detail::polygon_distance(x, pts);
  }
  return detail::frank_wolfe_distance(x, pts, tol);
}

/// Hausdorff distance between convex hulls of two vertex clouds. For convex
/// sets the directed suprema are attained at vertices.
inline double hausdorff(const HullVertices& a, const HullVertices& b,
                        double tol = 1e-9) {
  if (a.points.empty() || b.points.empty()) {
    throw ConfigError("hausdorff: empty hull");
  }
  double worst = 0.0;
  for (const auto& p : a.points) worst = std::max(worst, distance_to_hull(p, b, tol));
  for (const auto& p : b.points) worst = std::max(worst, distance_to_hull(p, a, tol));
  return worst;
}

}  // namespace chreach
