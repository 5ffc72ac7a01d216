#pragma once

#include "chreach/core.hpp"
#include "chreach/geometry/sets.hpp"
#include "chreach/rng.hpp"

#include <cmath>
#include <string>
#include <vector>

namespace chreach {

enum class SphereScheme { UniformAngle, Fibonacci, Random };

inline SphereScheme sphere_scheme_from_string(const std::string& s) {
  if (s == "uniform-angle") return SphereScheme::UniformAngle;
  if (s == "fibonacci") return SphereScheme::Fibonacci;
  if (s == "random") return SphereScheme::Random;
  throw ConfigError("unknown sphere sampling scheme: " + s);
}

/// M unit directions on S^{n-1}. UniformAngle (n = 2 only) places angles
/// 2*pi*i/M; Fibonacci (n = 3 only) uses the spherical Fibonacci lattice;
/// Random works in any dimension and is deterministic per seed.
inline std::vector<Direction> sample_sphere(int n, int M, SphereScheme scheme,
                                            std::uint64_t seed = 0) {
  if (n < 2) throw ConfigError("sample_sphere: n must be >= 2");
  if (M < 1) throw ConfigError("sample_sphere: M must be >= 1");
  std::vector<Direction> dirs;
  dirs.reserve(M);
  switch (scheme) {
    case SphereScheme::UniformAngle: {
      if (n != 2) throw ConfigError("uniform-angle sampling requires n = 2");
      for (int i = 0; i < M; ++i) {
        const double a = 2.0 * M_PI * double(i) / double(M);
        Vec d(2);
        d << std::cos(a), std::sin(a);
        dirs.push_back(Direction::normalized(d));
      }
      break;
    }
    case SphereScheme::Fibonacci: {
      if (n != 3) throw ConfigError("fibonacci sampling requires n = 3");
      const double golden = (1.0 + std::sqrt(5.0)) / 2.0;
      for (int i = 0; i < M; ++i) {
        const double z = 1.0 - 2.0 * (double(i) + 0.5) / double(M);
        const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
        const double a = 2.0 * M_PI * double(i) / golden;
        Vec d(3);
        d << r * std::cos(a), r * std::sin(a), z;
        dirs.push_back(Direction::normalized(d));
      }
      break;
    }
    case SphereScheme::Random: {
      Rng rng(seed);
      for (int i = 0; i < M; ++i) {
        Vec g = rng.normal_vec(n);
        while (g.norm() < 1e-12) g = rng.normal_vec(n);
        dirs.push_back(Direction::normalized(g));
      }
      break;
    }
  }
  return dirs;
}

/// Estimated external covering radius: max over probe directions of the
/// Euclidean distance to the nearest sample. Probes are a deterministic
/// seeded stream, so the estimate is a reproducible lower bound on the true
/// covering radius that converges from below as probes grows.
inline double covering_radius(const std::vector<Direction>& dirs, int probes,
                              std::uint64_t seed = 0) {
  if (dirs.empty()) throw ConfigError("covering_radius: empty direction set");
  const int n = dirs.front().dim();
  for (const auto& d : dirs) {
    if (std::abs(d.vec().norm() - 1.0) > 1e-9) {
      throw DomainError("covering_radius: non-unit sample");
    }
  }
  Rng rng(seed);
  double worst = 0.0;
  for (int p = 0; p < probes; ++p) {
    Vec g = rng.normal_vec(n);
    while (g.norm() < 1e-12) g = rng.normal_vec(n);
    g /= g.norm();
    double best = std::numeric_limits<double>::infinity();
    for (const auto& d : dirs) {
      best = std::min(best, (g - d.vec()).norm());
      if (best == 0.0) break;
    }
    worst = std::max(worst, best);
  }
  return worst;
}

/// Orthonormal basis of the tangent space of S^{n-1} at d (n-1 columns).
inline Mat tangent_basis(const Direction& d) {
  const int n = d.dim();
  // Full orthonormal frame via Householder QR of [d | I], dropping d itself.
  Mat a = Mat::Identity(n, n);
  a.col(0) = d.vec();
  Eigen::HouseholderQR<Mat> qr(a);
  Mat q = qr.householderQ();
  // First column of Q spans d (up to sign); the rest span the tangent space.
  Mat basis = q.rightCols(n - 1);
  for (int j = 0; j < basis.cols(); ++j) {
    basis.col(j) -= d.vec() * d.vec().dot(basis.col(j));
    basis.col(j).normalize();
  }
  return basis;
}

}  // namespace chreach
