#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace chreach {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

/// Configuration / input errors (bad shapes, schemes, parameter ranges).
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Numerical failures during computation (divergence, singular costate, ...).
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Domain errors for geometric queries (off-boundary points, non-unit
/// directions).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

inline bool all_finite(const Vec& v) { return v.allFinite(); }

inline double sgn(double x) { return (x > 0.0) - (x < 0.0); }

}  // namespace chreach
