#pragma once

#include "chreach/core.hpp"
#include "chreach/geometry/sets.hpp"
#include "chreach/reach/extremal.hpp"

namespace chreach {

/// Hyper-rectangular uncertainty description: |w_i| <= deltaW_i and
/// |x_i - x0bar_i| <= deltaX0_i.
struct RectSpec {
  Vec deltaW;
  Vec x0bar;
  Vec deltaX0;

  void validate() const {
    if (deltaW.size() == 0 || deltaW.minCoeff() <= 0.0) {
      throw ConfigError("RectSpec: deltaW entries must be positive");
    }
    if (deltaX0.size() != x0bar.size() || deltaX0.minCoeff() <= 0.0) {
      throw ConfigError("RectSpec: deltaX0 entries must be positive");
    }
  }
};

struct RectSets {
  SmoothConvexSet W_under;
  SmoothConvexSet W_over;
  SmoothConvexSet X0_under;
  SmoothConvexSet X0_over;
};

/// Smooth lambda-norm inner and outer surrogates of the rectangles; the
/// inner set sits inside the box and the outer one contains it, and both
/// converge to the box as lambda grows.
inline RectSets rect_sets(const RectSpec& spec, double lambda) {
  spec.validate();
  if (!(lambda > 1.0)) throw ConfigError("rect_sets: lambda must be > 1");
  const int m = static_cast<int>(spec.deltaW.size());
  return RectSets{
      SmoothConvexSet::lambda_ball(Vec::Zero(m), spec.deltaW, lambda,
                                   sets::BoxSide::Under),
      SmoothConvexSet::lambda_ball(Vec::Zero(m), spec.deltaW, lambda,
                                   sets::BoxSide::Over),
      SmoothConvexSet::lambda_ball(spec.x0bar, spec.deltaX0, lambda,
                                   sets::BoxSide::Under),
      SmoothConvexSet::lambda_ball(spec.x0bar, spec.deltaX0, lambda,
                                   sets::BoxSide::Over)};
}

/// Hull estimation under the rectangular relaxation: under mode yields inner
/// approximations of hull(X_t), over mode outer ones.
inline HullEstimate estimate_hulls_rect(const SystemDef& sys,
                                        const RectSpec& spec, double lambda,
                                        sets::BoxSide mode,
                                        const std::vector<Direction>& dirs,
                                        const TimeGrid& grid, int threads = 0) {
  if (sys.n != sys.m) {
    throw ConfigError("estimate_hulls_rect: requires a square system");
  }
  const RectSets s = rect_sets(spec, lambda);
  const bool under = mode == sets::BoxSide::Under;
  return estimate_hulls(sys, under ? s.W_under : s.W_over,
                        InitialSetSpec::ovaloid(under ? s.X0_under : s.X0_over),
                        dirs, grid, threads);
}

}  // namespace chreach
