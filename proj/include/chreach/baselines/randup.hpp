#pragma once

#include "chreach/baselines/discrete.hpp"
#include "chreach/core.hpp"
#include "chreach/geometry/sets.hpp"
#include "chreach/reach/extremal.hpp"
#include "chreach/rng.hpp"

#include <cstdint>
#include <vector>

namespace chreach {

/// Naive sampling baseline: i.i.d. uniform disturbances at every step (held
/// within the step dynamics) and uniform initial states, hulls of the
/// resulting trajectories per node. Deterministic per seed.
inline HullEstimate randup_hulls(const DiscreteSystem& dsys,
                                 const SmoothConvexSet& W,
                                 const InitialSetSpec& X0, int samples,
                                 std::uint64_t seed) {
  if (samples < 1) throw ConfigError("randup_hulls: samples must be >= 1");
  const int K = dsys.horizon_steps;
  std::vector<std::vector<Vec>> states(samples);
  for (int s = 0; s < samples; ++s) {
    Rng rng(Rng::derive(seed, std::uint64_t(s)));
    Vec x = X0.is_singleton() ? X0.point() : X0.set().sample_uniform(rng);
    states[s].reserve(K + 1);
    states[s].push_back(x);
    for (int k = 0; k < K; ++k) {
      x = dsys.step_disturbed(k, x, W.sample_uniform(rng));
      states[s].push_back(x);
    }
  }
  HullEstimate est;
  est.grid = TimeGrid(0.0, dsys.dt * K, K);
  est.sample_count = samples;
  est.scheme = "randup";
  est.seed = seed;
  est.eps.assign(K + 1, 0.0);
  for (int k = 0; k <= K; ++k) {
    std::vector<Vec> cloud;
    cloud.reserve(samples);
    for (int s = 0; s < samples; ++s) cloud.push_back(states[s][k]);
    if (dsys.n == 2) {
      est.hulls.push_back(convex_hull_2d(cloud));
    } else {
      est.hulls.push_back(HullVertices{std::move(cloud), false});
    }
  }
  return est;
}

}  // namespace chreach
