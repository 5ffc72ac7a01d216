#pragma once

#include "chreach/core.hpp"
#include "chreach/geometry/sets.hpp"
#include "chreach/parallel.hpp"
#include "chreach/reach/extremal.hpp"
#include "chreach/reach/integrate.hpp"
#include "chreach/rng.hpp"
#include "chreach/systems/system.hpp"

#include <cstdint>
#include <vector>

namespace chreach {

/// Validation rollouts of the continuous system: the disturbance is sampled
/// uniformly in W and held constant over each RK4 grid step. Returns node
/// states per rollout, deterministic per seed and independent of scheduling.
inline std::vector<std::vector<Vec>> monte_carlo_rollouts(
    const SystemDef& sys, const SmoothConvexSet& W, const InitialSetSpec& X0,
    int count, std::uint64_t seed, const TimeGrid& grid, int threads = 0) {
  if (count < 1) throw ConfigError("monte_carlo_rollouts: count must be >= 1");
  std::vector<std::vector<Vec>> out(count);
  parallel_for(
      count,
      [&](int s) {
        Rng rng(Rng::derive(seed, std::uint64_t(s)));
        Vec x = X0.is_singleton() ? X0.point() : X0.set().sample_uniform(rng);
        out[s].reserve(grid.nodes());
        out[s].push_back(x);
        const double h = grid.h();
        for (int k = 0; k < grid.steps; ++k) {
          const Vec w = W.sample_uniform(rng);
          x = rk4_step(
              [&](double ts, const Vec& xs) {
                return Vec(sys.f(ts, xs) + sys.g(ts, xs) * w);
              },
              grid.t(k), h, x);
          if (!all_finite(x)) {
            throw NumericalError("monte_carlo_rollouts: divergence");
          }
          out[s].push_back(x);
        }
      },
      threads);
  return out;
}

}  // namespace chreach
