#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "core/types.hpp"

namespace mppc {

// Weighted k-means: k-means++ style seeding from the given seed, then Lloyd
// iterations until the assignment is fixed or `iters` is reached. Empty
// clusters are re-seeded to the farthest point.
std::vector<double> lloyd(const PointCloud& cloud, std::int64_t k,
                          std::uint64_t seed, int iters = 50);

// Singleton initialization: evaluates the energy of k Lloyd centers for
// k = 1, 2, 4, ... while it decreases, then interval-halving refinement,
// and returns the best configuration visited.
MultiCurve init_singletons(const PointCloud& cloud, const Params& params);

// Main loop: projection assignment, per-component relaxation, singleton
// centroid moves, and the staggered topology / re-parametrization schedule.
// Terminates when the relative energy change over a full top_period window
// drops below energy_rtol with no topology events in the window, or at
// max_outer_iters (reported as converged = false).
std::pair<MultiCurve, FitReport> fit(const PointCloud& cloud,
                                     const Params& params,
                                     const MultiCurve* initial = nullptr);

}  // namespace mppc
