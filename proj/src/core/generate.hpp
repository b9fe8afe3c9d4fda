#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "core/types.hpp"

namespace mppc {

// Synthetic dataset generators. All are deterministic given the seed.
//
//   spiral          noisy samples of t -> (t cos t, t sin t), t in [t0, t1],
//                   drawn uniformly w.r.t. arc length, Gaussian noise of
//                   scale `noise` per coordinate; unit weight per point
//   rectangle       nx x ny grid on [0, length] x [0, height], total mass 1
//   segment         n equally spaced points on [0, length] in 1-d, mass 1
//   oscillation     n points equally spaced by arc length on the graph of
//                   (x/5) sin(-4 pi log x), x in [x0, x1], total mass 1
//   parallel_lines  two horizontal segments at heights +-height over
//                   [-1, 1], n points total, mass 1
//   grid_clutter    four intersecting lines in R^3 with Gaussian noise
//                   (n_lines points) plus n_background points uniform in
//                   [0,3] x [0,3] x [-0.75, 0.75], total mass 1
struct GenerateOptions {
  std::optional<std::int64_t> n;
  std::optional<double> noise;
  std::optional<double> length;
  std::optional<double> height;
  std::optional<double> t0, t1;
  std::optional<double> x0, x1;
  std::optional<std::int64_t> nx, ny;
};

struct Generated {
  PointCloud cloud;
  // generator-dependent auxiliary value per point (spiral: the parameter t;
  // oscillation: x; others: empty)
  std::vector<double> aux;
};

Generated generate(const std::string& kind, const GenerateOptions& options,
                   std::uint64_t seed);

}  // namespace mppc
