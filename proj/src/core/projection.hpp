#pragma once

#include <cstdint>
#include <vector>

#include "core/geometry.hpp"
#include "core/types.hpp"

namespace mppc {

// Nearest-vertex assignment of every data point, plus per-vertex statistics.
// Vertex ids are global over all components in component order.
struct Assignment {
  std::vector<std::int64_t> owner;  // n, global vertex id
  std::vector<double> dist2;        // n, squared distance to owner

  // filled by vertex_stats
  std::vector<double> mass;       // m
  std::vector<double> centroid;   // m * d, zeros where empty
  std::vector<std::uint8_t> empty;  // m, 1 where mass == 0
};

// Brute-force O(nmd) scan. Ties break to the lowest global vertex id.
Assignment assign(const PointCloud& cloud, const MultiCurve& curves,
                  int threads = 0);

// Projected mass and mass-weighted centroid per vertex, accumulated in a
// fixed chunk order so results are identical for any thread count.
void vertex_stats(const PointCloud& cloud, const MultiCurve& curves,
                  Assignment& a, int threads = 0);

// Continuum serving structure: for every point, the nearest entity of the
// configuration, where entities are vertices and open segment interiors.
// Ties prefer vertices, then lower entity index.
struct Serving {
  // per point
  std::vector<std::uint8_t> on_edge;   // 1 if served by an edge interior
  std::vector<std::int64_t> entity;    // global vertex id or global edge id
  std::vector<double> dist2;           // squared distance to the serving entity
  std::vector<std::int64_t> nearest_vertex;  // global vertex id
  std::vector<double> vertex_dist2;          // squared distance to it
  // edge table: edge e joins global vertices edge_u[e], edge_u[e] + 1
  std::vector<std::int64_t> edge_u;
  std::vector<int> edge_comp;
};

Serving continuum_serving(const PointCloud& cloud, const MultiCurve& curves,
                          int threads = 0);

}  // namespace mppc
