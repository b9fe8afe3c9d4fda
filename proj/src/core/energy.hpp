#pragma once

#include <cstdint>
#include <vector>

#include "core/projection.hpp"
#include "core/types.hpp"

namespace mppc {

// Energy contribution of an edge or of a sequence of consecutive edges,
// measured as (energy with the edges present) - (energy without them).
// A positive value means removal decreases the energy; a negative value
// means adding the edge decreases it.
struct EdgeDelta {
  double value = 0.0;
  double length_term = 0.0;     // lambda1 * edge length(s)
  double component_term = 0.0;  // lambda1 * lambda2
  double fidelity_gain = 0.0;   // >= 0; value = length - component - gain
  std::vector<std::int64_t> points;  // contributing point indices
};

// Discrete energy: nearest-vertex fidelity + lambda1 * length
// + lambda1 * lambda2 * (k - 1). Requires p = 2.
EnergyBreakdown discrete_energy(const PointCloud& cloud,
                                const MultiCurve& curves,
                                const Params& params);
// Same, reusing a current assignment (must match curves).
EnergyBreakdown discrete_energy_with(const PointCloud& cloud,
                                     const MultiCurve& curves,
                                     const Params& params,
                                     const Assignment& a);

// Sum of w_i * d(x_i, union of segments and singleton vertices)^2.
double continuum_fidelity(const PointCloud& cloud, const MultiCurve& curves,
                          int threads = 0);
double continuum_fidelity_with(const PointCloud& cloud, const Serving& s);

// continuum fidelity + lambda1 * length + lambda1 * lambda2 * (k - 1)
double continuum_total(const PointCloud& cloud, const MultiCurve& curves,
                       const Params& params, int threads = 0);

// Single edge {gi, gj}: either an existing edge (adjacent vertices of one
// component) or a candidate edge between endpoints of distinct components.
// For an existing edge the contributing set is the points served by the
// edge interior; for a candidate edge it is the points whose interior
// orthogonal foot lies strictly closer than their current vertex distance.
EdgeDelta edge_delta(const PointCloud& cloud, const MultiCurve& curves,
                     const Params& params, std::int64_t gi, std::int64_t gj,
                     const Serving* serving = nullptr);

// Sequence of k consecutive edges starting at global vertex gi (all within
// one component); interior vertices count as removed with the sequence.
EdgeDelta edge_sequence_delta(const PointCloud& cloud,
                              const MultiCurve& curves, const Params& params,
                              std::int64_t gi, std::int64_t k_edges,
                              const Serving* serving = nullptr);

}  // namespace mppc
