#pragma once

#include <vector>

#include "core/energy.hpp"
#include "core/types.hpp"

namespace mppc {

// Topology-changing moves. Every move is proposed by its closed-form
// criterion and then validated by full recomputation: it is kept only if
// the continuum-consistent energy strictly decreases and the discrete
// energy does not increase, otherwise it is rolled back. Accepted moves are
// reported as events carrying both energy pairs.

struct EnergyPair {
  double discrete = 0.0;
  double continuum = 0.0;
};

EnergyPair both_energies(const PointCloud& cloud, const MultiCurve& curves,
                         const Params& params);

// Removes single edges whose removal strictly decreases the energy, then
// scans each component for removable edge sequences: a window of
// consecutive edges is grown until its cumulative length exceeds lambda2
// (or the component ends) and removed, together with its interior
// vertices, when that decreases the energy.
std::vector<TopoEvent> cut_pass(const PointCloud& cloud, MultiCurve& curves,
                                const Params& params, int iteration);

// Greedy reconnection: endpoint-endpoint candidates between distinct
// components, restricted to the nearest candidate pairs per endpoint, added
// in ascending energy-delta order while the delta is negative. An accepted
// connection is bundled with a subdivision of the new edge and one local
// relaxation so the discrete energy decreases along with the continuum one.
std::vector<TopoEvent> connect_pass(const PointCloud& cloud,
                                    MultiCurve& curves, const Params& params,
                                    int iteration, int inner_iters);

// Singleton management: spawn (detach a vertex whose centroid offset and
// released length pay for a new component), split (duplicate an overloaded
// singleton and polish with Lloyd k=2), remove (myopic criterion plus a
// posterior-validated variant that re-relaxes the remaining singletons),
// grow (turn a stretched singleton into a short polyline).
std::vector<TopoEvent> singleton_pass(const PointCloud& cloud,
                                      MultiCurve& curves,
                                      const Params& params, int iteration);

// Drops components whose projected mass is zero (never the last one).
std::vector<TopoEvent> remove_empty_components(const PointCloud& cloud,
                                               MultiCurve& curves,
                                               const Params& params,
                                               int iteration);

}  // namespace mppc
