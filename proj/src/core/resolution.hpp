#pragma once

#include <cstdint>
#include <vector>

#include "core/types.hpp"

namespace mppc {

// Re-spaces the vertices of one component along its own polyline so that
// spacing is proportional to (local projected mass per unit length)^(-1/2):
// the square-root-density integral between consecutive vertices is
// equalized (quantile placement). Endpoints and vertex count unchanged;
// output vertices lie on the input polyline. Inputs with m < 3, with zero
// length, or with no projected mass anywhere are returned unchanged.
// Returns true if any vertex moved.
bool reparametrize(std::vector<double>& vertices, int d,
                   const std::vector<double>& vertex_mass);

// Inserts midpoint vertices (one at a time, on the longer edge adjacent to
// the vertex maximizing l_i * mass_i) while the mean edge length exceeds
// lambda2 / 2 -- or, when the optional turning-angle check is on, while the
// mean turning angle exceeds the threshold -- and the vertex count is below
// max(8, 4 * length / lambda2). Newly inserted vertices carry zero mass
// until the next projection pass. Returns the number of insertions.
int refine(std::vector<double>& vertices, int d,
           std::vector<double>& vertex_mass, const Params& params);

}  // namespace mppc
