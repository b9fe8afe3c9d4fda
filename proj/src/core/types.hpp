#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "core/error.hpp"

namespace mppc {

// Weighted point cloud: n points in R^d, row-major coordinates.
struct PointCloud {
  std::int64_t n = 0;
  int d = 0;
  std::vector<double> xs;  // n * d
  std::vector<double> w;   // n

  const double* point(std::int64_t i) const { return xs.data() + i * d; }
  double* point(std::int64_t i) { return xs.data() + i * d; }
  double total_mass() const;
};

// Ordered collection of polyline components. A component with a single
// vertex is a singleton.
struct MultiCurve {
  int d = 0;
  std::vector<std::vector<double>> comps;  // each m_c * d

  int component_count() const { return static_cast<int>(comps.size()); }
  std::int64_t comp_size(int c) const {
    return static_cast<std::int64_t>(comps[c].size()) / d;
  }
  std::int64_t total_vertices() const;
  bool singleton(int c) const { return comp_size(c) == 1; }

  const double* vertex(int c, std::int64_t j) const {
    return comps[c].data() + j * d;
  }
  double* vertex(int c, std::int64_t j) { return comps[c].data() + j * d; }

  // start offsets of each component in the global vertex numbering
  // (size k + 1, last entry = total vertex count)
  std::vector<std::int64_t> offsets() const;

  double total_length() const;
  double component_length(int c) const;
};

// Maps global vertex ids to (component, local index) and back.
struct CurveIndex {
  std::vector<std::int64_t> start;  // k + 1

  explicit CurveIndex(const MultiCurve& mc) : start(mc.offsets()) {}

  std::pair<int, std::int64_t> locate(std::int64_t g) const;
  std::int64_t global(int c, std::int64_t j) const { return start[c] + j; }
  std::int64_t total() const { return start.back(); }
};

struct Params {
  double lambda1 = 0.1;   // length weight
  double lambda2 = 1.0;   // per-component weight, length units
  double p = 2.0;         // fidelity exponent; the solver requires p = 2
  double rho = 0.0;       // ADMM penalty; 0 selects the mass-based default
  int top_period = 10;
  int reparam_period = 5;
  int inner_admm_iters = 1;
  int max_inner_admm_iters = 64;
  int max_outer_iters = 2000;
  double energy_rtol = 1e-6;
  bool fix_endpoints = false;
  bool turning_angle_check = false;
  double turning_angle_threshold = 0.3141592653589793;  // pi / 10
  bool ppc_only = false;  // disable all topology passes
  std::uint64_t seed = 0;
  int threads = 0;  // 0 = all cores
};

struct EnergyBreakdown {
  double fidelity = 0.0;
  double length = 0.0;      // lambda1 applied
  double components = 0.0;  // lambda1 * lambda2 * (k - 1)
  double total = 0.0;       // fidelity + length + components, in that order

  static EnergyBreakdown make(double fid, double len, double comp) {
    EnergyBreakdown e;
    e.fidelity = fid;
    e.length = len;
    e.components = comp;
    e.total = fid + len + comp;
    return e;
  }
};

enum class TopoEventKind {
  CutEdge,
  CutWindow,
  Connect,
  SpawnSingleton,
  SplitSingleton,
  RemoveSingleton,
  GrowSingleton,
  RemoveEmptyComponent,
};

const char* to_string(TopoEventKind k);

struct TopoEvent {
  TopoEventKind kind{};
  int iteration = 0;
  double energy_before = 0.0;  // discrete energy
  double energy_after = 0.0;
  double continuum_before = 0.0;
  double continuum_after = 0.0;
};

struct FitReport {
  EnergyBreakdown final_energy;
  int outer_iterations = 0;
  bool converged = false;
  std::vector<double> energy_history;       // discrete energy per iteration
  std::vector<int> refinement_iterations;   // 1-based, exempt from monotonicity
  std::vector<TopoEvent> events;
  double wall_time_seconds = 0.0;
};

// Throws on any violated invariant: NonFinite, NonPositiveParam, EmptyCloud.
void validate(const PointCloud& cloud, const Params& params);
void validate_cloud(const PointCloud& cloud);
void validate_params(const Params& params);
void validate_curves(const MultiCurve& curves, int expected_dim);

// Scales weights so the total mass is 1. Coordinates unchanged.
PointCloud normalize(const PointCloud& cloud);

}  // namespace mppc
