#include "core/types.hpp"

#include <cmath>

#include "core/geometry.hpp"

namespace mppc {

double PointCloud::total_mass() const {
  double s = 0.0;
  for (double wi : w) s += wi;
  return s;
}

std::int64_t MultiCurve::total_vertices() const {
  std::int64_t m = 0;
  for (const auto& c : comps) m += static_cast<std::int64_t>(c.size()) / d;
  return m;
}

std::vector<std::int64_t> MultiCurve::offsets() const {
  std::vector<std::int64_t> off(comps.size() + 1, 0);
  for (std::size_t c = 0; c < comps.size(); ++c)
    off[c + 1] = off[c] + static_cast<std::int64_t>(comps[c].size()) / d;
  return off;
}

double MultiCurve::component_length(int c) const {
  double len = 0.0;
  std::int64_t m = comp_size(c);
  for (std::int64_t j = 0; j + 1 < m; ++j)
    len += dist(vertex(c, j), vertex(c, j + 1), d);
  return len;
}

double MultiCurve::total_length() const {
  double len = 0.0;
  for (int c = 0; c < component_count(); ++c) len += component_length(c);
  return len;
}

std::pair<int, std::int64_t> CurveIndex::locate(std::int64_t g) const {
  int lo = 0, hi = static_cast<int>(start.size()) - 1;
  while (hi - lo > 1) {
    int mid = (lo + hi) / 2;
    if (start[mid] <= g)
      lo = mid;
    else
      hi = mid;
  }
  return {lo, g - start[lo]};
}

const char* to_string(TopoEventKind k) {
  switch (k) {
    case TopoEventKind::CutEdge: return "cut_edge";
    case TopoEventKind::CutWindow: return "cut_window";
    case TopoEventKind::Connect: return "connect";
    case TopoEventKind::SpawnSingleton: return "spawn_singleton";
    case TopoEventKind::SplitSingleton: return "split_singleton";
    case TopoEventKind::RemoveSingleton: return "remove_singleton";
    case TopoEventKind::GrowSingleton: return "grow_singleton";
    case TopoEventKind::RemoveEmptyComponent: return "remove_empty_component";
  }
  return "unknown";
}

void validate_cloud(const PointCloud& cloud) {
  if (cloud.n < 1 || cloud.d < 1)
    fail(ErrorCode::EmptyCloud, "point cloud must have n >= 1 and d >= 1");
  if (cloud.xs.size() != static_cast<std::size_t>(cloud.n) * cloud.d ||
      cloud.w.size() != static_cast<std::size_t>(cloud.n))
    fail(ErrorCode::InvalidArgument, "point cloud buffers have wrong size");
  for (double x : cloud.xs)
    if (!std::isfinite(x))
      fail(ErrorCode::NonFinite, "non-finite coordinate in point cloud");
  double mass = 0.0;
  for (double wi : cloud.w) {
    if (!std::isfinite(wi))
      fail(ErrorCode::NonFinite, "non-finite weight in point cloud");
    if (wi < 0.0) fail(ErrorCode::NonFinite, "negative weight in point cloud");
    mass += wi;
  }
  if (mass <= 0.0) fail(ErrorCode::EmptyCloud, "total mass must be positive");
}

void validate_params(const Params& params) {
  if (!(params.lambda1 > 0.0))
    fail(ErrorCode::NonPositiveParam, "lambda1 must be > 0");
  if (!(params.lambda2 > 0.0))
    fail(ErrorCode::NonPositiveParam, "lambda2 must be > 0");
  if (!(params.p >= 1.0)) fail(ErrorCode::NonPositiveParam, "p must be >= 1");
  if (params.rho != 0.0 && !(params.rho > 0.0))
    fail(ErrorCode::NonPositiveParam, "rho must be > 0 (or 0 for automatic)");
  if (params.top_period < 1 || params.reparam_period < 1)
    fail(ErrorCode::NonPositiveParam, "schedule periods must be >= 1");
  if (params.inner_admm_iters < 1 || params.max_inner_admm_iters < 1)
    fail(ErrorCode::NonPositiveParam, "ADMM iteration counts must be >= 1");
  if (params.max_outer_iters < 1)
    fail(ErrorCode::NonPositiveParam, "max_outer_iters must be >= 1");
  if (!(params.energy_rtol > 0.0))
    fail(ErrorCode::NonPositiveParam, "energy_rtol must be > 0");
}

void validate(const PointCloud& cloud, const Params& params) {
  validate_cloud(cloud);
  validate_params(params);
}

void validate_curves(const MultiCurve& curves, int expected_dim) {
  if (curves.component_count() < 1)
    fail(ErrorCode::InvalidArgument, "curve configuration must have k >= 1");
  if (curves.d != expected_dim)
    fail(ErrorCode::InvalidArgument, "curve dimension does not match cloud");
  for (int c = 0; c < curves.component_count(); ++c) {
    if (curves.comp_size(c) < 1)
      fail(ErrorCode::InvalidArgument, "every component needs m_c >= 1");
    for (double x : curves.comps[c])
      if (!std::isfinite(x))
        fail(ErrorCode::NonFinite, "non-finite vertex coordinate");
  }
}

PointCloud normalize(const PointCloud& cloud) {
  double mass = cloud.total_mass();
  if (!(mass > 0.0))
    fail(ErrorCode::EmptyCloud, "cannot normalize a zero-mass cloud");
  PointCloud out = cloud;
  for (double& wi : out.w) wi /= mass;
  return out;
}

}  // namespace mppc
