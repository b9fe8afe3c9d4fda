#include "core/energy.hpp"

#include <algorithm>
#include <cmath>

#include "core/parallel.hpp"

namespace mppc {

namespace {

void require_p2(const Params& params) {
  if (params.p != 2.0)
    fail(ErrorCode::UnsupportedExponent,
         "the discrete solver supports p = 2 only");
}

double fidelity_from(const PointCloud& cloud, const Assignment& a) {
  double fid = 0.0;
  for (std::int64_t i = 0; i < cloud.n; ++i) fid += cloud.w[i] * a.dist2[i];
  return fid;
}

}  // namespace

EnergyBreakdown discrete_energy_with(const PointCloud& cloud,
                                     const MultiCurve& curves,
                                     const Params& params,
                                     const Assignment& a) {
  require_p2(params);
  double fid = fidelity_from(cloud, a);
  double len = params.lambda1 * curves.total_length();
  double comp =
      params.lambda1 * params.lambda2 * (curves.component_count() - 1);
  return EnergyBreakdown::make(fid, len, comp);
}

EnergyBreakdown discrete_energy(const PointCloud& cloud,
                                const MultiCurve& curves,
                                const Params& params) {
  require_p2(params);
  Assignment a = assign(cloud, curves, params.threads);
  return discrete_energy_with(cloud, curves, params, a);
}

double continuum_fidelity_with(const PointCloud& cloud, const Serving& s) {
  double fid = 0.0;
  for (std::int64_t i = 0; i < cloud.n; ++i) fid += cloud.w[i] * s.dist2[i];
  return fid;
}

double continuum_fidelity(const PointCloud& cloud, const MultiCurve& curves,
                          int threads) {
  Serving s = continuum_serving(cloud, curves, threads);
  return continuum_fidelity_with(cloud, s);
}

double continuum_total(const PointCloud& cloud, const MultiCurve& curves,
                       const Params& params, int threads) {
  return continuum_fidelity(cloud, curves, threads) +
         params.lambda1 * curves.total_length() +
         params.lambda1 * params.lambda2 * (curves.component_count() - 1);
}

EdgeDelta edge_delta(const PointCloud& cloud, const MultiCurve& curves,
                     const Params& params, std::int64_t gi, std::int64_t gj,
                     const Serving* serving) {
  const int d = cloud.d;
  CurveIndex idx(curves);
  if (gi < 0 || gj < 0 || gi >= idx.total() || gj >= idx.total() || gi == gj)
    fail(ErrorCode::InvalidEdge, "edge vertex ids out of range");
  auto [ci, li] = idx.locate(gi);
  auto [cj, lj] = idx.locate(gj);

  bool existing = (ci == cj) && (std::llabs(lj - li) == 1);
  bool candidate = false;
  if (!existing) {
    auto is_end = [&](int c, std::int64_t l) {
      return l == 0 || l == curves.comp_size(c) - 1;
    };
    candidate = (ci != cj) && is_end(ci, li) && is_end(cj, lj);
    if (!candidate)
      fail(ErrorCode::InvalidEdge,
           "edge must be adjacent within a component or join endpoints of "
           "two distinct components");
  }

  const double* a = curves.vertex(ci, li);
  const double* b = curves.vertex(cj, lj);
  double len = dist(a, b, d);

  Serving local;
  const Serving* s = serving;
  if (s == nullptr) {
    local = continuum_serving(cloud, curves, params.threads);
    s = &local;
  }

  std::int64_t edge_id = -1;
  if (existing) {
    std::int64_t u = std::min(gi, gj);
    for (std::size_t e = 0; e < s->edge_u.size(); ++e)
      if (s->edge_u[e] == u) {
        edge_id = static_cast<std::int64_t>(e);
        break;
      }
  }

  EdgeDelta out;
  out.length_term = params.lambda1 * len;
  out.component_term = params.lambda1 * params.lambda2;
  for (std::int64_t i = 0; i < cloud.n; ++i) {
    double t;  // foot parameter measured from vertex gi
    if (existing) {
      if (!(s->on_edge[i] && s->entity[i] == edge_id)) continue;
      SegmentFoot f = segment_foot(cloud.point(i), a, b, d);
      t = f.t_raw;
    } else {
      SegmentFoot f = segment_foot(cloud.point(i), a, b, d);
      if (!f.interior) continue;
      if (!(f.distance * f.distance < s->vertex_dist2[i])) continue;
      t = f.t_raw;
    }
    double along = std::min(std::abs(t), std::abs(1.0 - t)) * len;
    out.fidelity_gain += cloud.w[i] * along * along;
    out.points.push_back(i);
  }
  out.value = out.length_term - out.component_term - out.fidelity_gain;
  return out;
}

EdgeDelta edge_sequence_delta(const PointCloud& cloud,
                              const MultiCurve& curves, const Params& params,
                              std::int64_t gi, std::int64_t k_edges,
                              const Serving* serving) {
  const int d = cloud.d;
  CurveIndex idx(curves);
  if (gi < 0 || gi >= idx.total())
    fail(ErrorCode::InvalidRange, "start vertex out of range");
  auto [c, l] = idx.locate(gi);
  std::int64_t m = curves.comp_size(c);
  if (k_edges < 1 || l + k_edges > m - 1)
    fail(ErrorCode::InvalidRange,
         "edge sequence must consist of consecutive edges of one component");

  Serving local;
  const Serving* s = serving;
  if (s == nullptr) {
    local = continuum_serving(cloud, curves, params.threads);
    s = &local;
  }

  // global edge id of the component's first edge
  std::int64_t base = -1;
  for (std::size_t e = 0; e < s->edge_u.size(); ++e)
    if (s->edge_comp[e] == c) {
      base = static_cast<std::int64_t>(e);
      break;
    }

  const double* seq_a = curves.vertex(c, l);
  const double* seq_b = curves.vertex(c, l + k_edges);

  EdgeDelta out;
  double total_len = 0.0;
  for (std::int64_t e = 0; e < k_edges; ++e)
    total_len += dist(curves.vertex(c, l + e), curves.vertex(c, l + e + 1), d);
  out.length_term = params.lambda1 * total_len;
  out.component_term = params.lambda1 * params.lambda2;

  for (std::int64_t i = 0; i < cloud.n; ++i) {
    if (!s->on_edge[i]) continue;
    std::int64_t e = s->entity[i];
    if (e < base + l || e >= base + l + k_edges) continue;
    double drop2 = s->dist2[i];  // squared distance to the orthogonal foot
    double to_ends2 = std::min(dist2(cloud.point(i), seq_a, d),
                               dist2(cloud.point(i), seq_b, d));
    out.fidelity_gain += cloud.w[i] * (to_ends2 - drop2);
    out.points.push_back(i);
  }
  out.value = out.length_term - out.component_term - out.fidelity_gain;
  return out;
}

}  // namespace mppc
