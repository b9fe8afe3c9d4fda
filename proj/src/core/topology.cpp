#include "core/topology.hpp"

#include <algorithm>
#include <cmath>

#include "core/admm.hpp"
#include "core/pca.hpp"
#include "core/projection.hpp"

namespace mppc {

namespace {

constexpr int kConnectCandidatesPerEndpoint = 10;
constexpr int kMaxAcceptsPerStage = 64;

double slack(double e) { return 1e-12 * std::max(1.0, std::abs(e)); }

bool accepted(const EnergyPair& before, const EnergyPair& after) {
  return after.continuum < before.continuum &&
         after.discrete <= before.discrete + slack(before.discrete);
}

TopoEvent make_event(TopoEventKind kind, int iteration,
                     const EnergyPair& before, const EnergyPair& after) {
  TopoEvent ev;
  ev.kind = kind;
  ev.iteration = iteration;
  ev.energy_before = before.discrete;
  ev.energy_after = after.discrete;
  ev.continuum_before = before.continuum;
  ev.continuum_after = after.continuum;
  return ev;
}

std::vector<double> flat_vertices(const MultiCurve& mc) {
  std::vector<double> v;
  v.reserve(mc.total_vertices() * mc.d);
  for (int c = 0; c < mc.component_count(); ++c)
    v.insert(v.end(), mc.comps[c].begin(), mc.comps[c].end());
  return v;
}

// split component c at edge (j, j+1); the suffix becomes a new component
// appended at the end
void split_component(MultiCurve& mc, int c, std::int64_t j) {
  const int d = mc.d;
  std::vector<double>& v = mc.comps[c];
  std::vector<double> suffix(v.begin() + (j + 1) * d, v.end());
  v.resize((j + 1) * d);
  mc.comps.push_back(std::move(suffix));
}

// remove edges j .. j+k-1 together with the interior vertices
void remove_window(MultiCurve& mc, int c, std::int64_t j, std::int64_t k) {
  const int d = mc.d;
  std::vector<double>& v = mc.comps[c];
  std::vector<double> suffix(v.begin() + (j + k) * d, v.end());
  v.resize((j + 1) * d);
  mc.comps.push_back(std::move(suffix));
}

struct Endpoint {
  int comp;
  std::int64_t local;
  std::int64_t global;
};

std::vector<Endpoint> endpoints_of(const MultiCurve& mc) {
  CurveIndex idx(mc);
  std::vector<Endpoint> eps;
  for (int c = 0; c < mc.component_count(); ++c) {
    eps.push_back({c, 0, idx.global(c, 0)});
    if (mc.comp_size(c) > 1)
      eps.push_back(
          {c, mc.comp_size(c) - 1, idx.global(c, mc.comp_size(c) - 1)});
  }
  return eps;
}

// merge so that endpoint (ca, la) joins endpoint (cb, lb); the merged
// polyline is comps[ca] oriented tail-first, then comps[cb] head-first,
// stored at index min(ca, cb)
void merge_components(MultiCurve& mc, int ca, std::int64_t la, int cb,
                      std::int64_t lb) {
  const int d = mc.d;
  std::vector<double> a = mc.comps[ca];
  std::vector<double> b = mc.comps[cb];
  auto reverse_comp = [&](std::vector<double>& v) {
    std::int64_t m = static_cast<std::int64_t>(v.size()) / d;
    for (std::int64_t j = 0; j < m / 2; ++j)
      for (int t = 0; t < d; ++t)
        std::swap(v[j * d + t], v[(m - 1 - j) * d + t]);
  };
  if (la == 0) reverse_comp(a);
  if (lb != 0) reverse_comp(b);
  a.insert(a.end(), b.begin(), b.end());
  int keep = std::min(ca, cb), drop = std::max(ca, cb);
  mc.comps[keep] = std::move(a);
  mc.comps.erase(mc.comps.begin() + drop);
}

void subdivide_edge(MultiCurve& mc, int c, std::int64_t j,
                    std::int64_t pieces) {
  if (pieces < 2) return;
  const int d = mc.d;
  std::vector<double>& v = mc.comps[c];
  std::vector<double> mids;
  const double* a = v.data() + j * d;
  const double* b = v.data() + (j + 1) * d;
  for (std::int64_t s = 1; s < pieces; ++s) {
    double f = static_cast<double>(s) / static_cast<double>(pieces);
    for (int t = 0; t < d; ++t) mids.push_back(a[t] + f * (b[t] - a[t]));
  }
  v.insert(v.begin() + (j + 1) * d, mids.begin(), mids.end());
}

// one relaxation of a single component against fresh projections
void relax_component(const PointCloud& cloud, MultiCurve& mc, int c,
                     const Params& params, int cycles) {
  Assignment a = assign(cloud, mc, params.threads);
  vertex_stats(cloud, mc, a, params.threads);
  CurveIndex idx(mc);
  std::int64_t m = mc.comp_size(c);
  std::int64_t g0 = idx.global(c, 0);
  if (m == 1) {
    if (!params.fix_endpoints && a.mass[g0] > 0.0)
      for (int t = 0; t < cloud.d; ++t)
        mc.comps[c][t] = a.centroid[g0 * cloud.d + t];
    return;
  }
  bool any = false;
  for (std::int64_t j = 0; j < m; ++j)
    if (a.mass[g0 + j] > 0.0) any = true;
  if (!any && !params.fix_endpoints) return;
  RelaxResult r = relax(a.mass.data() + g0, a.centroid.data() + g0 * cloud.d,
                        mc.comps[c].data(), m, cloud.d, params.lambda1,
                        params.rho, cycles, params.fix_endpoints);
  mc.comps[c] = std::move(r.y);
}

void lloyd2(const PointCloud& cloud, const std::vector<std::int64_t>& subset,
            std::vector<double>& c1, std::vector<double>& c2, int iters) {
  const int d = cloud.d;
  for (int it = 0; it < iters; ++it) {
    double m1 = 0.0, m2 = 0.0;
    std::vector<double> s1(d, 0.0), s2(d, 0.0);
    for (std::int64_t i : subset) {
      const double* x = cloud.point(i);
      bool first = dist2(x, c1.data(), d) <= dist2(x, c2.data(), d);
      double wi = cloud.w[i];
      if (first) {
        m1 += wi;
        for (int t = 0; t < d; ++t) s1[t] += wi * x[t];
      } else {
        m2 += wi;
        for (int t = 0; t < d; ++t) s2[t] += wi * x[t];
      }
    }
    if (m1 > 0.0)
      for (int t = 0; t < d; ++t) c1[t] = s1[t] / m1;
    if (m2 > 0.0)
      for (int t = 0; t < d; ++t) c2[t] = s2[t] / m2;
  }
}

}  // namespace

EnergyPair both_energies(const PointCloud& cloud, const MultiCurve& curves,
                         const Params& params) {
  EnergyPair e;
  e.discrete = discrete_energy(cloud, curves, params).total;
  e.continuum = continuum_total(cloud, curves, params, params.threads);
  return e;
}

std::vector<TopoEvent> cut_pass(const PointCloud& cloud, MultiCurve& curves,
                                const Params& params, int iteration) {
  std::vector<TopoEvent> events;
  EnergyPair base = both_energies(cloud, curves, params);

  // single edges, to a fixed point
  bool changed = true;
  int guard = 0;
  while (changed && guard++ < kMaxAcceptsPerStage) {
    changed = false;
    Serving serving = continuum_serving(cloud, curves, params.threads);
    CurveIndex idx(curves);
    for (int c = 0; c < curves.component_count() && !changed; ++c) {
      for (std::int64_t j = 0; j + 1 < curves.comp_size(c); ++j) {
        EdgeDelta delta = edge_delta(cloud, curves, params, idx.global(c, j),
                                     idx.global(c, j + 1), &serving);
        if (!(delta.value > 0.0)) continue;
        MultiCurve snapshot = curves;
        split_component(curves, c, j);
        EnergyPair after = both_energies(cloud, curves, params);
        if (accepted(base, after)) {
          events.push_back(
              make_event(TopoEventKind::CutEdge, iteration, base, after));
          base = after;
          changed = true;
          break;
        }
        curves = std::move(snapshot);
      }
    }
  }

  // edge sequences: grow a window until its length exceeds lambda2 (or the
  // component ends), remove it when that pays; suffix components created by
  // a removal are appended and scanned in turn
  for (int c = 0; c < curves.component_count(); ++c) {
    Serving serving = continuum_serving(cloud, curves, params.threads);
    std::int64_t i = 0;
    while (i < curves.comp_size(c) - 1) {
      const int d = curves.d;
      std::int64_t m = curves.comp_size(c);
      double len = dist(curves.vertex(c, i), curves.vertex(c, i + 1), d);
      std::int64_t k = 1;
      while (len <= params.lambda2 && i + k < m - 1) {
        len += dist(curves.vertex(c, i + k), curves.vertex(c, i + k + 1), d);
        ++k;
      }
      CurveIndex idx(curves);
      EdgeDelta delta = edge_sequence_delta(cloud, curves, params,
                                            idx.global(c, i), k, &serving);
      if (delta.value > 0.0) {
        MultiCurve snapshot = curves;
        remove_window(curves, c, i, k);
        EnergyPair after = both_energies(cloud, curves, params);
        if (accepted(base, after)) {
          events.push_back(
              make_event(TopoEventKind::CutWindow, iteration, base, after));
          base = after;
          break;  // component c now ends here; the suffix is scanned later
        }
        curves = std::move(snapshot);
      }
      ++i;
    }
  }
  return events;
}

std::vector<TopoEvent> connect_pass(const PointCloud& cloud,
                                    MultiCurve& curves, const Params& params,
                                    int iteration, int inner_iters) {
  std::vector<TopoEvent> events;
  EnergyPair base = both_energies(cloud, curves, params);
  std::vector<std::pair<std::int64_t, std::int64_t>> dead;

  int guard = 0;
  while (guard++ < kMaxAcceptsPerStage) {
    if (curves.component_count() < 2) break;
    Serving serving = continuum_serving(cloud, curves, params.threads);
    std::vector<Endpoint> eps = endpoints_of(curves);

    std::vector<std::pair<std::int64_t, std::int64_t>> cands;
    for (const Endpoint& a : eps) {
      std::vector<std::pair<double, std::int64_t>> near;
      for (std::size_t o = 0; o < eps.size(); ++o) {
        if (eps[o].comp == a.comp) continue;
        double dd = dist2(curves.vertex(a.comp, a.local),
                          curves.vertex(eps[o].comp, eps[o].local), curves.d);
        near.push_back({dd, static_cast<std::int64_t>(o)});
      }
      std::sort(near.begin(), near.end());
      if (near.size() > kConnectCandidatesPerEndpoint)
        near.resize(kConnectCandidatesPerEndpoint);
      for (auto& [dd, o] : near)
        cands.push_back({std::min(a.global, eps[o].global),
                         std::max(a.global, eps[o].global)});
    }
    std::sort(cands.begin(), cands.end());
    cands.erase(std::unique(cands.begin(), cands.end()), cands.end());

    struct Scored {
      double value;
      std::int64_t g1, g2;
    };
    std::vector<Scored> scored;
    for (auto& [g1, g2] : cands) {
      if (std::find(dead.begin(), dead.end(), std::make_pair(g1, g2)) !=
          dead.end())
        continue;
      EdgeDelta delta = edge_delta(cloud, curves, params, g1, g2, &serving);
      if (delta.value < 0.0) scored.push_back({delta.value, g1, g2});
    }
    std::sort(scored.begin(), scored.end(),
              [](const Scored& a, const Scored& b) {
                if (a.value != b.value) return a.value < b.value;
                if (a.g1 != b.g1) return a.g1 < b.g1;
                return a.g2 < b.g2;
              });
    if (scored.empty()) break;

    bool applied = false;
    CurveIndex idx(curves);
    for (const Scored& s : scored) {
      auto [ca, la] = idx.locate(s.g1);
      auto [cb, lb] = idx.locate(s.g2);
      MultiCurve snapshot = curves;
      std::int64_t first_size = curves.comp_size(ca);
      int keep = std::min(ca, cb);
      merge_components(curves, ca, la, cb, lb);
      double edge_len = dist(curves.vertex(keep, first_size - 1),
                             curves.vertex(keep, first_size), curves.d);
      std::int64_t pieces = static_cast<std::int64_t>(
          std::ceil(edge_len / (params.lambda2 / 2.0)));
      subdivide_edge(curves, keep, first_size - 1, pieces);
      relax_component(cloud, curves, keep, params, std::max(inner_iters, 2));
      EnergyPair after = both_energies(cloud, curves, params);
      if (accepted(base, after)) {
        events.push_back(
            make_event(TopoEventKind::Connect, iteration, base, after));
        base = after;
        applied = true;
        break;
      }
      curves = std::move(snapshot);
      dead.push_back({s.g1, s.g2});
    }
    if (!applied) break;
    dead.clear();  // vertex ids shift after a merge
  }
  return events;
}

std::vector<TopoEvent> singleton_pass(const PointCloud& cloud,
                                      MultiCurve& curves,
                                      const Params& params, int iteration) {
  const int d = cloud.d;
  std::vector<TopoEvent> events;
  EnergyPair base = both_energies(cloud, curves, params);
  const double l1l2 = params.lambda1 * params.lambda2;

  // (a) spawn: detach a vertex to a singleton at its centroid when the
  // centroid offset plus the released length pays for a new component
  for (int guard = 0; guard < kMaxAcceptsPerStage; ++guard) {
    Assignment a = assign(cloud, curves, params.threads);
    vertex_stats(cloud, curves, a, params.threads);
    CurveIndex idx(curves);
    bool applied = false;
    for (int c = 0; c < curves.component_count() && !applied; ++c) {
      std::int64_t m = curves.comp_size(c);
      if (m < 2) continue;
      for (std::int64_t j = 0; j < m; ++j) {
        std::int64_t g = idx.global(c, j);
        const double* y = curves.vertex(c, j);
        std::int64_t jp = std::max<std::int64_t>(0, j - 1);
        std::int64_t jn = std::min<std::int64_t>(m - 1, j + 1);
        double released = dist(y, curves.vertex(c, jp), d) +
                          dist(y, curves.vertex(c, jn), d) -
                          dist(curves.vertex(c, jp), curves.vertex(c, jn), d);
        double pull = 0.0;
        std::vector<double> target(y, y + d);
        if (a.mass[g] > 0.0) {
          pull = a.mass[g] * dist2(&a.centroid[g * d], y, d);
          target.assign(&a.centroid[g * d], &a.centroid[g * d] + d);
        }
        if (!(l1l2 < pull + params.lambda1 * released)) continue;

        MultiCurve snapshot = curves;
        std::vector<double>& v = curves.comps[c];
        v.erase(v.begin() + j * d, v.begin() + (j + 1) * d);
        curves.comps.push_back(target);
        EnergyPair after = both_energies(cloud, curves, params);
        if (accepted(base, after)) {
          events.push_back(make_event(TopoEventKind::SpawnSingleton,
                                      iteration, base, after));
          base = after;
          applied = true;
          break;
        }
        curves = std::move(snapshot);
      }
    }
    if (!applied) break;
  }

  // (b) split: a singleton whose fidelity exceeds lambda1*lambda2 is
  // perturbed toward its farthest point, mirrored, and polished by Lloyd
  for (int guard = 0; guard < kMaxAcceptsPerStage; ++guard) {
    Assignment a = assign(cloud, curves, params.threads);
    CurveIndex idx(curves);
    bool applied = false;
    for (int c = 0; c < curves.component_count() && !applied; ++c) {
      if (curves.comp_size(c) != 1) continue;
      std::int64_t g = idx.global(c, 0);
      const double* y = curves.vertex(c, 0);
      std::vector<std::int64_t> mine;
      double fid = 0.0;
      for (std::int64_t i = 0; i < cloud.n; ++i)
        if (a.owner[i] == g) {
          mine.push_back(i);
          fid += cloud.w[i] * a.dist2[i];
        }
      if (!(fid > l1l2) || mine.size() < 2) continue;

      std::int64_t far = mine[0];
      for (std::int64_t i : mine)
        if (a.dist2[i] > a.dist2[far]) far = i;
      std::vector<double> c1(d), c2(d);
      for (int t = 0; t < d; ++t) {
        double dir = cloud.point(far)[t] - y[t];
        c1[t] = y[t] + 0.25 * dir;
        c2[t] = y[t] - 0.25 * dir;
      }
      lloyd2(cloud, mine, c1, c2, 5);

      MultiCurve snapshot = curves;
      curves.comps[c] = c1;
      curves.comps.push_back(c2);
      EnergyPair after = both_energies(cloud, curves, params);
      if (accepted(base, after)) {
        events.push_back(make_event(TopoEventKind::SplitSingleton, iteration,
                                    base, after));
        base = after;
        applied = true;
        break;
      }
      curves = std::move(snapshot);
    }
    if (!applied) break;
  }

  // (c) remove: exact myopic criterion, plus a posterior-validated variant
  // that lets the surviving singletons re-relax before judging; the latter
  // is attempted only near the threshold
  for (int guard = 0; guard < kMaxAcceptsPerStage; ++guard) {
    if (curves.component_count() < 2) break;
    Assignment a = assign(cloud, curves, params.threads);
    CurveIndex idx(curves);
    std::vector<double> fv = flat_vertices(curves);
    std::int64_t mtot = curves.total_vertices();

    bool applied = false;
    for (int c = 0; c < curves.component_count() && !applied; ++c) {
      if (curves.comp_size(c) != 1) continue;
      if (curves.component_count() < 2) break;
      std::int64_t g = idx.global(c, 0);

      double cost = 0.0;  // fidelity increase under nearest-other-vertex
      for (std::int64_t i = 0; i < cloud.n; ++i) {
        if (a.owner[i] != g) continue;
        const double* x = cloud.point(i);
        double best = -1.0;
        for (std::int64_t o = 0; o < mtot; ++o) {
          if (o == g) continue;
          double dd = dist2(x, fv.data() + o * d, d);
          if (best < 0.0 || dd < best) best = dd;
        }
        cost += cloud.w[i] * (best - a.dist2[i]);
      }

      bool try_myopic = l1l2 > cost;
      bool try_relaxed = !try_myopic && cost <= 4.0 * l1l2;
      if (!try_myopic && !try_relaxed) continue;

      MultiCurve snapshot = curves;
      curves.comps.erase(curves.comps.begin() + c);
      if (try_relaxed) {
        // Lloyd-style polish of the remaining singletons, polylines frozen
        for (int round = 0; round < 30; ++round) {
          Assignment ta = assign(cloud, curves, params.threads);
          vertex_stats(cloud, curves, ta, params.threads);
          CurveIndex tix(curves);
          bool moved = false;
          for (int tc = 0; tc < curves.component_count(); ++tc) {
            if (curves.comp_size(tc) != 1) continue;
            std::int64_t tg = tix.global(tc, 0);
            if (!(ta.mass[tg] > 0.0)) continue;
            for (int t = 0; t < d; ++t) {
              double nv = ta.centroid[tg * d + t];
              if (curves.comps[tc][t] != nv) {
                curves.comps[tc][t] = nv;
                moved = true;
              }
            }
          }
          if (!moved) break;
        }
      }
      EnergyPair after = both_energies(cloud, curves, params);
      if (accepted(base, after)) {
        events.push_back(make_event(TopoEventKind::RemoveSingleton, iteration,
                                    base, after));
        base = after;
        applied = true;
        break;
      }
      curves = std::move(snapshot);
    }
    if (!applied) break;
  }

  // (d) grow: add a neighbor vertex at the centroid of the half of the
  // assigned mass farthest along the principal direction
  for (int guard = 0; guard < kMaxAcceptsPerStage; ++guard) {
    Assignment a = assign(cloud, curves, params.threads);
    vertex_stats(cloud, curves, a, params.threads);
    CurveIndex idx(curves);
    bool applied = false;
    for (int c = 0; c < curves.component_count() && !applied; ++c) {
      if (curves.comp_size(c) != 1) continue;
      std::int64_t g = idx.global(c, 0);
      if (!(a.mass[g] > 0.0)) continue;
      const double* y = curves.vertex(c, 0);
      std::vector<std::int64_t> mine;
      double spread = 0.0;
      for (std::int64_t i = 0; i < cloud.n; ++i)
        if (a.owner[i] == g) {
          mine.push_back(i);
          spread += cloud.w[i] * std::sqrt(a.dist2[i]);
        }
      if (!(spread > params.lambda1 / a.mass[g]) || mine.size() < 2) continue;

      std::vector<double> sub_x, sub_w;
      for (std::int64_t i : mine) {
        sub_w.push_back(cloud.w[i]);
        for (int t = 0; t < d; ++t) sub_x.push_back(cloud.point(i)[t]);
      }
      std::vector<double> axis =
          principal_axis(sub_x.data(), sub_w.data(),
                         static_cast<std::int64_t>(mine.size()), d);
      std::vector<std::pair<double, std::int64_t>> proj;
      for (std::size_t s = 0; s < mine.size(); ++s) {
        double pr = 0.0;
        for (int t = 0; t < d; ++t) pr += (sub_x[s * d + t] - y[t]) * axis[t];
        proj.push_back({pr, static_cast<std::int64_t>(s)});
      }
      std::sort(proj.begin(), proj.end());
      double half = 0.0;
      for (double wi : sub_w) half += wi;
      half /= 2.0;
      double acc = 0.0, den = 0.0;
      std::vector<double> num(d, 0.0);
      for (auto it = proj.rbegin(); it != proj.rend(); ++it) {
        if (acc >= half && den > 0.0) break;
        std::int64_t s = it->second;
        acc += sub_w[s];
        den += sub_w[s];
        for (int t = 0; t < d; ++t) num[t] += sub_w[s] * sub_x[s * d + t];
      }
      if (den <= 0.0) continue;
      std::vector<double> neighbor(d);
      for (int t = 0; t < d; ++t) neighbor[t] = num[t] / den;

      MultiCurve snapshot = curves;
      curves.comps[c].insert(curves.comps[c].end(), neighbor.begin(),
                             neighbor.end());
      EnergyPair after = both_energies(cloud, curves, params);
      if (accepted(base, after)) {
        events.push_back(
            make_event(TopoEventKind::GrowSingleton, iteration, base, after));
        base = after;
        applied = true;
        break;
      }
      curves = std::move(snapshot);
    }
    if (!applied) break;
  }

  return events;
}

std::vector<TopoEvent> remove_empty_components(const PointCloud& cloud,
                                               MultiCurve& curves,
                                               const Params& params,
                                               int iteration) {
  std::vector<TopoEvent> events;
  if (params.ppc_only) return events;
  bool changed = true;
  while (changed && curves.component_count() > 1) {
    changed = false;
    Assignment a = assign(cloud, curves, params.threads);
    vertex_stats(cloud, curves, a, params.threads);
    CurveIndex idx(curves);
    for (int c = 0; c < curves.component_count(); ++c) {
      double mass = 0.0;
      for (std::int64_t j = 0; j < curves.comp_size(c); ++j)
        mass += a.mass[idx.global(c, j)];
      if (mass > 0.0) continue;
      if (curves.component_count() < 2) break;
      EnergyPair before = both_energies(cloud, curves, params);
      MultiCurve snapshot = curves;
      curves.comps.erase(curves.comps.begin() + c);
      EnergyPair after = both_energies(cloud, curves, params);
      if (accepted(before, after)) {
        events.push_back(make_event(TopoEventKind::RemoveEmptyComponent,
                                    iteration, before, after));
        changed = true;
        break;
      }
      curves = std::move(snapshot);
    }
  }
  return events;
}

}  // namespace mppc
