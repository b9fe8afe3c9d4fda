// scratch debugging harness, not part of the suite
#include <cstdio>

#include "core/energy.hpp"
#include "support/test_helpers.hpp"

using namespace mppc;

int main() {
  Rng rng(404);
  for (int trial = 0; trial < 200; ++trial) {
    int d = 1 + static_cast<int>(rng.index(3));
    PointCloud c = testsupport::random_cloud(rng, 5 + rng.index(26), d);
    MultiCurve mc = testsupport::random_curves(
        rng, 1 + static_cast<int>(rng.index(2)), 8, d);
    int comp = -1;
    for (int cc = 0; cc < mc.component_count(); ++cc)
      if (mc.comp_size(cc) >= 2) comp = cc;
    if (comp < 0) continue;
    std::int64_t j = rng.index(mc.comp_size(comp) - 1);
    CurveIndex idx(mc);
    Params p;
    p.lambda1 = rng.uniform(0.01, 0.5);
    p.lambda2 = rng.uniform(0.1, 2.0);
    EdgeDelta delta =
        edge_delta(c, mc, p, idx.global(comp, j), idx.global(comp, j + 1));

    const double* va = mc.vertex(comp, j);
    const double* vb = mc.vertex(comp, j + 1);
    double e_with = testsupport::config_energy(c, mc, p.lambda1, p.lambda2);
    MultiCurve without = mc;
    {
      std::vector<double>& v = without.comps[comp];
      std::vector<double> suffix(v.begin() + (j + 1) * d, v.end());
      v.resize((j + 1) * d);
      without.comps.push_back(suffix);
    }
    double fid_without = 0.0;
    std::vector<int> served_list;
    for (std::int64_t i = 0; i < c.n; ++i) {
      const double* x = c.point(i);
      bool served = false;
      double d_edge = testsupport::seg_d2(x, va, vb, d);
      double ab2 = dist2(va, vb, d);
      if (ab2 > 0.0) {
        double t = 0.0;
        for (int q = 0; q < d; ++q) t += (x[q] - va[q]) * (vb[q] - va[q]);
        t /= ab2;
        if (t > 0.0 && t < 1.0) {
          double best_vertex = -1.0;
          for (int cc = 0; cc < mc.component_count(); ++cc)
            for (std::int64_t jj = 0; jj < mc.comp_size(cc); ++jj) {
              double dd = dist2(x, mc.vertex(cc, jj), d);
              if (best_vertex < 0.0 || dd < best_vertex) best_vertex = dd;
            }
          served = d_edge < best_vertex &&
                   d_edge <= testsupport::config_d2(x, mc) + 1e-15;
        }
      }
      if (served) {
        fid_without += c.w[i] * std::min(dist2(x, va, d), dist2(x, vb, d));
        served_list.push_back(static_cast<int>(i));
      } else {
        fid_without += c.w[i] * testsupport::config_d2(x, mc);
      }
    }
    double e_without =
        fid_without + p.lambda1 * without.total_length() +
        p.lambda1 * p.lambda2 * (without.component_count() - 1);
    double diff = delta.value - (e_with - e_without);
    if (std::abs(diff) > 1e-9) {
      std::printf("trial %d: delta=%.12g oracle=%.12g diff=%.3g\n", trial,
                  delta.value, e_with - e_without, diff);
      std::printf("  lib points:");
      for (auto q : delta.points) std::printf(" %lld", (long long)q);
      std::printf("\n  test served:");
      for (auto q : served_list) std::printf(" %d", q);
      std::printf("\n  d=%d comp=%d j=%lld m=%lld k=%d\n", d, comp,
                  (long long)j, (long long)mc.comp_size(comp),
                  mc.component_count());
    }
  }
  return 0;
}
