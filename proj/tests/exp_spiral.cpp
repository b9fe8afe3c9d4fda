// scratch experiment: noisy spiral recovery, MPPC vs PPC-only
#include <algorithm>
#include <cmath>
#include <cstdio>
#include <vector>

#include "core/driver.hpp"
#include "core/generate.hpp"
#include "core/geometry.hpp"
#include "core/pca.hpp"

using namespace mppc;

// rank correlation between the data order recovered by projecting onto the
// largest non-singleton component and the true parameter
static double spearman_vs_truth(const PointCloud& cloud,
                                const MultiCurve& curves,
                                const std::vector<double>& truth) {
  int main_comp = -1;
  std::int64_t best_m = 1;
  for (int c = 0; c < curves.component_count(); ++c)
    if (curves.comp_size(c) > best_m) {
      best_m = curves.comp_size(c);
      main_comp = c;
    }
  if (main_comp < 0) return 0.0;

  std::int64_t m = curves.comp_size(main_comp);
  std::vector<double> arc(m, 0.0);
  for (std::int64_t j = 1; j < m; ++j)
    arc[j] = arc[j - 1] + dist(curves.vertex(main_comp, j - 1),
                               curves.vertex(main_comp, j), curves.d);
  std::vector<double> pos(cloud.n);
  for (std::int64_t i = 0; i < cloud.n; ++i) {
    double bestd = -1.0, bestpos = 0.0;
    for (std::int64_t j = 0; j + 1 < m; ++j) {
      SegmentFoot f =
          segment_foot(cloud.point(i), curves.vertex(main_comp, j),
                       curves.vertex(main_comp, j + 1), cloud.d);
      if (bestd < 0.0 || f.distance < bestd) {
        bestd = f.distance;
        bestpos = arc[j] + f.t * (arc[j + 1] - arc[j]);
      }
    }
    pos[i] = bestpos;
  }

  auto ranks = [](const std::vector<double>& v) {
    std::vector<std::int64_t> idx(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) idx[i] = i;
    std::sort(idx.begin(), idx.end(), [&](std::int64_t a, std::int64_t b) {
      if (v[a] != v[b]) return v[a] < v[b];
      return a < b;
    });
    std::vector<double> r(v.size());
    for (std::size_t i = 0; i < idx.size(); ++i)
      r[idx[i]] = static_cast<double>(i);
    return r;
  };
  std::vector<double> ra = ranks(pos), rb = ranks(truth);
  double n = static_cast<double>(cloud.n);
  double ma = 0, mb = 0;
  for (double x : ra) ma += x;
  for (double x : rb) mb += x;
  ma /= n;
  mb /= n;
  double cov = 0, va = 0, vb = 0;
  for (std::int64_t i = 0; i < cloud.n; ++i) {
    cov += (ra[i] - ma) * (rb[i] - mb);
    va += (ra[i] - ma) * (ra[i] - ma);
    vb += (rb[i] - mb) * (rb[i] - mb);
  }
  return cov / std::sqrt(va * vb);
}

int main(int argc, char** argv) {
  int seeds = argc > 1 ? std::atoi(argv[1]) : 3;
  int max_iter = argc > 2 ? std::atoi(argv[2]) : 300;
  for (int mode = 0; mode < 2; ++mode) {
    for (int seed = 1; seed <= seeds; ++seed) {
      Generated g = generate("spiral", {}, seed);
      Params p;
      p.lambda1 = 0.01;
      p.lambda2 = 4.0 / 9.0;
      p.ppc_only = mode == 1;
      p.seed = seed;
      p.max_outer_iters = max_iter;
      p.threads = 2;
      MultiCurve init = principal_line(g.cloud, 32);
      auto [curves, rep] = fit(g.cloud, p, &init);
      int nonsingleton = 0;
      std::int64_t mmax = 0;
      for (int c = 0; c < curves.component_count(); ++c)
        if (curves.comp_size(c) > 1) {
          ++nonsingleton;
          mmax = std::max(mmax, curves.comp_size(c));
        }
      double rho = spearman_vs_truth(g.cloud, curves, g.aux);
      std::printf(
          "%s seed=%d: k=%d nonsingleton=%d mmax=%lld |rho|=%.4f iters=%d "
          "conv=%d wall=%.1fs\n",
          mode ? "PPC " : "MPPC", seed, curves.component_count(),
          nonsingleton, (long long)mmax, std::abs(rho),
          rep.outer_iterations, rep.converged ? 1 : 0,
          rep.wall_time_seconds);
      std::fflush(stdout);
    }
  }
  return 0;
}
