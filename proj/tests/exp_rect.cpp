// scratch experiment: linear stability and smoothing scale on the grid
#include <cmath>
#include <cstdio>

#include "core/driver.hpp"
#include "core/energy.hpp"
#include "core/generate.hpp"
#include "core/rng.hpp"

using namespace mppc;

static MultiCurve perturbed_line(int m, double amplitude, std::uint64_t seed) {
  Rng rng(mix_seed(seed, 99));
  MultiCurve mc;
  mc.d = 2;
  mc.comps.resize(1);
  for (int j = 0; j < m; ++j) {
    double x = 4.0 * j / (m - 1);
    double y = 0.5;
    if (j > 0 && j + 1 < m) y += amplitude * rng.uniform(-1.0, 1.0);
    mc.comps[0].push_back(x);
    mc.comps[0].push_back(y);
  }
  return mc;
}

int main(int argc, char** argv) {
  double lambda1 = argc > 1 ? std::atof(argv[1]) : 1.0 / 1000.0;
  double lambda2 = argc > 2 ? std::atof(argv[2]) : 0.15;
  int max_iter = argc > 3 ? std::atoi(argv[3]) : 1500;
  Generated g = generate("rectangle", {}, 0);
  Params p;
  p.lambda1 = lambda1;
  p.lambda2 = lambda2;
  p.ppc_only = true;
  p.fix_endpoints = true;
  p.max_outer_iters = max_iter;
  p.energy_rtol = 1e-8;
  p.threads = 2;
  MultiCurve init = perturbed_line(81, 0.02, 7);
  auto [curves, rep] = fit(g.cloud, p, &init);

  double max_dev = 0.0;
  for (std::int64_t j = 0; j < curves.comp_size(0); ++j)
    max_dev = std::max(max_dev,
                       std::abs(curves.vertex(0, j)[1] - 0.5));
  double H = std::sqrt(continuum_fidelity(g.cloud, curves, 2) /
                       g.cloud.total_mass());
  double scale = std::sqrt(lambda1 / (2.0 * 0.25));
  std::printf(
      "l1=%.6g l2=%.3g: m=%lld len=%.3f max_dev=%.4f H=%.5f H/scale=%.3f "
      "iters=%d conv=%d E=%.6g wall=%.1fs\n",
      lambda1, lambda2, (long long)curves.comp_size(0),
      curves.component_length(0), max_dev, H, H / scale,
      rep.outer_iterations, rep.converged ? 1 : 0, rep.final_energy.total,
      rep.wall_time_seconds);
  return 0;
}
