#include <doctest.h>

#include <cmath>

#include "core/driver.hpp"
#include "core/energy.hpp"
#include "core/geometry.hpp"
#include "support/test_helpers.hpp"

using namespace mppc;

TEST_CASE("lloyd with k = 1 returns the weighted mean") {
  PointCloud c;
  c.d = 2;
  c.n = 3;
  c.xs = {0, 0, 1, 0, 0, 3};
  c.w = {1, 2, 1};
  std::vector<double> centers = lloyd(c, 1, 7);
  CHECK(centers[0] == doctest::Approx(0.5));
  CHECK(centers[1] == doctest::Approx(0.75));
}

TEST_CASE("lloyd with k = n puts centers on the points") {
  PointCloud c;
  c.d = 1;
  c.n = 2;
  c.xs = {0.0, 1.0};
  c.w = {0.5, 0.5};
  std::vector<double> centers = lloyd(c, 2, 3);
  std::sort(centers.begin(), centers.end());
  CHECK(centers[0] == doctest::Approx(0.0));
  CHECK(centers[1] == doctest::Approx(1.0));
}

TEST_CASE("lloyd separates two far pairs") {
  PointCloud c;
  c.d = 1;
  c.n = 4;
  c.xs = {0.0, 0.2, 10.0, 10.2};
  c.w = {0.25, 0.25, 0.25, 0.25};
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    std::vector<double> centers = lloyd(c, 2, seed);
    std::sort(centers.begin(), centers.end());
    CHECK(centers[0] == doctest::Approx(0.1));
    CHECK(centers[1] == doctest::Approx(10.1));
  }
}

TEST_CASE("init_singletons: single point") {
  PointCloud c;
  c.d = 2;
  c.n = 1;
  c.xs = {0.3, -0.7};
  c.w = {1.0};
  Params p;
  p.lambda1 = 0.1;
  p.lambda2 = 0.5;
  MultiCurve mc = init_singletons(c, p);
  CHECK(mc.component_count() == 1);
  CHECK(mc.comp_size(0) == 1);
  CHECK(mc.vertex(0, 0)[0] == doctest::Approx(0.3));
  CHECK(mc.vertex(0, 0)[1] == doctest::Approx(-0.7));
}

TEST_CASE("init_singletons: two tight clusters give two singletons") {
  PointCloud c;
  c.d = 1;
  Rng rng(17);
  for (int i = 0; i < 40; ++i) {
    c.xs.push_back((i % 2 ? 10.0 : 0.0) + 0.01 * rng.uniform(-1, 1));
  }
  c.n = 40;
  c.w.assign(40, 1.0 / 40.0);
  Params p;
  p.lambda1 = 0.05;
  p.lambda2 = 0.1;
  MultiCurve mc = init_singletons(c, p);
  CHECK(mc.component_count() == 2);
}

TEST_CASE("fit: single data point collapses to it with zero energy") {
  PointCloud c;
  c.d = 2;
  c.n = 1;
  c.xs = {1.0, 2.0};
  c.w = {1.0};
  Params p;
  p.lambda1 = 0.1;
  p.lambda2 = 0.5;
  p.max_outer_iters = 50;
  auto [curves, rep] = fit(c, p);
  CHECK(curves.component_count() == 1);
  CHECK(curves.comp_size(0) == 1);
  CHECK(rep.final_energy.total == doctest::Approx(0.0));
  CHECK(rep.converged);
}

TEST_CASE("fit rejects p != 2") {
  PointCloud c;
  c.d = 1;
  c.n = 2;
  c.xs = {0, 1};
  c.w = {0.5, 0.5};
  Params p;
  p.lambda1 = 0.1;
  p.lambda2 = 0.5;
  p.p = 1.0;
  try {
    fit(c, p);
    FAIL("expected UnsupportedExponent");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::UnsupportedExponent);
  }
}

TEST_CASE("fit is deterministic: identical runs, identical reports") {
  Rng rng(2024);
  PointCloud c = testsupport::random_cloud(rng, 60, 2);
  for (double& w : c.w) w = 1.0 / 60.0;
  Params p;
  p.lambda1 = 0.05;
  p.lambda2 = 0.4;
  p.seed = 5;
  p.max_outer_iters = 60;
  auto [curves1, rep1] = fit(c, p);
  auto [curves2, rep2] = fit(c, p);
  CHECK(curves1.comps == curves2.comps);
  REQUIRE(rep1.energy_history.size() == rep2.energy_history.size());
  for (std::size_t i = 0; i < rep1.energy_history.size(); ++i)
    CHECK(rep1.energy_history[i] == rep2.energy_history[i]);  // bitwise
  CHECK(rep1.events.size() == rep2.events.size());
}

TEST_CASE("fit history is monotone outside flagged iterations") {
  Rng rng(31);
  PointCloud c = testsupport::random_cloud(rng, 120, 2);
  for (double& w : c.w) w = 1.0 / 120.0;
  Params p;
  p.lambda1 = 0.03;
  p.lambda2 = 0.5;
  p.seed = 9;
  p.max_outer_iters = 120;
  auto [curves, rep] = fit(c, p);
  (void)curves;
  for (std::size_t i = 1; i < rep.energy_history.size(); ++i) {
    int iter = static_cast<int>(i) + 1;
    bool flagged = false;
    for (int f : rep.refinement_iterations)
      if (f == iter) flagged = true;
    if (flagged) continue;
    double prev = rep.energy_history[i - 1];
    CHECK(rep.energy_history[i] <=
          prev + 1e-9 * std::max(1.0, std::abs(prev)));
  }
  // flagged iterations recover within one step
  for (int f : rep.refinement_iterations) {
    std::size_t idx = static_cast<std::size_t>(f) - 1;
    if (idx + 1 >= rep.energy_history.size() || idx < 1) continue;
    double pre = rep.energy_history[idx - 1];
    CHECK(rep.energy_history[idx + 1] <=
          pre + 1e-9 * std::max(1.0, std::abs(pre)));
  }
}

TEST_CASE("ppc mode performs no topology changes") {
  Rng rng(77);
  PointCloud c = testsupport::random_cloud(rng, 50, 2);
  for (double& w : c.w) w = 1.0 / 50.0;
  MultiCurve init;
  init.d = 2;
  init.comps = {{-1, -1, 0, 0, 1, 1}};
  Params p;
  p.lambda1 = 0.05;
  p.lambda2 = 0.3;
  p.ppc_only = true;
  p.max_outer_iters = 40;
  auto [curves, rep] = fit(c, p, &init);
  CHECK(curves.component_count() == 1);
  CHECK(rep.events.empty());
}

TEST_CASE("fixed endpoints stay bit-identical through a fit") {
  PointCloud c;
  c.d = 2;
  c.n = 50;
  Rng rng(5);
  for (int i = 0; i < 50; ++i) {
    c.xs.push_back(rng.uniform(0, 4));
    c.xs.push_back(rng.uniform(-0.2, 0.2));
  }
  c.w.assign(50, 0.02);
  MultiCurve init;
  init.d = 2;
  init.comps = {{0.0, 0.5, 1.0, 0.4, 2.0, 0.6, 3.0, 0.4, 4.0, 0.5}};
  Params p;
  p.lambda1 = 0.01;
  p.lambda2 = 0.5;
  p.ppc_only = true;
  p.fix_endpoints = true;
  p.max_outer_iters = 30;
  auto [curves, rep] = fit(c, p, &init);
  (void)rep;
  CHECK(curves.vertex(0, 0)[0] == 0.0);
  CHECK(curves.vertex(0, 0)[1] == 0.5);
  std::int64_t m = curves.comp_size(0);
  CHECK(curves.vertex(0, m - 1)[0] == 4.0);
  CHECK(curves.vertex(0, m - 1)[1] == 0.5);
}

TEST_CASE("fit flags non-convergence at the iteration cap") {
  Rng rng(3);
  PointCloud c = testsupport::random_cloud(rng, 80, 2);
  for (double& w : c.w) w = 1.0 / 80.0;
  Params p;
  p.lambda1 = 0.02;
  p.lambda2 = 0.4;
  p.max_outer_iters = 3;  // far too few
  auto [curves, rep] = fit(c, p);
  (void)curves;
  CHECK_FALSE(rep.converged);
  CHECK(rep.outer_iterations == 3);
}
