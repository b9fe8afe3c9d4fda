#include <doctest.h>

#include <cmath>

#include "core/admm.hpp"
#include "core/geometry.hpp"
#include "support/test_helpers.hpp"

using namespace mppc;

TEST_CASE("y_update solves the 2x2 system exactly") {
  // (2W + rho D^T D) y = 2 W xbar with z = b = 0
  std::vector<double> mass = {0.5, 0.5};
  std::vector<double> centroid = {0.0, 1.0};
  std::vector<double> z = {0.0}, b = {0.0};
  std::vector<double> y = {0.0, 0.0};
  y_update(mass.data(), centroid.data(), z.data(), b.data(), 1.0, false,
           y.data(), 2, 1);
  CHECK(y[0] == doctest::Approx(1.0 / 3.0).epsilon(1e-14));
  CHECK(y[1] == doctest::Approx(2.0 / 3.0).epsilon(1e-14));
}

TEST_CASE("y_update with vanishing rho decouples to the centroids") {
  std::vector<double> mass = {0.3, 0.8, 0.5};
  std::vector<double> centroid = {0.0, 1.0, -2.0};
  std::vector<double> z = {0.0, 0.0}, b = {0.0, 0.0};
  std::vector<double> y = {9.0, 9.0, 9.0};
  y_update(mass.data(), centroid.data(), z.data(), b.data(), 1e-12, false,
           y.data(), 3, 1);
  for (int j = 0; j < 3; ++j)
    CHECK(y[j] == doctest::Approx(centroid[j]).epsilon(1e-6));
}

TEST_CASE("y_update reports a singular system when all masses vanish") {
  std::vector<double> mass = {0.0, 0.0, 0.0};
  std::vector<double> centroid = {0.0, 0.0, 0.0};
  std::vector<double> z = {0.0, 0.0}, b = {0.0, 0.0};
  std::vector<double> y = {0.0, 1.0, 2.0};
  try {
    y_update(mass.data(), centroid.data(), z.data(), b.data(), 1.0, false,
             y.data(), 3, 1);
    FAIL("expected SingularSystem");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::SingularSystem);
  }
}

TEST_CASE("y_update with fixed endpoints keeps the pinned rows bit-exact") {
  std::vector<double> mass = {0.0, 0.4, 0.0};
  std::vector<double> centroid = {0.0, 0.0, 5.0, 5.0, 0.0, 0.0};
  std::vector<double> z = {0.1, -0.2, 0.3, 0.4}, b = {0.0, 0.1, -0.1, 0.2};
  std::vector<double> y = {0.123456789, -1.5, 2.0, 2.0, 4.2, 0.25};
  double y0 = y[0], y1 = y[1], ya = y[4], yb = y[5];
  y_update(mass.data(), centroid.data(), z.data(), b.data(), 0.7, true,
           y.data(), 3, 2);
  CHECK(y[0] == y0);
  CHECK(y[1] == y1);
  CHECK(y[4] == ya);
  CHECK(y[5] == yb);
  CHECK(y[2] != 2.0);  // interior vertex moved
}

TEST_CASE("z_update is block soft thresholding") {
  // below the threshold the row collapses to zero
  std::vector<double> v = {0.3, 0.4};
  std::vector<double> z(2);
  z_update(v.data(), 1, 2, 1.0, z.data());
  CHECK(z[0] == 0.0);
  CHECK(z[1] == 0.0);

  v = {3.0, 4.0};
  z_update(v.data(), 1, 2, 1.0, z.data());
  CHECK(z[0] == doctest::Approx(2.4).epsilon(1e-14));
  CHECK(z[1] == doctest::Approx(3.2).epsilon(1e-14));

  z_update(v.data(), 1, 2, 1e-14, z.data());
  CHECK(z[0] == doctest::Approx(3.0).epsilon(1e-12));
  CHECK(z[1] == doctest::Approx(4.0).epsilon(1e-12));
}

TEST_CASE("one hand-computed relax cycle") {
  // m = 2, d = 1, mass (1/2, 1/2), centroids (0, 1), rho = 1, start at
  // (1/3, 2/3): the first cycle lands on (2/9, 7/9)
  std::vector<double> mass = {0.5, 0.5};
  std::vector<double> centroid = {0.0, 1.0};
  std::vector<double> y0 = {1.0 / 3.0, 2.0 / 3.0};
  RelaxResult r = relax(mass.data(), centroid.data(), y0.data(), 2, 1, 0.01,
                        1.0, 1, false);
  CHECK(r.y[0] == doctest::Approx(2.0 / 9.0).epsilon(1e-12));
  CHECK(r.y[1] == doctest::Approx(7.0 / 9.0).epsilon(1e-12));
  CHECK(r.objective_out <= r.objective_in);
}

TEST_CASE("relax keeps a symmetric polyline on its symmetry axis") {
  // centroids on the x axis; the polyline may shrink but cannot leave it
  std::vector<double> mass = {0.25, 0.25, 0.25, 0.25};
  std::vector<double> centroid = {0, 0, 1, 0, 2, 0, 3, 0};
  std::vector<double> y0 = {0, 0, 1, 0, 2, 0, 3, 0};
  RelaxResult r = relax(mass.data(), centroid.data(), y0.data(), 4, 2, 0.05,
                        0.0, 200, false);
  for (int j = 0; j < 4; ++j) CHECK(std::abs(r.y[j * 2 + 1]) <= 1e-12);
  CHECK(r.objective_out <= r.objective_in + 1e-12);
}

TEST_CASE("relax beats a grid of one-directional offsets") {
  // collinear vertices with centroids pulled to one side and a large
  // length weight: the relaxed polyline must be at least as good as the
  // best rigid offset toward the centroids
  std::vector<double> mass = {0.3, 0.3, 0.3};
  std::vector<double> centroid = {0, 0.5, 1, 0.5, 2, 0.5};
  std::vector<double> y0 = {0, 0, 1, 0, 2, 0};
  double lambda1 = 2.0;
  RelaxResult r = relax(mass.data(), centroid.data(), y0.data(), 3, 2,
                        lambda1, 0.0, 2000, false);
  double best_grid = r.objective_in;
  for (int s = 0; s <= 1000; ++s) {
    std::vector<double> y = y0;
    double off = 0.5 * static_cast<double>(s) / 1000.0;
    for (int j = 0; j < 3; ++j) y[j * 2 + 1] += off;
    best_grid = std::min(best_grid,
                         fixed_assignment_objective(mass.data(),
                                                    centroid.data(), y.data(),
                                                    3, 2, lambda1));
  }
  CHECK(r.objective_out <= best_grid + 1e-6);
  // the span along x does not grow
  CHECK(r.y[4] - r.y[0] <= 2.0 + 1e-9);
}

TEST_CASE("relax matches the subgradient oracle on random instances") {
  Rng rng(777);
  for (int trial = 0; trial < 10; ++trial) {
    std::int64_t m = 2 + rng.index(4);
    int d = 1 + static_cast<int>(rng.index(3));
    std::vector<double> mass(m), centroid(m * d), y0(m * d);
    for (auto& v : mass) v = rng.uniform(0.2, 1.0);
    for (auto& v : centroid) v = rng.uniform(-1, 1);
    for (auto& v : y0) v = rng.uniform(-1, 1);
    double lambda1 = rng.uniform(0.02, 0.2);
    RelaxResult r = relax(mass.data(), centroid.data(), y0.data(), m, d,
                          lambda1, 0.0, 1000, false);
    double oracle = testsupport::subgradient_best_objective(
        mass, centroid, y0, m, d, lambda1, 1000000);
    CHECK(std::abs(r.objective_out - oracle) <= 1e-6);  // absolute
    CHECK(r.constraint_residual <= 1e-8);
  }
}

TEST_CASE("relax requires m >= 2") {
  std::vector<double> mass = {1.0};
  std::vector<double> centroid = {0.0};
  std::vector<double> y0 = {0.0};
  CHECK_THROWS_AS(
      relax(mass.data(), centroid.data(), y0.data(), 1, 1, 0.1, 0.0, 1,
            false),
      Error);
}
