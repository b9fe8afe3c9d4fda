#include <doctest.h>

#include <cmath>

#include "core/geometry.hpp"
#include "core/resolution.hpp"
#include "support/test_helpers.hpp"

using namespace mppc;

namespace {

Params make_params(double l1, double l2) {
  Params p;
  p.lambda1 = l1;
  p.lambda2 = l2;
  return p;
}

double mean_edge(const std::vector<double>& v, int d) {
  std::int64_t m = static_cast<std::int64_t>(v.size()) / d;
  double len = 0.0;
  for (std::int64_t j = 0; j + 1 < m; ++j)
    len += dist(v.data() + j * d, v.data() + (j + 1) * d, d);
  return len / static_cast<double>(m - 1);
}

}  // namespace

TEST_CASE("reparametrize equalizes spacing under uniform density") {
  // straight polyline, masses proportional to the vertex spans: constant
  // density, so the re-spaced vertices are uniform
  std::vector<double> v = {0.0, 1.0, 2.0, 7.0, 10.0};
  std::vector<double> mass;
  for (std::size_t j = 0; j < v.size(); ++j) {
    double l = 0.0;
    if (j > 0) l += (v[j] - v[j - 1]) / 2.0;
    if (j + 1 < v.size()) l += (v[j + 1] - v[j]) / 2.0;
    mass.push_back(0.1 * l);
  }
  CHECK(reparametrize(v, 1, mass));
  for (std::size_t j = 0; j < v.size(); ++j)
    CHECK(v[j] == doctest::Approx(2.5 * static_cast<double>(j)).epsilon(1e-12));
}

TEST_CASE("reparametrize leaves short or massless polylines unchanged") {
  std::vector<double> two = {0.0, 0.0, 1.0, 1.0};
  std::vector<double> m2 = {1.0, 1.0};
  std::vector<double> copy = two;
  CHECK_FALSE(reparametrize(two, 2, m2));
  CHECK(two == copy);

  std::vector<double> v = {0.0, 1.0, 3.0, 9.0};
  std::vector<double> zero(4, 0.0);
  copy = v;
  CHECK_FALSE(reparametrize(v, 1, zero));
  CHECK(v == copy);
}

TEST_CASE("reparametrize keeps vertices on the input polyline") {
  Rng rng(606);
  for (int trial = 0; trial < 50; ++trial) {
    int d = 2 + static_cast<int>(rng.index(2));
    std::int64_t m = 3 + rng.index(8);
    std::vector<double> v(m * d);
    for (double& x : v) x = rng.uniform(-1, 1);
    std::vector<double> input = v;
    std::vector<double> mass(m);
    for (double& w : mass) w = rng.uniform(0.0, 1.0);
    reparametrize(v, d, mass);
    CHECK(static_cast<std::int64_t>(v.size()) / d == m);
    // endpoints fixed
    for (int t = 0; t < d; ++t) {
      CHECK(v[t] == input[t]);
      CHECK(v[(m - 1) * d + t] == input[(m - 1) * d + t]);
    }
    for (std::int64_t j = 0; j < m; ++j) {
      double best = 1e300;
      for (std::int64_t e = 0; e + 1 < m; ++e)
        best = std::min(best, segment_dist2(v.data() + j * d,
                                            input.data() + e * d,
                                            input.data() + (e + 1) * d, d));
      CHECK(std::sqrt(best) <= 1e-12);
    }
  }
}

TEST_CASE("reparametrize preserves the length of straight polylines") {
  std::vector<double> v = {0.0, 0.3, 0.9, 2.7, 5.1, 6.0};
  std::vector<double> mass = {0.1, 0.5, 0.2, 0.9, 0.3, 0.1};
  double len_before = 6.0;
  reparametrize(v, 1, mass);
  double len_after = 0.0;
  for (std::size_t j = 0; j + 1 < v.size(); ++j)
    len_after += std::abs(v[j + 1] - v[j]);
  CHECK(len_after == doctest::Approx(len_before).epsilon(1e-12));
}

TEST_CASE("refine inserts midpoints until the mean edge criterion holds") {
  // mean edge length 0.8 with lambda2 = 1: insertion proceeds until the
  // mean is at most 0.5
  std::vector<double> v = {0.0, 0.8, 1.6, 2.4};
  std::vector<double> mass = {0.3, 0.3, 0.3, 0.3};
  Params p = make_params(0.1, 1.0);
  int inserted = refine(v, 1, mass, p);
  CHECK(inserted > 0);
  CHECK(mean_edge(v, 1) <= 0.5 + 1e-12);
  CHECK(v.front() == 0.0);
  CHECK(v.back() == 2.4);
  CHECK(mass.size() == v.size());

  // already satisfied: no-op
  std::vector<double> ok = {0.0, 0.4, 0.8};
  std::vector<double> mok = {0.3, 0.3, 0.3};
  CHECK(refine(ok, 1, mok, p) == 0);
}

TEST_CASE("refine ignores turning angles unless the optional check is on") {
  // zigzag whose mean edge already satisfies the length criterion but whose
  // mean turning angle is pi/2
  std::vector<double> v;
  std::vector<double> mass;
  for (int j = 0; j < 8; ++j) {
    v.push_back(0.2 * j);
    v.push_back(j % 2 ? 0.2 : 0.0);
    mass.push_back(0.1);
  }
  Params p = make_params(0.1, 0.6);  // mean edge 0.28 <= 0.3
  std::vector<double> copy = v;
  std::vector<double> mcopy = mass;
  CHECK(refine(v, 2, mass, p) == 0);
  CHECK(v == copy);

  p.turning_angle_check = true;
  CHECK(refine(copy, 2, mcopy, p) > 0);
}

TEST_CASE("refine satisfies its criterion within the vertex cap") {
  std::vector<double> v = {0.0, 10.0};
  std::vector<double> mass = {1.0, 1.0};
  Params p = make_params(0.1, 0.05);
  int inserted = refine(v, 1, mass, p);
  double cap = std::max(8.0, 4.0 * 10.0 / p.lambda2);
  CHECK(static_cast<double>(v.size()) <= cap);
  CHECK(inserted == static_cast<int>(v.size()) - 2);
  CHECK(mean_edge(v, 1) <= p.lambda2 / 2.0 + 1e-12);
}
