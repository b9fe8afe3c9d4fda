#include <doctest.h>

#include <cmath>

#include "core/topology.hpp"
#include "support/test_helpers.hpp"

using namespace mppc;

namespace {

Params make_params(double l1, double l2) {
  Params p;
  p.lambda1 = l1;
  p.lambda2 = l2;
  return p;
}

// clusters of points at the two ends of a straight polyline whose middle
// edges carry nothing
struct Dumbbell {
  PointCloud cloud;
  MultiCurve curves;
};

Dumbbell make_dumbbell() {
  // clusters at 0 and 2, the empty middle spanned by edges of length 0.4,
  // each individually shorter than lambda2
  Dumbbell db;
  db.cloud.d = 2;
  for (int i = 0; i < 20; ++i) {
    db.cloud.xs.push_back(0.0);
    db.cloud.xs.push_back(0.0);
    db.cloud.xs.push_back(2.0);
    db.cloud.xs.push_back(0.0);
  }
  db.cloud.n = 40;
  db.cloud.w.assign(40, 1.0 / 40.0);
  db.curves.d = 2;
  db.curves.comps.resize(1);
  for (int j = 0; j <= 5; ++j) {
    db.curves.comps[0].push_back(0.4 * j);
    db.curves.comps[0].push_back(0.0);
  }
  return db;
}

void check_events(const std::vector<TopoEvent>& events) {
  for (const TopoEvent& ev : events) {
    CHECK(ev.continuum_after < ev.continuum_before);
    CHECK(ev.energy_after <=
          ev.energy_before + 1e-9 * std::max(1.0, std::abs(ev.energy_before)));
  }
}

}  // namespace

TEST_CASE("cut_pass leaves profitable-free configurations alone") {
  // every edge shorter than lambda2 and all mass on the vertices
  Dumbbell db = make_dumbbell();
  Params p = make_params(0.1, 5.0);  // lambda2 beyond the total length
  MultiCurve copy = db.curves;
  auto events = cut_pass(db.cloud, db.curves, p, 1);
  CHECK(events.empty());
  CHECK(db.curves.comps == copy.comps);
}

TEST_CASE("cut_pass disconnects an unsupported middle") {
  Dumbbell db = make_dumbbell();
  Params p = make_params(0.1, 0.5);
  auto events = cut_pass(db.cloud, db.curves, p, 1);
  CHECK(!events.empty());
  check_events(events);
  // the clusters end up in different components; window removals may leave
  // zero-mass remnants between them, which the singleton pass then clears
  double end0[2] = {0.0, 0.0}, end1[2] = {2.0, 0.0};
  Assignment a = assign(db.cloud, db.curves);
  CurveIndex idx(db.curves);
  auto comp_of_nearest = [&](const double* x) {
    std::int64_t best = 0;
    double bd = -1.0;
    for (int c = 0; c < db.curves.component_count(); ++c)
      for (std::int64_t j = 0; j < db.curves.comp_size(c); ++j) {
        double dd = dist2(x, db.curves.vertex(c, j), 2);
        if (bd < 0.0 || dd < bd) {
          bd = dd;
          best = c;
        }
      }
    return best;
  };
  CHECK(comp_of_nearest(end0) != comp_of_nearest(end1));

  auto cleanup = singleton_pass(db.cloud, db.curves, p, 2);
  (void)cleanup;
  CHECK(db.curves.component_count() == 2);

  // both passes are now quiet
  CHECK(cut_pass(db.cloud, db.curves, p, 3).empty());
  CHECK(singleton_pass(db.cloud, db.curves, p, 3).empty());
}

TEST_CASE("connect_pass joins nearby singletons and stays acyclic") {
  PointCloud c;
  c.d = 1;
  c.n = 3;
  c.xs = {0.0, 0.4, 0.8};
  c.w = {1.0 / 3, 1.0 / 3, 1.0 / 3};
  MultiCurve mc;
  mc.d = 1;
  mc.comps = {{0.0}, {0.4}, {0.8}};
  Params p = make_params(0.1, 1.0);
  auto events = connect_pass(c, mc, p, 1, 1);
  CHECK(mc.component_count() == 1);
  CHECK(mc.comp_size(0) >= 3);
  CHECK(events.size() == 2);
  check_events(events);
  auto again = connect_pass(c, mc, p, 2, 1);
  CHECK(again.empty());
}

TEST_CASE("connect_pass refuses distant singletons") {
  PointCloud c;
  c.d = 1;
  c.n = 2;
  c.xs = {0.0, 2.0};
  c.w = {0.5, 0.5};
  MultiCurve mc;
  mc.d = 1;
  mc.comps = {{0.0}, {2.0}};
  Params p = make_params(0.1, 1.0);
  auto events = connect_pass(c, mc, p, 1, 1);
  CHECK(events.empty());
  CHECK(mc.component_count() == 2);
}

TEST_CASE("singleton_pass removes a zero-mass singleton") {
  PointCloud c;
  c.d = 2;
  c.n = 2;
  c.xs = {0.0, 0.0, 0.1, 0.0};
  c.w = {0.5, 0.5};
  MultiCurve mc;
  mc.d = 2;
  mc.comps = {{0.05, 0.0}, {0.05, 0.0}};  // duplicate loses every tie
  Params p = make_params(0.1, 1.0);
  auto events = singleton_pass(c, mc, p, 1);
  CHECK(mc.component_count() == 1);
  REQUIRE(events.size() == 1);
  CHECK(events[0].kind == TopoEventKind::RemoveSingleton);
  check_events(events);
}

TEST_CASE("singleton_pass never removes the last component") {
  PointCloud c;
  c.d = 1;
  c.n = 1;
  c.xs = {0.7};
  c.w = {1.0};
  MultiCurve mc;
  mc.d = 1;
  mc.comps = {{0.7}};
  Params p = make_params(0.1, 1.0);
  auto events = singleton_pass(c, mc, p, 1);
  CHECK(mc.component_count() == 1);
}

TEST_CASE("singleton_pass detaches an overloaded interior vertex") {
  // collinear neighbors (zero bridge release); the centroid offset alone
  // pays for the new component
  PointCloud c;
  c.d = 2;
  c.n = 60;
  for (int i = 0; i < 20; ++i) {
    c.xs.push_back(0.0);
    c.xs.push_back(0.0);
    c.xs.push_back(2.0);
    c.xs.push_back(0.0);
    c.xs.push_back(1.0);
    c.xs.push_back(0.8);
  }
  c.w.assign(60, 1.0 / 60.0);
  MultiCurve mc;
  mc.d = 2;
  mc.comps = {{0.0, 0.0, 1.0, 0.0, 2.0, 0.0}};
  Params p = make_params(0.1, 0.5);
  // spawn criterion: l1 l2 = 0.05 < mass * offset^2 = (1/3) * 0.64
  auto events = singleton_pass(c, mc, p, 1);
  REQUIRE(!events.empty());
  CHECK(events[0].kind == TopoEventKind::SpawnSingleton);
  CHECK(mc.component_count() == 2);
  check_events(events);
}

TEST_CASE("singleton_pass grows a stretched singleton into a short curve") {
  PointCloud c;
  c.d = 2;
  c.n = 21;
  for (int i = 0; i <= 20; ++i) {
    c.xs.push_back(static_cast<double>(i) / 20.0);
    c.xs.push_back(0.0);
  }
  c.w.assign(21, 1.0 / 21.0);
  MultiCurve mc;
  mc.d = 2;
  mc.comps = {{0.5, 0.0}};
  Params p = make_params(0.05, 2.0);
  // spread = sum w |x - y| = 0.25 > lambda1 / mass = 0.05
  auto events = singleton_pass(c, mc, p, 1);
  REQUIRE(!events.empty());
  CHECK(events.back().kind == TopoEventKind::GrowSingleton);
  CHECK(mc.comp_size(0) == 2);
  check_events(events);
}

TEST_CASE("singleton_pass splits an overloaded singleton") {
  PointCloud c;
  c.d = 2;
  c.n = 40;
  for (int i = 0; i < 20; ++i) {
    c.xs.push_back(-1.0);
    c.xs.push_back(0.0);
    c.xs.push_back(1.0);
    c.xs.push_back(0.0);
  }
  c.w.assign(40, 1.0 / 40.0);
  MultiCurve mc;
  mc.d = 2;
  mc.comps = {{0.0, 0.0}};
  // fidelity = 1 > l1 l2 = 0.2; connecting the halves would cost more than
  // splitting saves, so the two-singleton configuration wins
  Params p = make_params(0.1, 2.0);
  auto events = singleton_pass(c, mc, p, 1);
  REQUIRE(!events.empty());
  CHECK(events[0].kind == TopoEventKind::SplitSingleton);
  CHECK(mc.component_count() == 2);
  check_events(events);
}

TEST_CASE("remove_empty_components drops a massless duplicate polyline") {
  PointCloud c;
  c.d = 2;
  c.n = 10;
  for (int i = 0; i < 10; ++i) {
    c.xs.push_back(static_cast<double>(i));
    c.xs.push_back(0.0);
  }
  c.w.assign(10, 0.1);
  MultiCurve mc;
  mc.d = 2;
  std::vector<double> line;
  for (int i = 0; i < 10; ++i) {
    line.push_back(static_cast<double>(i));
    line.push_back(0.0);
  }
  mc.comps = {line, line};
  Params p = make_params(0.1, 1.0);
  auto events = remove_empty_components(c, mc, p, 1);
  CHECK(mc.component_count() == 1);
  REQUIRE(events.size() == 1);
  CHECK(events[0].kind == TopoEventKind::RemoveEmptyComponent);
}

TEST_CASE("passes are idempotent at fixed points and keep k >= 1") {
  Rng rng(909);
  for (int trial = 0; trial < 12; ++trial) {
    PointCloud c = testsupport::random_cloud(rng, 20 + rng.index(30), 2);
    MultiCurve mc = testsupport::random_curves(
        rng, 1 + static_cast<int>(rng.index(3)), 5, 2);
    Params p = make_params(rng.uniform(0.02, 0.3), rng.uniform(0.2, 1.5));

    for (int round = 0; round < 6; ++round) {
      auto e1 = cut_pass(c, mc, p, round);
      auto e2 = singleton_pass(c, mc, p, round);
      auto e3 = connect_pass(c, mc, p, round, 1);
      check_events(e1);
      check_events(e2);
      check_events(e3);
      CHECK(mc.component_count() >= 1);
      if (e1.empty() && e2.empty() && e3.empty()) break;
    }
    // at the fixed point every pass stays quiet
    CHECK(cut_pass(c, mc, p, 99).empty());
    CHECK(singleton_pass(c, mc, p, 99).empty());
    CHECK(connect_pass(c, mc, p, 99, 1).empty());
  }
}
