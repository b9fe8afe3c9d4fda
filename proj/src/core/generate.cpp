#include "core/generate.hpp"

#include <cmath>

#include "core/rng.hpp"

namespace mppc {

namespace {

// arc-length table of a parametric curve on [t0, t1], `steps` samples
struct ArcTable {
  std::vector<double> t;
  std::vector<double> s;

  template <typename F>
  ArcTable(F&& point, double t0, double t1, int steps) {
    t.resize(steps + 1);
    s.resize(steps + 1);
    s[0] = 0.0;
    auto prev = point(t0);
    t[0] = t0;
    for (int i = 1; i <= steps; ++i) {
      t[i] = t0 + (t1 - t0) * static_cast<double>(i) / steps;
      auto cur = point(t[i]);
      double dx = cur.first - prev.first, dy = cur.second - prev.second;
      s[i] = s[i - 1] + std::sqrt(dx * dx + dy * dy);
      prev = cur;
    }
  }

  double total() const { return s.back(); }

  // parameter at a given arc length (linear interpolation)
  double param_at(double target) const {
    std::size_t lo = 0, hi = s.size() - 1;
    while (hi - lo > 1) {
      std::size_t mid = (lo + hi) / 2;
      if (s[mid] <= target)
        lo = mid;
      else
        hi = mid;
    }
    double seg = s[hi] - s[lo];
    double f = seg > 0.0 ? (target - s[lo]) / seg : 0.0;
    return t[lo] + f * (t[hi] - t[lo]);
  }
};

Generated make_spiral(const GenerateOptions& o, std::uint64_t seed) {
  std::int64_t n = o.n.value_or(2000);
  double noise = o.noise.value_or(1.5);
  double t0 = o.t0.value_or(3.0), t1 = o.t1.value_or(14.0);
  auto point = [](double t) {
    return std::pair<double, double>{t * std::cos(t), t * std::sin(t)};
  };
  ArcTable arc(point, t0, t1, 200000);
  Rng rng(mix_seed(seed, 1));
  Generated g;
  g.cloud.n = n;
  g.cloud.d = 2;
  g.cloud.xs.resize(2 * n);
  g.cloud.w.assign(n, 1.0);
  g.aux.resize(n);
  for (std::int64_t i = 0; i < n; ++i) {
    double t = arc.param_at(rng.uniform() * arc.total());
    auto [x, y] = point(t);
    g.cloud.xs[2 * i] = x + noise * rng.normal();
    g.cloud.xs[2 * i + 1] = y + noise * rng.normal();
    g.aux[i] = t;
  }
  return g;
}

Generated make_rectangle(const GenerateOptions& o) {
  std::int64_t nx = o.nx.value_or(361), ny = o.ny.value_or(81);
  double length = o.length.value_or(4.0), height = o.height.value_or(1.0);
  if (nx < 2 || ny < 2)
    fail(ErrorCode::InvalidArgument, "rectangle grid needs nx, ny >= 2");
  Generated g;
  std::int64_t n = nx * ny;
  g.cloud.n = n;
  g.cloud.d = 2;
  g.cloud.xs.resize(2 * n);
  g.cloud.w.assign(n, 1.0 / static_cast<double>(n));
  std::int64_t i = 0;
  for (std::int64_t ix = 0; ix < nx; ++ix)
    for (std::int64_t iy = 0; iy < ny; ++iy, ++i) {
      g.cloud.xs[2 * i] = length * static_cast<double>(ix) / (nx - 1);
      g.cloud.xs[2 * i + 1] = height * static_cast<double>(iy) / (ny - 1);
    }
  return g;
}

Generated make_segment(const GenerateOptions& o) {
  std::int64_t n = o.n.value_or(1000);
  double length = o.length.value_or(16.0);
  if (n < 2) fail(ErrorCode::InvalidArgument, "segment needs n >= 2");
  Generated g;
  g.cloud.n = n;
  g.cloud.d = 1;
  g.cloud.xs.resize(n);
  g.cloud.w.assign(n, 1.0 / static_cast<double>(n));
  for (std::int64_t i = 0; i < n; ++i)
    g.cloud.xs[i] = length * static_cast<double>(i) / (n - 1);
  return g;
}

Generated make_oscillation(const GenerateOptions& o) {
  std::int64_t n = o.n.value_or(3000);
  double x0 = o.x0.value_or(0.001), x1 = o.x1.value_or(std::exp(3.25));
  auto point = [](double x) {
    return std::pair<double, double>{
        x, x / 5.0 * std::sin(-4.0 * M_PI * std::log(x))};
  };
  ArcTable arc(point, x0, x1, 400000);
  Generated g;
  g.cloud.n = n;
  g.cloud.d = 2;
  g.cloud.xs.resize(2 * n);
  g.cloud.w.assign(n, 1.0 / static_cast<double>(n));
  g.aux.resize(n);
  for (std::int64_t i = 0; i < n; ++i) {
    double x = arc.param_at(arc.total() * static_cast<double>(i) / (n - 1));
    auto [px, py] = point(x);
    g.cloud.xs[2 * i] = px;
    g.cloud.xs[2 * i + 1] = py;
    g.aux[i] = x;
  }
  return g;
}

Generated make_parallel_lines(const GenerateOptions& o) {
  std::int64_t n = o.n.value_or(1000);
  double height = o.height.value_or(0.4);
  if (n < 4) fail(ErrorCode::InvalidArgument, "parallel_lines needs n >= 4");
  Generated g;
  std::int64_t half = n / 2;
  n = 2 * half;
  g.cloud.n = n;
  g.cloud.d = 2;
  g.cloud.xs.resize(2 * n);
  g.cloud.w.assign(n, 1.0 / static_cast<double>(n));
  for (std::int64_t i = 0; i < half; ++i) {
    double x = -1.0 + 2.0 * static_cast<double>(i) / (half - 1);
    g.cloud.xs[2 * i] = x;
    g.cloud.xs[2 * i + 1] = height;
    g.cloud.xs[2 * (half + i)] = x;
    g.cloud.xs[2 * (half + i) + 1] = -height;
  }
  return g;
}

Generated make_grid_clutter(const GenerateOptions& o, std::uint64_t seed) {
  std::int64_t n_lines = o.n.value_or(2400);
  std::int64_t n_bg = n_lines;
  double noise = o.noise.value_or(0.05);
  Rng rng(mix_seed(seed, 2));
  Generated g;
  std::int64_t n = n_lines + n_bg;
  g.cloud.n = n;
  g.cloud.d = 3;
  g.cloud.xs.resize(3 * n);
  g.cloud.w.assign(n, 1.0 / static_cast<double>(n));
  // two lines along x at y = 1, 2 and two along y at x = 1, 2, all in z = 0
  const double lines[4][2][3] = {
      {{0, 1, 0}, {3, 1, 0}},
      {{0, 2, 0}, {3, 2, 0}},
      {{1, 0, 0}, {1, 3, 0}},
      {{2, 0, 0}, {2, 3, 0}},
  };
  for (std::int64_t i = 0; i < n_lines; ++i) {
    int li = static_cast<int>(i % 4);
    double t = rng.uniform();
    for (int c = 0; c < 3; ++c)
      g.cloud.xs[3 * i + c] = lines[li][0][c] +
                              t * (lines[li][1][c] - lines[li][0][c]) +
                              noise * rng.normal();
  }
  for (std::int64_t i = n_lines; i < n; ++i) {
    g.cloud.xs[3 * i] = rng.uniform(0.0, 3.0);
    g.cloud.xs[3 * i + 1] = rng.uniform(0.0, 3.0);
    g.cloud.xs[3 * i + 2] = rng.uniform(-0.75, 0.75);
  }
  return g;
}

}  // namespace

Generated generate(const std::string& kind, const GenerateOptions& options,
                   std::uint64_t seed) {
  if (kind == "spiral") return make_spiral(options, seed);
  if (kind == "rectangle") return make_rectangle(options);
  if (kind == "segment") return make_segment(options);
  if (kind == "oscillation") return make_oscillation(options);
  if (kind == "parallel_lines") return make_parallel_lines(options);
  if (kind == "grid_clutter") return make_grid_clutter(options, seed);
  fail(ErrorCode::UnknownKind, "unknown dataset kind: " + kind);
}

}  // namespace mppc
