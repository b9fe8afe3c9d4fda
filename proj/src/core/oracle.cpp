#include "core/oracle.hpp"

#include <algorithm>
#include <cmath>

namespace mppc {

namespace {

void require_positive(double v, const char* name) {
  if (!(v > 0.0)) fail(ErrorCode::NonPositive, std::string(name) + " must be > 0");
}

// integral of x^p over [0, h], h >= 0
double pow_integral(double h, double p) {
  return std::pow(h, p + 1.0) / (p + 1.0);
}

}  // namespace

double smoothing_length(double lambda1, double alpha) {
  require_positive(lambda1, "lambda1");
  require_positive(alpha, "alpha");
  return std::sqrt(lambda1 / (2.0 * alpha));
}

double projection_distance(double curvature, double lambda1, double alpha) {
  require_positive(lambda1, "lambda1");
  require_positive(alpha, "alpha");
  if (curvature < 0.0) fail(ErrorCode::NonPositive, "curvature must be >= 0");
  // algebraically identical to (sqrt(1 + 2 l1 K^2/a) - 1) / (2K) but stable
  // as K -> 0
  double u = 2.0 * lambda1 * curvature * curvature / alpha;
  return (lambda1 * curvature / alpha) / (1.0 + std::sqrt(1.0 + u));
}

double critical_lambda1(double alpha, double H) {
  require_positive(alpha, "alpha");
  if (H < 0.0) fail(ErrorCode::NonPositive, "H must be >= 0");
  return 2.0 * alpha * H * H;
}

double critical_density(double lambda1, double lambda2, double p) {
  require_positive(lambda1, "lambda1");
  require_positive(lambda2, "lambda2");
  if (!(p >= 1.0)) fail(ErrorCode::NonPositive, "p must be >= 1");
  return std::pow(2.0 * p / (p + 1.0), p) * lambda1 / std::pow(lambda2, p);
}

double typical_gap(double lambda1, double lambda2, double alpha, double p) {
  require_positive(lambda1, "lambda1");
  require_positive(lambda2, "lambda2");
  require_positive(alpha, "alpha");
  if (!(p >= 1.0)) fail(ErrorCode::NonPositive, "p must be >= 1");
  return 2.0 * std::pow((p + 1.0) * lambda1 * lambda2 / (2.0 * p * alpha),
                        1.0 / (p + 1.0));
}

std::pair<double, double> select_params(double alpha_star, double hstar) {
  require_positive(alpha_star, "alpha_star");
  require_positive(hstar, "hstar");
  return {2.0 * alpha_star * hstar * hstar,
          4.0 * std::sqrt(2.0) / 3.0 * hstar};
}

double lambda1_from_lambda2(double alpha_star, double lambda2) {
  require_positive(alpha_star, "alpha_star");
  require_positive(lambda2, "lambda2");
  return 9.0 / 16.0 * alpha_star * lambda2 * lambda2;
}

double SegmentConfig::total_curve_length() const {
  double t = 0.0;
  for (const auto& [a, b] : intervals) t += b - a;
  return t;
}

double SegmentConfig::total_gap() const {
  double g = 0.0;
  for (double gi : gap_sizes()) g += gi;
  return g;
}

std::vector<double> SegmentConfig::gap_sizes() const {
  std::vector<double> g;
  for (std::size_t i = 0; i + 1 < intervals.size(); ++i)
    g.push_back(intervals[i + 1].first - intervals[i].second);
  return g;
}

void SegmentConfig::validate() const {
  if (intervals.empty())
    fail(ErrorCode::InvalidArgument, "segment config needs >= 1 interval");
  if (!(L > 0.0)) fail(ErrorCode::NonPositive, "L must be > 0");
  if (intervals.front().first < 0.0 || intervals.back().second > L)
    fail(ErrorCode::InvalidRange, "intervals must lie inside [0, L]");
  for (std::size_t i = 0; i < intervals.size(); ++i) {
    if (intervals[i].second < intervals[i].first)
      fail(ErrorCode::InvalidRange, "interval with negative length");
    if (i + 1 < intervals.size() &&
        intervals[i + 1].first < intervals[i].second)
      fail(ErrorCode::InvalidRange, "intervals must be ordered and disjoint");
  }
}

double segment_energy(const SegmentConfig& config, double alpha,
                      double lambda1, double lambda2, double p) {
  config.validate();
  require_positive(alpha, "alpha");
  require_positive(lambda1, "lambda1");
  require_positive(lambda2, "lambda2");
  if (!(p >= 1.0)) fail(ErrorCode::NonPositive, "p must be >= 1");

  // Gap contributions are summed in sorted order so that configurations
  // with equal gap multisets evaluate to identical totals.
  std::vector<double> gap_terms;
  for (double g : config.gap_sizes())
    gap_terms.push_back(2.0 * alpha * pow_integral(g / 2.0, p));
  std::sort(gap_terms.begin(), gap_terms.end());
  double fid = 0.0;
  for (double t : gap_terms) fid += t;
  fid += alpha * pow_integral(config.intervals.front().first, p);
  fid += alpha * pow_integral(config.L - config.intervals.back().second, p);

  double comp = static_cast<double>(config.intervals.size()) - 1.0;
  return fid + lambda1 * (config.total_curve_length() + lambda2 * comp);
}

SegmentMinimizer segment_minimizer(double L, double alpha, double lambda1,
                                   double lambda2, double p) {
  require_positive(L, "L");
  require_positive(alpha, "alpha");
  require_positive(lambda1, "lambda1");
  require_positive(lambda2, "lambda2");
  if (!(p >= 1.0)) fail(ErrorCode::NonPositive, "p must be >= 1");

  const double delta = std::pow(lambda1 / alpha, 1.0 / p);
  const double threshold = 2.0 * p / (p + 1.0) * delta;

  SegmentMinimizer out;
  if (lambda2 >= threshold) {
    // single component, free ends shortened by delta on each side
    out.components = 1;
    out.gap = 0.0;
    if (L > 2.0 * delta) {
      out.piece_length = L - 2.0 * delta;
      out.energy =
          lambda1 * out.piece_length + 2.0 * alpha * pow_integral(delta, p);
    } else {
      out.piece_length = 0.0;
      out.energy = 2.0 * alpha * pow_integral(L / 2.0, p);
    }
    return out;
  }

  // breakup: count gaps (components - 1) following the appendix convention
  // of components pinned to both ends of [0, L]
  auto energy_l0 = [&](double c) {
    return 2.0 * alpha * pow_integral(L / (2.0 * c), p) * c +
           lambda1 * lambda2 * c;
  };
  const double cbar = L / (2.0 * delta);
  const double cstar_real =
      (L / 2.0) * std::pow((p + 1.0) * lambda1 * lambda2 / (2.0 * p * alpha),
                           -1.0 / (p + 1.0));
  double lo = std::max(1.0, std::floor(cstar_real));
  double hi = std::ceil(cstar_real);
  double cstar = (energy_l0(lo) <= energy_l0(hi)) ? lo : hi;

  if (cstar < cbar) {
    // rounding put the count inside the positive-length regime
    out.components = static_cast<std::int64_t>(cstar) + 1;
    out.piece_length = L / cstar - 2.0 * delta;
    out.gap = 2.0 * delta;
    out.energy = lambda1 * L + lambda1 * lambda2 * cstar -
                 2.0 * p / (p + 1.0) * lambda1 * delta * cstar;
  } else {
    out.components = static_cast<std::int64_t>(cstar) + 1;
    out.piece_length = 0.0;
    out.gap = L / cstar;
    out.energy = energy_l0(cstar);
  }
  return out;
}

BruteForceSegment brute_force_segment(double L, double alpha, double lambda1,
                                      double lambda2, double p, double grid) {
  require_positive(L, "L");
  require_positive(alpha, "alpha");
  require_positive(lambda1, "lambda1");
  require_positive(lambda2, "lambda2");
  require_positive(grid, "grid");
  if (!(p >= 1.0)) fail(ErrorCode::NonPositive, "p must be >= 1");
  if (grid > L / 10.0)
    fail(ErrorCode::InvalidArgument, "grid resolution must be <= L / 10");

  const double cstar_real =
      (L / 2.0) * std::pow((p + 1.0) * lambda1 * lambda2 / (2.0 * p * alpha),
                           -1.0 / (p + 1.0));
  std::int64_t kmax = static_cast<std::int64_t>(std::ceil(3.0 * cstar_real));
  kmax = std::max<std::int64_t>(kmax, 3);

  auto make_config = [&](std::int64_t k, double l) {
    SegmentConfig cfg;
    cfg.L = L;
    if (k == 1) {
      cfg.intervals.push_back({(L - l) / 2.0, (L + l) / 2.0});
      return cfg;
    }
    // pinned family: end pieces of length l/2 at 0 and L, k - 2 interior
    // pieces of length l, k - 1 uniform gaps
    double g = (L - (k - 1) * l) / (k - 1);
    cfg.intervals.push_back({0.0, l / 2.0});
    double pos = l / 2.0;
    for (std::int64_t i = 0; i < k - 2; ++i) {
      pos += g;
      cfg.intervals.push_back({pos, pos + l});
      pos += l;
    }
    cfg.intervals.push_back({L - l / 2.0, L});
    return cfg;
  };

  bool first = true;
  BruteForceSegment best;
  for (std::int64_t k = 1; k <= kmax; ++k) {
    double lmax = (k == 1) ? L : L / static_cast<double>(k - 1);
    std::int64_t steps = static_cast<std::int64_t>(std::floor(lmax / grid));
    for (std::int64_t s = 0; s <= steps; ++s) {
      double l = std::min(s * grid, lmax * (1.0 - 1e-12));
      SegmentConfig cfg = make_config(k, l);
      double e = segment_energy(cfg, alpha, lambda1, lambda2, p);
      if (first || e < best.energy) {
        first = false;
        best.energy = e;
        best.components = k;
        best.config = std::move(cfg);
      }
    }
  }
  return best;
}

}  // namespace mppc
