#include "core/pca.hpp"

#include <algorithm>
#include <cmath>

namespace mppc {

std::vector<double> weighted_mean(const double* xs, const double* w,
                                  std::int64_t n, int d) {
  std::vector<double> mu(d, 0.0);
  double mass = 0.0;
  for (std::int64_t i = 0; i < n; ++i) {
    mass += w[i];
    for (int t = 0; t < d; ++t) mu[t] += w[i] * xs[i * d + t];
  }
  if (mass > 0.0)
    for (int t = 0; t < d; ++t) mu[t] /= mass;
  return mu;
}

std::vector<double> principal_axis(const double* xs, const double* w,
                                   std::int64_t n, int d,
                                   const std::vector<double>* deflate) {
  std::vector<double> mu = weighted_mean(xs, w, n, d);
  std::vector<double> v(d);
  for (int t = 0; t < d; ++t) v[t] = 1.0 + 1e-3 * static_cast<double>(t % 7);

  auto orthogonalize = [&](std::vector<double>& u) {
    if (!deflate) return;
    double dp = 0.0;
    for (int t = 0; t < d; ++t) dp += u[t] * (*deflate)[t];
    for (int t = 0; t < d; ++t) u[t] -= dp * (*deflate)[t];
  };
  auto normalize = [&](std::vector<double>& u) {
    double nrm = 0.0;
    for (double x : u) nrm += x * x;
    nrm = std::sqrt(nrm);
    if (nrm > 0.0)
      for (double& x : u) x /= nrm;
  };

  orthogonalize(v);
  normalize(v);
  std::vector<double> next(d);
  for (int it = 0; it < 128; ++it) {
    std::fill(next.begin(), next.end(), 0.0);
    for (std::int64_t i = 0; i < n; ++i) {
      double proj = 0.0;
      for (int t = 0; t < d; ++t) proj += (xs[i * d + t] - mu[t]) * v[t];
      double s = w[i] * proj;
      for (int t = 0; t < d; ++t) next[t] += s * (xs[i * d + t] - mu[t]);
    }
    orthogonalize(next);
    normalize(next);
    double nrm = 0.0;
    for (double x : next) nrm += x * x;
    if (nrm == 0.0) break;  // degenerate data; keep current vector
    v = next;
  }

  // sign convention: largest-magnitude entry positive
  int arg = 0;
  for (int t = 1; t < d; ++t)
    if (std::abs(v[t]) > std::abs(v[arg])) arg = t;
  if (v[arg] < 0.0)
    for (double& x : v) x = -x;
  return v;
}

Pca2 pca2_basis(const PointCloud& cloud) {
  Pca2 out;
  out.mean = weighted_mean(cloud.xs.data(), cloud.w.data(), cloud.n, cloud.d);
  out.axis1 =
      principal_axis(cloud.xs.data(), cloud.w.data(), cloud.n, cloud.d);
  out.axis2 = principal_axis(cloud.xs.data(), cloud.w.data(), cloud.n,
                             cloud.d, &out.axis1);
  return out;
}

MultiCurve principal_line(const PointCloud& cloud, std::int64_t m) {
  if (m < 2) fail(ErrorCode::InvalidArgument, "principal line needs m >= 2");
  const int d = cloud.d;
  std::vector<double> mu =
      weighted_mean(cloud.xs.data(), cloud.w.data(), cloud.n, d);
  std::vector<double> axis =
      principal_axis(cloud.xs.data(), cloud.w.data(), cloud.n, d);
  double lo = 0.0, hi = 0.0;
  for (std::int64_t i = 0; i < cloud.n; ++i) {
    double proj = 0.0;
    for (int t = 0; t < d; ++t) proj += (cloud.xs[i * d + t] - mu[t]) * axis[t];
    lo = std::min(lo, proj);
    hi = std::max(hi, proj);
  }
  MultiCurve mc;
  mc.d = d;
  mc.comps.resize(1);
  mc.comps[0].resize(static_cast<std::size_t>(m) * d);
  for (std::int64_t j = 0; j < m; ++j) {
    double s = lo + (hi - lo) * static_cast<double>(j) /
                        static_cast<double>(m - 1);
    for (int t = 0; t < d; ++t) mc.comps[0][j * d + t] = mu[t] + s * axis[t];
  }
  return mc;
}

}  // namespace mppc
