#include "core/resolution.hpp"

#include <algorithm>
#include <cmath>

#include "core/geometry.hpp"

namespace mppc {

namespace {

std::vector<double> edge_lengths(const std::vector<double>& v, int d) {
  std::int64_t m = static_cast<std::int64_t>(v.size()) / d;
  std::vector<double> e(m > 0 ? m - 1 : 0);
  for (std::int64_t j = 0; j + 1 < m; ++j)
    e[j] = dist(v.data() + j * d, v.data() + (j + 1) * d, d);
  return e;
}

// l_i: half the sum of the adjacent edge lengths
std::vector<double> vertex_spans(const std::vector<double>& e) {
  std::int64_t m = static_cast<std::int64_t>(e.size()) + 1;
  std::vector<double> l(m, 0.0);
  for (std::int64_t j = 0; j < m; ++j) {
    double s = 0.0;
    if (j > 0) s += e[j - 1];
    if (j + 1 < m) s += e[j];
    l[j] = 0.5 * s;
  }
  return l;
}

double mean_turning_angle(const std::vector<double>& v, int d) {
  std::int64_t m = static_cast<std::int64_t>(v.size()) / d;
  if (m < 3) return 0.0;
  double total = 0.0;
  std::int64_t count = 0;
  for (std::int64_t j = 1; j + 1 < m; ++j) {
    const double* a = v.data() + (j - 1) * d;
    const double* b = v.data() + j * d;
    const double* c = v.data() + (j + 1) * d;
    double la = dist(a, b, d), lb = dist(b, c, d);
    if (la == 0.0 || lb == 0.0) continue;
    double dp = 0.0;
    for (int t = 0; t < d; ++t) dp += (b[t] - a[t]) * (c[t] - b[t]);
    dp = std::clamp(dp / (la * lb), -1.0, 1.0);
    total += std::acos(dp);
    ++count;
  }
  return count > 0 ? total / static_cast<double>(count) : 0.0;
}

}  // namespace

bool reparametrize(std::vector<double>& vertices, int d,
                   const std::vector<double>& vertex_mass) {
  std::int64_t m = static_cast<std::int64_t>(vertices.size()) / d;
  if (m < 3) return false;
  std::vector<double> e = edge_lengths(vertices, d);
  double length = 0.0;
  for (double ej : e) length += ej;
  if (length <= 0.0) return false;

  std::vector<double> l = vertex_spans(e);
  std::vector<double> density(m, 0.0);
  double min_pos = 0.0;
  bool any = false;
  for (std::int64_t j = 0; j < m; ++j) {
    if (l[j] > 0.0 && vertex_mass[j] > 0.0) {
      density[j] = vertex_mass[j] / l[j];
      if (!any || density[j] < min_pos) min_pos = density[j];
      any = true;
    }
  }
  if (!any) return false;  // no density information

  // per-edge sqrt-density weight; zero-mass stretches use the smallest
  // positive estimate
  std::vector<double> phi(e.size(), 0.0);
  double total_phi = 0.0;
  for (std::size_t j = 0; j < e.size(); ++j) {
    double rho = 0.5 * (density[j] + density[j + 1]);
    if (rho <= 0.0) rho = min_pos;
    phi[j] = std::sqrt(rho) * e[j];
    total_phi += phi[j];
  }
  if (total_phi <= 0.0) return false;

  std::vector<double> out(vertices.size());
  for (int t = 0; t < d; ++t) {
    out[t] = vertices[t];
    out[(m - 1) * d + t] = vertices[(m - 1) * d + t];
  }
  std::size_t edge = 0;
  double consumed = 0.0;  // phi already used on earlier edges
  for (std::int64_t j = 1; j + 1 < m; ++j) {
    double target = total_phi * static_cast<double>(j) /
                    static_cast<double>(m - 1);
    while (edge + 1 < e.size() && consumed + phi[edge] < target)
      consumed += phi[edge++];
    double frac = phi[edge] > 0.0
                      ? std::clamp((target - consumed) / phi[edge], 0.0, 1.0)
                      : 0.0;
    const double* a = vertices.data() + edge * d;
    const double* b = vertices.data() + (edge + 1) * d;
    for (int t = 0; t < d; ++t) out[j * d + t] = a[t] + frac * (b[t] - a[t]);
  }

  bool moved = out != vertices;
  vertices = std::move(out);
  return moved;
}

int refine(std::vector<double>& vertices, int d,
           std::vector<double>& vertex_mass, const Params& params) {
  std::int64_t m = static_cast<std::int64_t>(vertices.size()) / d;
  if (m < 2) return 0;
  std::vector<double> e = edge_lengths(vertices, d);
  double length = 0.0;
  for (double ej : e) length += ej;
  if (length <= 0.0) return 0;

  const double cap =
      std::max(8.0, 4.0 * length / params.lambda2);
  int inserted = 0;
  while (true) {
    m = static_cast<std::int64_t>(vertices.size()) / d;
    if (static_cast<double>(m) >= cap) break;
    double mean_edge = length / static_cast<double>(m - 1);
    bool need = mean_edge > params.lambda2 / 2.0;
    if (!need && params.turning_angle_check)
      need = mean_turning_angle(vertices, d) > params.turning_angle_threshold;
    if (!need) break;

    e = edge_lengths(vertices, d);
    std::vector<double> l = vertex_spans(e);
    // site: vertex with the largest l_i * mass_i that has a positive
    // adjacent edge
    std::int64_t site = -1;
    double best = -1.0;
    for (std::int64_t j = 0; j < m; ++j) {
      bool has_edge = (j > 0 && e[j - 1] > 0.0) || (j + 1 < m && e[j] > 0.0);
      if (!has_edge) continue;
      double score = l[j] * vertex_mass[j];
      if (score > best) {
        best = score;
        site = j;
      }
    }
    if (site < 0) break;
    double left = site > 0 ? e[site - 1] : -1.0;
    double right = site + 1 < m ? e[site] : -1.0;
    std::int64_t edge = (left >= right) ? site - 1 : site;

    std::vector<double> mid(d);
    for (int t = 0; t < d; ++t)
      mid[t] = 0.5 * (vertices[edge * d + t] + vertices[(edge + 1) * d + t]);
    vertices.insert(vertices.begin() + (edge + 1) * d, mid.begin(), mid.end());
    vertex_mass.insert(vertex_mass.begin() + edge + 1, 0.0);
    ++inserted;
  }
  return inserted;
}

}  // namespace mppc
