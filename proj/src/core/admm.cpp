#include "core/admm.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>

#include "core/geometry.hpp"

namespace mppc {

double default_rho(const double* mass, std::int64_t m) {
  double total = 0.0;
  for (std::int64_t j = 0; j < m; ++j) total += mass[j];
  return std::max(2.0 * total / static_cast<double>(m), 1e-12);
}

void y_update(const double* mass, const double* centroid, const double* z,
              const double* b, double rho, bool fixed_endpoints, double* y,
              std::int64_t m, int d) {
  if (m == 1) {
    if (fixed_endpoints) return;
    if (!(mass[0] > 0.0))
      fail(ErrorCode::SingularSystem, "free vertex with zero projected mass");
    for (int t = 0; t < d; ++t) y[t] = centroid[t];
    return;
  }
  if (!fixed_endpoints) {
    bool any = false;
    for (std::int64_t j = 0; j < m; ++j)
      if (mass[j] > 0.0) {
        any = true;
        break;
      }
    if (!any)
      fail(ErrorCode::SingularSystem,
           "all projected masses vanish and endpoints are free");
  }

  // tridiagonal system, one factorization shared by the d columns
  std::vector<double> sub(m, 0.0), diag(m, 0.0), sup(m, 0.0);
  std::vector<double> rhs(static_cast<std::size_t>(m) * d, 0.0);

  for (std::int64_t j = 0; j < m; ++j) {
    double dd = (j == 0 || j == m - 1) ? 1.0 : 2.0;  // D^T D diagonal
    diag[j] = 2.0 * mass[j] + rho * dd;
    if (j > 0) sub[j] = -rho;
    if (j < m - 1) sup[j] = -rho;
    // rhs = 2 W centroid + rho D^T (z - b)
    for (int t = 0; t < d; ++t) {
      double r = 2.0 * mass[j] * centroid[j * d + t];
      if (j < m - 1) r -= rho * (z[j * d + t] - b[j * d + t]);
      if (j > 0) r += rho * (z[(j - 1) * d + t] - b[(j - 1) * d + t]);
      rhs[j * d + t] = r;
    }
  }

  if (fixed_endpoints) {
    diag[0] = 1.0;
    sup[0] = 0.0;
    diag[m - 1] = 1.0;
    sub[m - 1] = 0.0;
    for (int t = 0; t < d; ++t) {
      rhs[t] = y[t];
      rhs[(m - 1) * d + t] = y[(m - 1) * d + t];
    }
  }

  // Thomas forward elimination / back substitution
  for (std::int64_t j = 1; j < m; ++j) {
    if (diag[j - 1] == 0.0)
      fail(ErrorCode::SingularSystem, "tridiagonal elimination broke down");
    double f = sub[j] / diag[j - 1];
    diag[j] -= f * sup[j - 1];
    for (int t = 0; t < d; ++t) rhs[j * d + t] -= f * rhs[(j - 1) * d + t];
  }
  if (diag[m - 1] == 0.0)
    fail(ErrorCode::SingularSystem, "tridiagonal elimination broke down");
  for (int t = 0; t < d; ++t)
    y[(m - 1) * d + t] = rhs[(m - 1) * d + t] / diag[m - 1];
  for (std::int64_t j = m - 2; j >= 0; --j)
    for (int t = 0; t < d; ++t)
      y[j * d + t] =
          (rhs[j * d + t] - sup[j] * y[(j + 1) * d + t]) / diag[j];
}

void z_update(const double* v, std::int64_t rows, int d, double kappa,
              double* z) {
  for (std::int64_t r = 0; r < rows; ++r) {
    double norm = 0.0;
    for (int t = 0; t < d; ++t) norm += v[r * d + t] * v[r * d + t];
    norm = std::sqrt(norm);
    if (norm > kappa) {
      double s = 1.0 - kappa / norm;
      for (int t = 0; t < d; ++t) z[r * d + t] = s * v[r * d + t];
    } else {
      for (int t = 0; t < d; ++t) z[r * d + t] = 0.0;
    }
  }
}

double fixed_assignment_objective(const double* mass, const double* centroid,
                                  const double* y, std::int64_t m, int d,
                                  double lambda1) {
  double obj = 0.0;
  for (std::int64_t j = 0; j < m; ++j)
    obj += mass[j] * dist2(y + j * d, centroid + j * d, d);
  for (std::int64_t j = 0; j + 1 < m; ++j)
    obj += lambda1 * dist(y + j * d, y + (j + 1) * d, d);
  return obj;
}

RelaxResult relax(const double* mass, const double* centroid,
                  const double* y0, std::int64_t m, int d, double lambda1,
                  double rho, int cycles, bool fixed_endpoints) {
  if (m < 2)
    fail(ErrorCode::InvalidArgument, "relax needs a polyline with m >= 2");
  if (rho == 0.0) rho = default_rho(mass, m);
  double kappa = lambda1 / rho;

  RelaxResult res;
  res.cycles = cycles;
  res.y.assign(y0, y0 + m * d);
  res.objective_in =
      fixed_assignment_objective(mass, centroid, y0, m, d, lambda1);
  res.objective_out = res.objective_in;

  std::vector<double> y(res.y);
  const std::int64_t rows = m - 1;
  std::vector<double> z(static_cast<std::size_t>(rows) * d);
  std::vector<double> b(static_cast<std::size_t>(rows) * d, 0.0);
  std::vector<double> v(static_cast<std::size_t>(rows) * d);
  for (std::int64_t r = 0; r < rows; ++r)
    for (int t = 0; t < d; ++t)
      z[r * d + t] = y[(r + 1) * d + t] - y[r * d + t];

  for (int it = 0; it < cycles; ++it) {
    y_update(mass, centroid, z.data(), b.data(), rho, fixed_endpoints,
             y.data(), m, d);
    for (std::int64_t r = 0; r < rows; ++r)
      for (int t = 0; t < d; ++t)
        v[r * d + t] = y[(r + 1) * d + t] - y[r * d + t] + b[r * d + t];
    z_update(v.data(), rows, d, kappa, z.data());
    for (std::int64_t r = 0; r < rows; ++r)
      for (int t = 0; t < d; ++t) b[r * d + t] = v[r * d + t] - z[r * d + t];

    double obj = fixed_assignment_objective(mass, centroid, y.data(), m, d,
                                            lambda1);
    if (obj < res.objective_out) {
      res.objective_out = obj;
      res.y = y;
    }
  }
  for (std::int64_t r = 0; r < rows; ++r) {
    double s = 0.0;
    for (int t = 0; t < d; ++t) {
      double diff = y[(r + 1) * d + t] - y[r * d + t] - z[r * d + t];
      s += diff * diff;
    }
    res.constraint_residual =
        std::max(res.constraint_residual, std::sqrt(s));
  }
  return res;
}

}  // namespace mppc
