#pragma once

#include <cstdint>
#include <vector>

#include "core/types.hpp"

namespace mppc {

// ADMM for the fixed-projection subproblem on one polyline:
//
//   min_y  sum_j mass_j |y_j - centroid_j|^2 + lambda1 sum_j |y_{j+1} - y_j|
//
// split as z = Dy with penalty rho. One cycle is
//   1. (2W + rho D^T D) y = 2 W centroid + rho D^T (z - b)   (tridiagonal)
//   2. z = blockshrink(Dy + b, lambda1 / rho)                (row-wise)
//   3. b = b + Dy - z

// mass-balanced default penalty, clamped away from zero
double default_rho(const double* mass, std::int64_t m);

// Solves the step-1 system; d independent tridiagonal solves in O(md).
// With fixed_endpoints the first and last rows become identity rows that
// pin the values currently stored in y. Throws SingularSystem when every
// mass vanishes and the endpoints are free.
void y_update(const double* mass, const double* centroid, const double* z,
              const double* b, double rho, bool fixed_endpoints, double* y,
              std::int64_t m, int d);

// Row-wise Euclidean shrinkage of v (rows x d) by kappa into z.
void z_update(const double* v, std::int64_t rows, int d, double kappa,
              double* z);

double fixed_assignment_objective(const double* mass, const double* centroid,
                                  const double* y, std::int64_t m, int d,
                                  double lambda1);

struct RelaxResult {
  std::vector<double> y;
  double objective_in = 0.0;
  double objective_out = 0.0;  // <= objective_in (best iterate is returned)
  double constraint_residual = 0.0;  // max row norm of Dy - z at the end
  int cycles = 0;
};

// Runs `cycles` ADMM cycles from y0 and returns the best iterate seen, so
// the objective never increases. rho = 0 selects default_rho.
RelaxResult relax(const double* mass, const double* centroid,
                  const double* y0, std::int64_t m, int d, double lambda1,
                  double rho, int cycles, bool fixed_endpoints);

}  // namespace mppc
