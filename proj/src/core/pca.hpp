#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "core/types.hpp"

namespace mppc {

std::vector<double> weighted_mean(const double* xs, const double* w,
                                  std::int64_t n, int d);

// Leading eigenvector of the weighted covariance, by power iteration with a
// deterministic start and sign convention (largest-magnitude entry positive).
// Never materializes the d x d covariance.
std::vector<double> principal_axis(const double* xs, const double* w,
                                   std::int64_t n, int d,
                                   const std::vector<double>* deflate = nullptr);

// Top-2 orthonormal basis plus the mean, for 2-d projection of d > 2 data.
struct Pca2 {
  std::vector<double> mean;
  std::vector<double> axis1;
  std::vector<double> axis2;
};
Pca2 pca2_basis(const PointCloud& cloud);

// Straight m-vertex polyline along the first principal axis, spanning the
// range of the projected data.
MultiCurve principal_line(const PointCloud& cloud, std::int64_t m);

}  // namespace mppc
