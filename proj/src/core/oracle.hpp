#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "core/types.hpp"

namespace mppc {

// Closed-form predictions for the length scales of minimizers, plus an
// independent brute-force verifier for the uniform-density segment case.

// sqrt(lambda1 / (2 alpha))
double smoothing_length(double lambda1, double alpha);

// h = (1/(2K)) (sqrt(1 + 2 lambda1 K^2 / alpha) - 1), continuous at K = 0.
// Always h <= smoothing_length(lambda1, alpha).
double projection_distance(double curvature, double lambda1, double alpha);

// 2 alpha H^2: below this, a straight line through noise of mean squared
// projection distance H is linearly unstable.
double critical_lambda1(double alpha, double H);

// (2p/(p+1))^p lambda1 / lambda2^p
double critical_density(double lambda1, double lambda2, double p = 2.0);

// 2 ((p+1) lambda1 lambda2 / (2 p alpha))^(1/(p+1))
double typical_gap(double lambda1, double lambda2, double alpha,
                   double p = 2.0);

// (lambda1, lambda2) = (2 alpha* H*^2, (4 sqrt 2 / 3) H*)
std::pair<double, double> select_params(double alpha_star, double hstar);

// alternative mode: lambda1 from a chosen lambda2 (p = 2)
double lambda1_from_lambda2(double alpha_star, double lambda2);

// Collection of closed intervals [a_i, b_i] inside [0, L]; intervals of
// zero length are isolated points.
struct SegmentConfig {
  double L = 0.0;
  std::vector<std::pair<double, double>> intervals;

  double total_curve_length() const;
  double total_gap() const;
  std::vector<double> gap_sizes() const;
  void validate() const;
};

// Energy of a configuration against uniform density alpha on [0, L]:
// exact per-gap fidelity integrals of x^p over half-gaps and the two end
// overhangs, plus lambda1 (length + lambda2 * (#intervals - 1)).
double segment_energy(const SegmentConfig& config, double alpha,
                      double lambda1, double lambda2, double p);

struct SegmentMinimizer {
  std::int64_t components = 0;
  double piece_length = 0.0;  // l*, per component
  double gap = 0.0;
  double energy = 0.0;
};

// Full case analysis of the uniform segment: connected for
// lambda2 >= (2p/(p+1)) (lambda1/alpha)^(1/p), otherwise breakup with the
// discrete argmin over the zero-length component count; ties at the
// threshold resolve to the connected branch.
SegmentMinimizer segment_minimizer(double L, double alpha, double lambda1,
                                   double lambda2, double p);

struct BruteForceSegment {
  SegmentConfig config;
  std::int64_t components = 0;
  double energy = 0.0;
};

// Exhaustive search over component counts with equal interior lengths and
// uniform gaps on a length grid. Requires grid <= L / 10.
BruteForceSegment brute_force_segment(double L, double alpha, double lambda1,
                                      double lambda2, double p, double grid);

}  // namespace mppc
