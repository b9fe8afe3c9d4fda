#pragma once

#include <cmath>
#include <cstddef>

namespace mppc {

inline double dot(const double* a, const double* b, int d) {
  double s = 0.0;
  for (int i = 0; i < d; ++i) s += a[i] * b[i];
  return s;
}

inline double dist2(const double* a, const double* b, int d) {
  double s = 0.0;
  for (int i = 0; i < d; ++i) {
    double t = a[i] - b[i];
    s += t * t;
  }
  return s;
}

inline double dist(const double* a, const double* b, int d) {
  return std::sqrt(dist2(a, b, d));
}

// Orthogonal projection of x onto segment [a, b].
struct SegmentFoot {
  double t = 0.0;        // clamped parameter in [0, 1]
  double t_raw = 0.0;    // unclamped parameter
  double distance = 0.0; // |x - foot|
  bool interior = false; // unclamped t strictly inside (0, 1)
};

// Does not materialize the foot point; callers that need it evaluate
// a + t (b - a) themselves.
inline SegmentFoot segment_foot(const double* x, const double* a,
                                const double* b, int d) {
  SegmentFoot f;
  double ab2 = dist2(a, b, d);
  if (ab2 == 0.0) {
    f.t = 0.0;
    f.t_raw = 0.0;
    f.distance = dist(x, a, d);
    f.interior = false;
    return f;
  }
  double num = 0.0;
  for (int i = 0; i < d; ++i) num += (x[i] - a[i]) * (b[i] - a[i]);
  f.t_raw = num / ab2;
  f.interior = f.t_raw > 0.0 && f.t_raw < 1.0;
  f.t = f.t_raw < 0.0 ? 0.0 : (f.t_raw > 1.0 ? 1.0 : f.t_raw);
  double s = 0.0;
  for (int i = 0; i < d; ++i) {
    double foot_i = a[i] + f.t * (b[i] - a[i]);
    double t = x[i] - foot_i;
    s += t * t;
  }
  f.distance = std::sqrt(s);
  return f;
}

inline double segment_dist2(const double* x, const double* a, const double* b,
                            int d) {
  SegmentFoot f = segment_foot(x, a, b, d);
  return f.distance * f.distance;
}

}  // namespace mppc
