#include "core/projection.hpp"

#include "core/parallel.hpp"

namespace mppc {

namespace {

// flattened vertex table for the inner scan
struct FlatVertices {
  std::vector<double> v;  // m * d
  std::int64_t m = 0;

  FlatVertices(const MultiCurve& mc) {
    m = mc.total_vertices();
    v.resize(static_cast<std::size_t>(m) * mc.d);
    std::int64_t g = 0;
    for (int c = 0; c < mc.component_count(); ++c)
      for (std::int64_t j = 0; j < mc.comp_size(c); ++j, ++g)
        for (int t = 0; t < mc.d; ++t) v[g * mc.d + t] = mc.vertex(c, j)[t];
  }
};

}  // namespace

Assignment assign(const PointCloud& cloud, const MultiCurve& curves,
                  int threads) {
  const int d = cloud.d;
  FlatVertices fv(curves);
  Assignment a;
  a.owner.resize(cloud.n);
  a.dist2.resize(cloud.n);
  for_each_chunk(cloud.n, threads, [&](std::int64_t, std::int64_t b,
                                       std::int64_t e) {
    for (std::int64_t i = b; i < e; ++i) {
      const double* x = cloud.point(i);
      std::int64_t best = 0;
      double bestd = dist2(x, fv.v.data(), d);
      for (std::int64_t j = 1; j < fv.m; ++j) {
        double dj = dist2(x, fv.v.data() + j * d, d);
        if (dj < bestd) {
          bestd = dj;
          best = j;
        }
      }
      a.owner[i] = best;
      a.dist2[i] = bestd;
    }
  });
  return a;
}

void vertex_stats(const PointCloud& cloud, const MultiCurve& curves,
                  Assignment& a, int threads) {
  const int d = cloud.d;
  const std::int64_t m = curves.total_vertices();
  const std::int64_t nchunks = chunk_count(cloud.n);

  // per-chunk partial sums, merged in chunk order
  std::vector<double> pmass(static_cast<std::size_t>(nchunks) * m, 0.0);
  std::vector<double> psum(static_cast<std::size_t>(nchunks) * m * d, 0.0);
  for_each_chunk(cloud.n, threads, [&](std::int64_t c, std::int64_t b,
                                       std::int64_t e) {
    double* cm = pmass.data() + c * m;
    double* cs = psum.data() + c * m * d;
    for (std::int64_t i = b; i < e; ++i) {
      std::int64_t j = a.owner[i];
      double wi = cloud.w[i];
      cm[j] += wi;
      const double* x = cloud.point(i);
      for (int t = 0; t < d; ++t) cs[j * d + t] += wi * x[t];
    }
  });

  a.mass.assign(m, 0.0);
  a.centroid.assign(static_cast<std::size_t>(m) * d, 0.0);
  a.empty.assign(m, 1);
  for (std::int64_t c = 0; c < nchunks; ++c) {
    const double* cm = pmass.data() + c * m;
    const double* cs = psum.data() + c * m * d;
    for (std::int64_t j = 0; j < m; ++j) {
      a.mass[j] += cm[j];
      for (int t = 0; t < d; ++t) a.centroid[j * d + t] += cs[j * d + t];
    }
  }
  for (std::int64_t j = 0; j < m; ++j) {
    if (a.mass[j] > 0.0) {
      a.empty[j] = 0;
      for (int t = 0; t < d; ++t) a.centroid[j * d + t] /= a.mass[j];
    } else {
      for (int t = 0; t < d; ++t) a.centroid[j * d + t] = 0.0;
    }
  }
}

Serving continuum_serving(const PointCloud& cloud, const MultiCurve& curves,
                          int threads) {
  const int d = cloud.d;
  FlatVertices fv(curves);
  CurveIndex idx(curves);

  Serving s;
  s.edge_u.clear();
  s.edge_comp.clear();
  for (int c = 0; c < curves.component_count(); ++c) {
    for (std::int64_t j = 0; j + 1 < curves.comp_size(c); ++j) {
      s.edge_u.push_back(idx.global(c, j));
      s.edge_comp.push_back(c);
    }
  }
  const std::int64_t ne = static_cast<std::int64_t>(s.edge_u.size());

  s.on_edge.resize(cloud.n);
  s.entity.resize(cloud.n);
  s.dist2.resize(cloud.n);
  s.nearest_vertex.resize(cloud.n);
  s.vertex_dist2.resize(cloud.n);

  for_each_chunk(cloud.n, threads, [&](std::int64_t, std::int64_t b,
                                       std::int64_t e) {
    for (std::int64_t i = b; i < e; ++i) {
      const double* x = cloud.point(i);
      std::int64_t bestv = 0;
      double bestvd = dist2(x, fv.v.data(), d);
      for (std::int64_t j = 1; j < fv.m; ++j) {
        double dj = dist2(x, fv.v.data() + j * d, d);
        if (dj < bestvd) {
          bestvd = dj;
          bestv = j;
        }
      }
      // vertices win ties against edge interiors
      std::uint8_t on_edge = 0;
      std::int64_t entity = bestv;
      double bestd = bestvd;
      for (std::int64_t eid = 0; eid < ne; ++eid) {
        const double* a = fv.v.data() + s.edge_u[eid] * d;
        const double* bptr = fv.v.data() + (s.edge_u[eid] + 1) * d;
        SegmentFoot f = segment_foot(x, a, bptr, d);
        if (!f.interior) continue;
        double dd = f.distance * f.distance;
        if (dd < bestd) {
          bestd = dd;
          on_edge = 1;
          entity = eid;
        }
      }
      s.on_edge[i] = on_edge;
      s.entity[i] = entity;
      s.dist2[i] = bestd;
      s.nearest_vertex[i] = bestv;
      s.vertex_dist2[i] = bestvd;
    }
  });
  return s;
}

}  // namespace mppc
