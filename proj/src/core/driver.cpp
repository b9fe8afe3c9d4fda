#include "core/driver.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <map>

#include "core/admm.hpp"
#include "core/energy.hpp"
#include "core/projection.hpp"
#include "core/resolution.hpp"
#include "core/rng.hpp"
#include "core/topology.hpp"

namespace mppc {

namespace {

// weighted sample proportional to score[i], deterministic given the rng
std::int64_t sample_index(const std::vector<double>& score, Rng& rng) {
  double total = 0.0;
  for (double s : score) total += s;
  if (!(total > 0.0)) {
    // degenerate scores: first positive entry, else index 0
    for (std::size_t i = 0; i < score.size(); ++i)
      if (score[i] > 0.0) return static_cast<std::int64_t>(i);
    return 0;
  }
  double u = rng.uniform() * total;
  double acc = 0.0;
  for (std::size_t i = 0; i < score.size(); ++i) {
    acc += score[i];
    if (u < acc) return static_cast<std::int64_t>(i);
  }
  return static_cast<std::int64_t>(score.size()) - 1;
}

}  // namespace

std::vector<double> lloyd(const PointCloud& cloud, std::int64_t k,
                          std::uint64_t seed, int iters) {
  const int d = cloud.d;
  if (k < 1 || k > cloud.n)
    fail(ErrorCode::InvalidArgument, "lloyd requires 1 <= k <= n");
  Rng rng(mix_seed(seed, static_cast<std::uint64_t>(k)));

  // k-means++ seeding, mass-weighted
  std::vector<double> centers;
  centers.reserve(k * d);
  std::vector<double> mind2(cloud.n, std::numeric_limits<double>::infinity());
  std::vector<double> score = cloud.w;
  std::int64_t first = sample_index(score, rng);
  centers.insert(centers.end(), cloud.point(first), cloud.point(first) + d);
  for (std::int64_t c = 1; c < k; ++c) {
    const double* last = centers.data() + (c - 1) * d;
    for (std::int64_t i = 0; i < cloud.n; ++i)
      mind2[i] = std::min(mind2[i], dist2(cloud.point(i), last, d));
    for (std::int64_t i = 0; i < cloud.n; ++i)
      score[i] = cloud.w[i] * mind2[i];
    std::int64_t pick = sample_index(score, rng);
    centers.insert(centers.end(), cloud.point(pick), cloud.point(pick) + d);
  }

  std::vector<std::int64_t> owner(cloud.n, -1);
  std::vector<double> mass(k), sums(static_cast<std::size_t>(k) * d);
  for (int it = 0; it < iters; ++it) {
    bool changed = false;
    for (std::int64_t i = 0; i < cloud.n; ++i) {
      const double* x = cloud.point(i);
      std::int64_t best = 0;
      double bestd = dist2(x, centers.data(), d);
      for (std::int64_t c = 1; c < k; ++c) {
        double dd = dist2(x, centers.data() + c * d, d);
        if (dd < bestd) {
          bestd = dd;
          best = c;
        }
      }
      if (owner[i] != best) {
        owner[i] = best;
        changed = true;
      }
    }
    if (!changed) break;

    std::fill(mass.begin(), mass.end(), 0.0);
    std::fill(sums.begin(), sums.end(), 0.0);
    for (std::int64_t i = 0; i < cloud.n; ++i) {
      double wi = cloud.w[i];
      mass[owner[i]] += wi;
      for (int t = 0; t < d; ++t)
        sums[owner[i] * d + t] += wi * cloud.point(i)[t];
    }
    std::vector<std::int64_t> taken;
    for (std::int64_t c = 0; c < k; ++c) {
      if (mass[c] > 0.0) {
        for (int t = 0; t < d; ++t) centers[c * d + t] = sums[c * d + t] / mass[c];
      } else {
        // re-seed to the farthest point not already used this round
        std::int64_t far = -1;
        double fard = -1.0;
        for (std::int64_t i = 0; i < cloud.n; ++i) {
          if (std::find(taken.begin(), taken.end(), i) != taken.end())
            continue;
          double dd = dist2(cloud.point(i),
                            centers.data() + owner[i] * d, d);
          if (dd > fard) {
            fard = dd;
            far = i;
          }
        }
        if (far >= 0) {
          taken.push_back(far);
          for (int t = 0; t < d; ++t)
            centers[c * d + t] = cloud.point(far)[t];
        }
      }
    }
  }
  return centers;
}

MultiCurve init_singletons(const PointCloud& cloud, const Params& params) {
  validate(cloud, params);
  const int d = cloud.d;

  std::map<std::int64_t, std::pair<double, std::vector<double>>> cache;
  auto eval = [&](std::int64_t k) -> double {
    auto it = cache.find(k);
    if (it != cache.end()) return it->second.first;
    std::vector<double> centers = lloyd(cloud, k, params.seed);
    double fid = 0.0;
    for (std::int64_t i = 0; i < cloud.n; ++i) {
      const double* x = cloud.point(i);
      double best = dist2(x, centers.data(), d);
      for (std::int64_t c = 1; c < k; ++c)
        best = std::min(best, dist2(x, centers.data() + c * d, d));
      fid += cloud.w[i] * best;
    }
    double e = fid + params.lambda1 * params.lambda2 *
                         static_cast<double>(k - 1);
    cache[k] = {e, std::move(centers)};
    return e;
  };

  // doubling while the energy decreases
  std::int64_t k = 1;
  eval(1);
  while (2 * k <= cloud.n) {
    if (eval(2 * k) > eval(k)) {
      k = 2 * k;
      break;
    }
    k = 2 * k;
  }
  // interval-halving refinement
  std::int64_t kbest = std::max<std::int64_t>(1, k / 2);
  std::int64_t step = kbest;
  while (step > 0) {
    step /= 2;
    if (step == 0) break;
    std::int64_t kk = kbest + step;
    if (kk <= cloud.n && eval(kk) < eval(kbest)) kbest = kk;
    if (step == 1) break;
  }

  // best configuration visited
  std::int64_t arg = kbest;
  for (const auto& [kk, ec] : cache)
    if (ec.first < cache[arg].first) arg = kk;

  const std::vector<double>& centers = cache[arg].second;
  MultiCurve mc;
  mc.d = d;
  mc.comps.resize(arg);
  for (std::int64_t c = 0; c < arg; ++c)
    mc.comps[c].assign(centers.begin() + c * d, centers.begin() + (c + 1) * d);
  return mc;
}

std::pair<MultiCurve, FitReport> fit(const PointCloud& cloud,
                                     const Params& params,
                                     const MultiCurve* initial) {
  validate(cloud, params);
  if (params.p != 2.0)
    fail(ErrorCode::UnsupportedExponent,
         "the fitting pipeline requires p = 2");

  auto t0 = std::chrono::steady_clock::now();
  MultiCurve curves;
  if (initial != nullptr) {
    validate_curves(*initial, cloud.d);
    curves = *initial;
  } else {
    curves = init_singletons(cloud, params);
  }

  FitReport rep;
  const int d = cloud.d;
  int inner = params.inner_admm_iters;
  double prev_energy = std::numeric_limits<double>::quiet_NaN();

  // snapshot taken before a re-parametrization; restored if the next
  // iteration fails to recover the pre-move energy
  bool pending_recovery = false;
  MultiCurve snapshot;
  double snapshot_energy = 0.0;

  int iter = 0;
  for (iter = 1; iter <= params.max_outer_iters; ++iter) {
    Assignment a = assign(cloud, curves, params.threads);
    vertex_stats(cloud, curves, a, params.threads);

    // components that lost all projected mass cannot be relaxed; drop them
    if (!params.ppc_only && curves.component_count() > 1) {
      CurveIndex idx(curves);
      bool any_empty = false;
      for (int c = 0; c < curves.component_count() && !any_empty; ++c) {
        double mass = 0.0;
        for (std::int64_t j = 0; j < curves.comp_size(c); ++j)
          mass += a.mass[idx.global(c, j)];
        any_empty = mass <= 0.0;
      }
      if (any_empty) {
        auto evs = remove_empty_components(cloud, curves, params, iter);
        rep.events.insert(rep.events.end(), evs.begin(), evs.end());
        if (!evs.empty()) {
          a = assign(cloud, curves, params.threads);
          vertex_stats(cloud, curves, a, params.threads);
        }
      }
    }

    // relax non-singleton components; move singletons to their centroids
    {
      CurveIndex idx(curves);
      for (int c = 0; c < curves.component_count(); ++c) {
        std::int64_t m = curves.comp_size(c);
        std::int64_t g0 = idx.global(c, 0);
        if (m == 1) {
          if (!params.fix_endpoints && a.mass[g0] > 0.0)
            for (int t = 0; t < d; ++t)
              curves.comps[c][t] = a.centroid[g0 * d + t];
          continue;
        }
        bool any = params.fix_endpoints;
        for (std::int64_t j = 0; j < m && !any; ++j)
          any = a.mass[g0 + j] > 0.0;
        if (!any) continue;
        RelaxResult r =
            relax(a.mass.data() + g0, a.centroid.data() + g0 * d,
                  curves.comps[c].data(), m, d, params.lambda1, params.rho,
                  inner, params.fix_endpoints);
        curves.comps[c] = std::move(r.y);
      }
    }

    // recovery check for the previous re-parametrization
    if (pending_recovery) {
      double now = discrete_energy(cloud, curves, params).total;
      if (now > snapshot_energy + 1e-9 * std::max(1.0, std::abs(snapshot_energy)))
        curves = snapshot;
      pending_recovery = false;
      snapshot = MultiCurve{};
    }

    // staggered schedule
    bool flagged = false;
    const int top = params.top_period;
    if (!params.ppc_only && (iter + 4) % top == 0) {
      auto evs = cut_pass(cloud, curves, params, iter);
      rep.events.insert(rep.events.end(), evs.begin(), evs.end());
    } else if (!params.ppc_only && (iter + 3) % top == 0) {
      auto evs = singleton_pass(cloud, curves, params, iter);
      rep.events.insert(rep.events.end(), evs.begin(), evs.end());
    } else if (!params.ppc_only && (iter + 2) % top == 0) {
      auto evs = connect_pass(cloud, curves, params, iter, inner);
      rep.events.insert(rep.events.end(), evs.begin(), evs.end());
    } else if ((iter + 1) % params.reparam_period == 0 &&
               iter < params.max_outer_iters) {
      Assignment s = assign(cloud, curves, params.threads);
      vertex_stats(cloud, curves, s, params.threads);
      CurveIndex idx(curves);
      int inserted = 0;
      for (int c = 0; c < curves.component_count(); ++c) {
        std::int64_t m = curves.comp_size(c);
        std::vector<double> mass(s.mass.begin() + idx.global(c, 0),
                                 s.mass.begin() + idx.global(c, 0) + m);
        inserted += refine(curves.comps[c], d, mass, params);
      }
      if (inserted > 0) {
        flagged = true;
        s = assign(cloud, curves, params.threads);
        vertex_stats(cloud, curves, s, params.threads);
        idx = CurveIndex(curves);
      }
      MultiCurve before = curves;
      double before_energy = discrete_energy(cloud, curves, params).total;
      bool moved = false;
      for (int c = 0; c < curves.component_count(); ++c) {
        std::int64_t m = curves.comp_size(c);
        std::vector<double> mass(s.mass.begin() + idx.global(c, 0),
                                 s.mass.begin() + idx.global(c, 0) + m);
        moved |= reparametrize(curves.comps[c], d, mass);
      }
      if (moved) {
        flagged = true;
        pending_recovery = true;
        snapshot = std::move(before);
        snapshot_energy = before_energy;
      }
    }

    double energy = discrete_energy(cloud, curves, params).total;
    rep.energy_history.push_back(energy);
    if (flagged) rep.refinement_iterations.push_back(iter);

    // when progress stalls, spend more ADMM cycles per projection update
    if (std::isfinite(prev_energy)) {
      double decrease = prev_energy - energy;
      if (decrease < 1e-4 * std::max(std::abs(prev_energy), 1e-300))
        inner = std::min(2 * inner, params.max_inner_admm_iters);
    }
    prev_energy = energy;

    if (iter > top && !pending_recovery) {
      double ref = rep.energy_history[iter - 1 - top];
      bool quiet =
          rep.events.empty() || rep.events.back().iteration <= iter - top;
      if (quiet &&
          std::abs(ref - energy) <=
              params.energy_rtol * std::max(std::abs(ref), 1e-300)) {
        rep.converged = true;
        break;
      }
    }
  }

  rep.outer_iterations = std::min(iter, params.max_outer_iters);
  rep.final_energy = discrete_energy(cloud, curves, params);
  rep.wall_time_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
          .count();
  return {std::move(curves), rep};
}

}  // namespace mppc
