#include "mppc/mppc.h"

#include <cstring>
#include <string>

#include <json.hpp>

#include "core/driver.hpp"
#include "core/generate.hpp"
#include "core/io.hpp"
#include "core/oracle.hpp"
#include "core/types.hpp"

struct mppc_cloud {
  mppc::PointCloud c;
};
struct mppc_curves {
  mppc::MultiCurve mc;
};
struct mppc_result {
  mppc_curves curves;
  mppc::FitReport report;
  mppc::Params params;
};

namespace {

thread_local std::string g_last_error;

mppc_status status_of(mppc::ErrorCode code) {
  using mppc::ErrorCode;
  switch (code) {
    case ErrorCode::InvalidArgument: return MPPC_ERR_INVALID_ARGUMENT;
    case ErrorCode::NonFinite: return MPPC_ERR_NONFINITE;
    case ErrorCode::NonPositiveParam: return MPPC_ERR_NONPOSITIVE_PARAM;
    case ErrorCode::EmptyCloud: return MPPC_ERR_EMPTY_CLOUD;
    case ErrorCode::UnsupportedExponent: return MPPC_ERR_UNSUPPORTED_EXPONENT;
    case ErrorCode::InvalidEdge: return MPPC_ERR_INVALID_EDGE;
    case ErrorCode::InvalidRange: return MPPC_ERR_INVALID_RANGE;
    case ErrorCode::SingularSystem: return MPPC_ERR_SINGULAR_SYSTEM;
    case ErrorCode::NonPositive: return MPPC_ERR_NONPOSITIVE;
    case ErrorCode::ParseError: return MPPC_ERR_PARSE;
    case ErrorCode::ArityMismatch: return MPPC_ERR_ARITY_MISMATCH;
    case ErrorCode::UnknownKind: return MPPC_ERR_UNKNOWN_KIND;
    case ErrorCode::SchemaError: return MPPC_ERR_SCHEMA;
    case ErrorCode::IoError: return MPPC_ERR_IO;
  }
  return MPPC_ERR_INTERNAL;
}

template <typename F>
mppc_status guarded(F&& f) {
  try {
    f();
    return MPPC_OK;
  } catch (const mppc::Error& e) {
    g_last_error = e.what();
    return status_of(e.code());
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return MPPC_ERR_INTERNAL;
  } catch (...) {
    g_last_error = "unknown error";
    return MPPC_ERR_INTERNAL;
  }
}

mppc_status invalid(const char* what) {
  g_last_error = what;
  return MPPC_ERR_INVALID_ARGUMENT;
}

mppc::Params to_core(const mppc_params& p) {
  mppc::Params q;
  q.lambda1 = p.lambda1;
  q.lambda2 = p.lambda2;
  q.p = p.p;
  q.rho = p.rho;
  q.top_period = p.top_period;
  q.reparam_period = p.reparam_period;
  q.inner_admm_iters = p.inner_admm_iters;
  q.max_inner_admm_iters = p.max_inner_admm_iters;
  q.max_outer_iters = p.max_outer_iters;
  q.energy_rtol = p.energy_rtol;
  q.fix_endpoints = p.fix_endpoints != 0;
  q.turning_angle_check = p.turning_angle_check != 0;
  q.turning_angle_threshold = p.turning_angle_threshold;
  q.ppc_only = p.ppc_only != 0;
  q.seed = p.seed;
  q.threads = p.threads;
  return q;
}

mppc_params from_core(const mppc::Params& q) {
  mppc_params p;
  p.lambda1 = q.lambda1;
  p.lambda2 = q.lambda2;
  p.p = q.p;
  p.rho = q.rho;
  p.top_period = q.top_period;
  p.reparam_period = q.reparam_period;
  p.inner_admm_iters = q.inner_admm_iters;
  p.max_inner_admm_iters = q.max_inner_admm_iters;
  p.max_outer_iters = q.max_outer_iters;
  p.energy_rtol = q.energy_rtol;
  p.fix_endpoints = q.fix_endpoints ? 1 : 0;
  p.turning_angle_check = q.turning_angle_check ? 1 : 0;
  p.turning_angle_threshold = q.turning_angle_threshold;
  p.ppc_only = q.ppc_only ? 1 : 0;
  p.seed = q.seed;
  p.threads = q.threads;
  return p;
}

mppc::GenerateOptions options_from_json(const char* options_json) {
  mppc::GenerateOptions o;
  if (options_json == nullptr || *options_json == '\0') return o;
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(options_json);
  } catch (const nlohmann::json::exception& e) {
    mppc::fail(mppc::ErrorCode::ParseError,
               std::string("bad options JSON: ") + e.what());
  }
  if (!j.is_object())
    mppc::fail(mppc::ErrorCode::ParseError, "options must be a JSON object");
  if (j.contains("n")) o.n = j["n"].get<std::int64_t>();
  if (j.contains("noise")) o.noise = j["noise"].get<double>();
  if (j.contains("length")) o.length = j["length"].get<double>();
  if (j.contains("height")) o.height = j["height"].get<double>();
  if (j.contains("t0")) o.t0 = j["t0"].get<double>();
  if (j.contains("t1")) o.t1 = j["t1"].get<double>();
  if (j.contains("x0")) o.x0 = j["x0"].get<double>();
  if (j.contains("x1")) o.x1 = j["x1"].get<double>();
  if (j.contains("nx")) o.nx = j["nx"].get<std::int64_t>();
  if (j.contains("ny")) o.ny = j["ny"].get<std::int64_t>();
  return o;
}

}  // namespace

extern "C" {

const char* mppc_version(void) { return "1.0.0"; }

const char* mppc_last_error_message(void) { return g_last_error.c_str(); }

mppc_status mppc_cloud_create(const double* coords, const double* weights,
                              int64_t n, int32_t d, mppc_cloud** out) {
  if (!coords || !out) return invalid("coords and out must not be NULL");
  return guarded([&] {
    auto cloud = std::make_unique<mppc_cloud>();
    cloud->c.n = n;
    cloud->c.d = d;
    cloud->c.xs.assign(coords, coords + n * d);
    if (weights)
      cloud->c.w.assign(weights, weights + n);
    else
      cloud->c.w.assign(n, n > 0 ? 1.0 / static_cast<double>(n) : 0.0);
    mppc::validate_cloud(cloud->c);
    *out = cloud.release();
  });
}

mppc_status mppc_cloud_load_csv(const char* path, int32_t has_header,
                                const char* weight_column, int32_t normalize,
                                mppc_cloud** out) {
  if (!path || !out) return invalid("path and out must not be NULL");
  return guarded([&] {
    std::optional<bool> hh;
    if (has_header == 0) hh = false;
    if (has_header > 0) hh = true;
    std::optional<std::string> wc;
    if (weight_column) wc = std::string(weight_column);
    auto cloud = std::make_unique<mppc_cloud>();
    cloud->c = mppc::load_csv(path, hh, wc, normalize != 0);
    *out = cloud.release();
  });
}

mppc_status mppc_cloud_save_csv(const mppc_cloud* cloud, const char* path) {
  if (!cloud || !path) return invalid("cloud and path must not be NULL");
  return guarded([&] { mppc::save_csv(cloud->c, path); });
}

mppc_status mppc_cloud_generate(const char* kind, const char* options_json,
                                uint64_t seed, mppc_cloud** out) {
  if (!kind || !out) return invalid("kind and out must not be NULL");
  return guarded([&] {
    auto cloud = std::make_unique<mppc_cloud>();
    cloud->c = mppc::generate(kind, options_from_json(options_json), seed)
                   .cloud;
    *out = cloud.release();
  });
}

mppc_status mppc_cloud_normalize(mppc_cloud* cloud) {
  if (!cloud) return invalid("cloud must not be NULL");
  return guarded([&] { cloud->c = mppc::normalize(cloud->c); });
}

int64_t mppc_cloud_size(const mppc_cloud* cloud) {
  return cloud ? cloud->c.n : 0;
}

int32_t mppc_cloud_dim(const mppc_cloud* cloud) {
  return cloud ? cloud->c.d : 0;
}

mppc_status mppc_cloud_get(const mppc_cloud* cloud, double* coords,
                           double* weights) {
  if (!cloud) return invalid("cloud must not be NULL");
  if (coords)
    std::memcpy(coords, cloud->c.xs.data(),
                cloud->c.xs.size() * sizeof(double));
  if (weights)
    std::memcpy(weights, cloud->c.w.data(),
                cloud->c.w.size() * sizeof(double));
  return MPPC_OK;
}

void mppc_cloud_free(mppc_cloud* cloud) { delete cloud; }

mppc_status mppc_curves_create(const double* vertices,
                               const int64_t* comp_sizes, int32_t ncomps,
                               int32_t d, mppc_curves** out) {
  if (!vertices || !comp_sizes || !out)
    return invalid("vertices, comp_sizes and out must not be NULL");
  return guarded([&] {
    auto curves = std::make_unique<mppc_curves>();
    curves->mc.d = d;
    const double* p = vertices;
    for (int32_t c = 0; c < ncomps; ++c) {
      if (comp_sizes[c] < 1)
        mppc::fail(mppc::ErrorCode::InvalidArgument,
                   "component sizes must be >= 1");
      curves->mc.comps.emplace_back(p, p + comp_sizes[c] * d);
      p += comp_sizes[c] * d;
    }
    mppc::validate_curves(curves->mc, d);
    *out = curves.release();
  });
}

int32_t mppc_curves_component_count(const mppc_curves* curves) {
  return curves ? curves->mc.component_count() : 0;
}

int64_t mppc_curves_component_size(const mppc_curves* curves, int32_t c) {
  if (!curves || c < 0 || c >= curves->mc.component_count()) return 0;
  return curves->mc.comp_size(c);
}

int32_t mppc_curves_dim(const mppc_curves* curves) {
  return curves ? curves->mc.d : 0;
}

mppc_status mppc_curves_component(const mppc_curves* curves, int32_t c,
                                  double* out) {
  if (!curves || !out) return invalid("curves and out must not be NULL");
  if (c < 0 || c >= curves->mc.component_count())
    return invalid("component index out of range");
  std::memcpy(out, curves->mc.comps[c].data(),
              curves->mc.comps[c].size() * sizeof(double));
  return MPPC_OK;
}

void mppc_curves_free(mppc_curves* curves) { delete curves; }

mppc_params mppc_params_default(void) { return from_core(mppc::Params{}); }

mppc_status mppc_fit(const mppc_cloud* cloud, const mppc_params* params,
                     const mppc_curves* initial, mppc_result** out) {
  if (!cloud || !params || !out)
    return invalid("cloud, params and out must not be NULL");
  return guarded([&] {
    mppc::Params p = to_core(*params);
    auto res = std::make_unique<mppc_result>();
    auto [curves, report] =
        mppc::fit(cloud->c, p, initial ? &initial->mc : nullptr);
    res->curves.mc = std::move(curves);
    res->report = std::move(report);
    res->params = p;
    *out = res.release();
  });
}

const mppc_curves* mppc_result_curves(const mppc_result* result) {
  return result ? &result->curves : nullptr;
}

int32_t mppc_result_converged(const mppc_result* result) {
  return result && result->report.converged ? 1 : 0;
}

int32_t mppc_result_iterations(const mppc_result* result) {
  return result ? result->report.outer_iterations : 0;
}

mppc_status mppc_result_energy(const mppc_result* result, double out[4]) {
  if (!result || !out) return invalid("result and out must not be NULL");
  out[0] = result->report.final_energy.fidelity;
  out[1] = result->report.final_energy.length;
  out[2] = result->report.final_energy.components;
  out[3] = result->report.final_energy.total;
  return MPPC_OK;
}

int64_t mppc_result_history_size(const mppc_result* result) {
  return result ? static_cast<int64_t>(result->report.energy_history.size())
                : 0;
}

mppc_status mppc_result_history(const mppc_result* result, double* out) {
  if (!result || !out) return invalid("result and out must not be NULL");
  std::memcpy(out, result->report.energy_history.data(),
              result->report.energy_history.size() * sizeof(double));
  return MPPC_OK;
}

mppc_status mppc_result_save(const mppc_result* result, const char* path) {
  if (!result || !path) return invalid("result and path must not be NULL");
  return guarded([&] {
    mppc::save_result(path, result->curves.mc, result->report,
                      result->params);
  });
}

mppc_status mppc_result_load(const char* path, mppc_result** out) {
  if (!path || !out) return invalid("path and out must not be NULL");
  return guarded([&] {
    mppc::LoadedResult lr = mppc::load_result(path);
    auto res = std::make_unique<mppc_result>();
    res->curves.mc = std::move(lr.curves);
    res->report = std::move(lr.report);
    res->params = lr.params;
    *out = res.release();
  });
}

void mppc_result_free(mppc_result* result) { delete result; }

mppc_status mppc_render_svg(const mppc_cloud* cloud,
                            const mppc_curves* curves, const char* path,
                            const char* projection, int32_t width) {
  if (!cloud || !curves || !path)
    return invalid("cloud, curves and path must not be NULL");
  return guarded([&] {
    mppc::SvgOptions opt;
    if (projection && std::strcmp(projection, "pca2") == 0)
      opt.projection = mppc::SvgOptions::Projection::Pca2;
    else if (projection && std::strcmp(projection, "first2") != 0 &&
             *projection != '\0')
      mppc::fail(mppc::ErrorCode::InvalidArgument,
                 "projection must be 'first2' or 'pca2'");
    if (width > 0) opt.width = width;
    mppc::render_svg(path, cloud->c, curves->mc, opt);
  });
}

mppc_status mppc_oracle_smoothing_length(double lambda1, double alpha,
                                         double* out) {
  if (!out) return invalid("out must not be NULL");
  return guarded([&] { *out = mppc::smoothing_length(lambda1, alpha); });
}

mppc_status mppc_oracle_projection_distance(double curvature, double lambda1,
                                            double alpha, double* out) {
  if (!out) return invalid("out must not be NULL");
  return guarded(
      [&] { *out = mppc::projection_distance(curvature, lambda1, alpha); });
}

mppc_status mppc_oracle_critical_lambda1(double alpha, double H,
                                         double* out) {
  if (!out) return invalid("out must not be NULL");
  return guarded([&] { *out = mppc::critical_lambda1(alpha, H); });
}

mppc_status mppc_oracle_critical_density(double lambda1, double lambda2,
                                         double p, double* out) {
  if (!out) return invalid("out must not be NULL");
  return guarded([&] { *out = mppc::critical_density(lambda1, lambda2, p); });
}

mppc_status mppc_oracle_typical_gap(double lambda1, double lambda2,
                                    double alpha, double p, double* out) {
  if (!out) return invalid("out must not be NULL");
  return guarded(
      [&] { *out = mppc::typical_gap(lambda1, lambda2, alpha, p); });
}

mppc_status mppc_oracle_select_params(double alpha_star, double hstar,
                                      double* lambda1, double* lambda2) {
  if (!lambda1 || !lambda2)
    return invalid("lambda1 and lambda2 must not be NULL");
  return guarded([&] {
    auto [l1, l2] = mppc::select_params(alpha_star, hstar);
    *lambda1 = l1;
    *lambda2 = l2;
  });
}

mppc_status mppc_oracle_lambda1_from_lambda2(double alpha_star,
                                             double lambda2,
                                             double* lambda1) {
  if (!lambda1) return invalid("lambda1 must not be NULL");
  return guarded(
      [&] { *lambda1 = mppc::lambda1_from_lambda2(alpha_star, lambda2); });
}

mppc_status mppc_oracle_segment_minimizer(double L, double alpha,
                                          double lambda1, double lambda2,
                                          double p, int64_t* components,
                                          double* piece_length, double* gap,
                                          double* energy) {
  return guarded([&] {
    mppc::SegmentMinimizer m =
        mppc::segment_minimizer(L, alpha, lambda1, lambda2, p);
    if (components) *components = m.components;
    if (piece_length) *piece_length = m.piece_length;
    if (gap) *gap = m.gap;
    if (energy) *energy = m.energy;
  });
}

}  // extern "C"
