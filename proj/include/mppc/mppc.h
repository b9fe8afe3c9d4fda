/* mppc - multiple penalized principal curves
 *
 * C interface to the mppc shared library. The library fits one-dimensional
 * structures (collections of polylines and isolated points) to weighted
 * point clouds by minimizing a fidelity + length + component-count energy,
 * and exposes closed-form predictions of the length scales of minimizers.
 *
 * All objects are opaque handles created and destroyed by the library.
 * Functions return MPPC_OK on success; on failure they return an error
 * code and leave a message retrievable with mppc_last_error_message()
 * (thread-local).
 */

#ifndef MPPC_H
#define MPPC_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef struct mppc_cloud mppc_cloud;
typedef struct mppc_curves mppc_curves;
typedef struct mppc_result mppc_result;

typedef enum mppc_status {
  MPPC_OK = 0,
  MPPC_ERR_INVALID_ARGUMENT = 1,
  MPPC_ERR_NONFINITE = 2,
  MPPC_ERR_NONPOSITIVE_PARAM = 3,
  MPPC_ERR_EMPTY_CLOUD = 4,
  MPPC_ERR_UNSUPPORTED_EXPONENT = 5,
  MPPC_ERR_INVALID_EDGE = 6,
  MPPC_ERR_INVALID_RANGE = 7,
  MPPC_ERR_SINGULAR_SYSTEM = 8,
  MPPC_ERR_NONPOSITIVE = 9,
  MPPC_ERR_PARSE = 10,
  MPPC_ERR_ARITY_MISMATCH = 11,
  MPPC_ERR_UNKNOWN_KIND = 12,
  MPPC_ERR_SCHEMA = 13,
  MPPC_ERR_IO = 14,
  MPPC_ERR_INTERNAL = 15
} mppc_status;

typedef struct mppc_params {
  double lambda1;            /* length weight, > 0 */
  double lambda2;            /* component weight (length units), > 0 */
  double p;                  /* fidelity exponent; fitting requires 2 */
  double rho;                /* ADMM penalty; 0 = automatic */
  int32_t top_period;        /* topology schedule period, default 10 */
  int32_t reparam_period;    /* re-parametrization period, default 5 */
  int32_t inner_admm_iters;  /* starting ADMM cycles per outer step */
  int32_t max_inner_admm_iters;
  int32_t max_outer_iters;
  double energy_rtol;        /* window-relative termination tolerance */
  int32_t fix_endpoints;     /* pin first/last vertex of each component */
  int32_t turning_angle_check;
  double turning_angle_threshold;
  int32_t ppc_only;          /* disable all topology passes */
  uint64_t seed;
  int32_t threads;           /* 0 = all cores */
} mppc_params;

/* ---- diagnostics ---- */

const char* mppc_version(void);
/* message for the most recent failed call on this thread (never NULL) */
const char* mppc_last_error_message(void);

/* ---- point clouds ---- */

/* coords: n*d row-major; weights may be NULL for uniform 1/n */
mppc_status mppc_cloud_create(const double* coords, const double* weights,
                              int64_t n, int32_t d, mppc_cloud** out);
/* has_header: 0, 1 or -1 to sniff; weight_column may be NULL;
 * normalize != 0 rescales weights to total mass 1 */
mppc_status mppc_cloud_load_csv(const char* path, int32_t has_header,
                                const char* weight_column, int32_t normalize,
                                mppc_cloud** out);
mppc_status mppc_cloud_save_csv(const mppc_cloud* cloud, const char* path);
/* options_json: generator options as a JSON object (may be NULL), e.g.
 * {"n": 2000, "noise": 1.5}; see the tool documentation for the kinds */
mppc_status mppc_cloud_generate(const char* kind, const char* options_json,
                                uint64_t seed, mppc_cloud** out);
mppc_status mppc_cloud_normalize(mppc_cloud* cloud);
int64_t mppc_cloud_size(const mppc_cloud* cloud);
int32_t mppc_cloud_dim(const mppc_cloud* cloud);
mppc_status mppc_cloud_get(const mppc_cloud* cloud, double* coords,
                           double* weights);
void mppc_cloud_free(mppc_cloud* cloud);

/* ---- curve configurations ---- */

/* vertices: concatenated components, row-major; comp_sizes: vertex count
 * per component */
mppc_status mppc_curves_create(const double* vertices,
                               const int64_t* comp_sizes, int32_t ncomps,
                               int32_t d, mppc_curves** out);
int32_t mppc_curves_component_count(const mppc_curves* curves);
int64_t mppc_curves_component_size(const mppc_curves* curves, int32_t c);
int32_t mppc_curves_dim(const mppc_curves* curves);
/* copies component c into out (comp_size * d doubles) */
mppc_status mppc_curves_component(const mppc_curves* curves, int32_t c,
                                  double* out);
void mppc_curves_free(mppc_curves* curves);

/* ---- fitting ---- */

mppc_params mppc_params_default(void);
/* initial may be NULL (singleton initialization). Non-convergence at
 * max_outer_iters is not an error; query mppc_result_converged. */
mppc_status mppc_fit(const mppc_cloud* cloud, const mppc_params* params,
                     const mppc_curves* initial, mppc_result** out);

const mppc_curves* mppc_result_curves(const mppc_result* result);
int32_t mppc_result_converged(const mppc_result* result);
int32_t mppc_result_iterations(const mppc_result* result);
/* fidelity, length, components, total */
mppc_status mppc_result_energy(const mppc_result* result, double out[4]);
int64_t mppc_result_history_size(const mppc_result* result);
mppc_status mppc_result_history(const mppc_result* result, double* out);
mppc_status mppc_result_save(const mppc_result* result, const char* path);
mppc_status mppc_result_load(const char* path, mppc_result** out);
void mppc_result_free(mppc_result* result);

/* ---- plotting ---- */

/* projection: "first2" or "pca2" (required meaningfully only for d > 2) */
mppc_status mppc_render_svg(const mppc_cloud* cloud,
                            const mppc_curves* curves, const char* path,
                            const char* projection, int32_t width);

/* ---- closed-form oracle ---- */

mppc_status mppc_oracle_smoothing_length(double lambda1, double alpha,
                                         double* out);
mppc_status mppc_oracle_projection_distance(double curvature, double lambda1,
                                            double alpha, double* out);
mppc_status mppc_oracle_critical_lambda1(double alpha, double H, double* out);
mppc_status mppc_oracle_critical_density(double lambda1, double lambda2,
                                         double p, double* out);
mppc_status mppc_oracle_typical_gap(double lambda1, double lambda2,
                                    double alpha, double p, double* out);
mppc_status mppc_oracle_select_params(double alpha_star, double hstar,
                                      double* lambda1, double* lambda2);
mppc_status mppc_oracle_lambda1_from_lambda2(double alpha_star,
                                             double lambda2, double* lambda1);
mppc_status mppc_oracle_segment_minimizer(double L, double alpha,
                                          double lambda1, double lambda2,
                                          double p, int64_t* components,
                                          double* piece_length, double* gap,
                                          double* energy);

#ifdef __cplusplus
}
#endif

#endif /* MPPC_H */
