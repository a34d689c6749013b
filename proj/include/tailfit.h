/* C interface of the tailfit shared library.
 *
 * Every function returns a tf_status; results travel through out-pointers.
 * Failures leave outputs untouched and store a message retrievable with
 * tf_last_error() on the same thread. Opaque handles are released with the
 * matching *_free function; freeing NULL is a no-op.
 */
#ifndef TAILFIT_H
#define TAILFIT_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define TAILFIT_API __declspec(dllexport)
#else
#define TAILFIT_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum tf_status {
  TF_OK = 0,
  TF_ERR_DOMAIN = 1,          /* argument outside its admissible range */
  TF_ERR_CONFIG = 2,          /* inconsistent configuration */
  TF_ERR_NUMERIC = 3,         /* data-dependent degeneracy */
  TF_ERR_ILL_CONDITIONED = 4, /* singular or nearly singular system */
  TF_ERR_NULL = 5             /* required pointer argument was NULL */
} tf_status;

/* Message for the most recent failing call on this thread. */
TAILFIT_API const char* tf_last_error(void);

/* ---- tail models ------------------------------------------------------- */

typedef struct tf_model tf_model;

/* Q(1-s) = s^-alpha */
TAILFIT_API tf_status tf_model_pareto(double alpha, tf_model** out);
/* Q(1-s) = d1 s^-alpha (1 + d2 s^beta) */
TAILFIT_API tf_status tf_model_hall(double alpha, double d1, double d2,
                                    double beta, tf_model** out);
/* Q(1-s) = exp(-alpha log s + theta_0 + 2 sum_k theta_k cos(2 pi k s)) */
TAILFIT_API tf_status tf_model_trig(double alpha, const double* theta,
                                    size_t theta_len, tf_model** out);
TAILFIT_API void tf_model_free(tf_model* model);

TAILFIT_API tf_status tf_model_upper_quantile(const tf_model* model, double s,
                                              double* out);
TAILFIT_API tf_status tf_model_density_quantile(const tf_model* model, double s,
                                                double* out);

/* ---- samples ----------------------------------------------------------- */

typedef struct tf_sample tf_sample;

/* Inverse-transform draw of n values, sorted ascending; deterministic in
 * the seed. */
TAILFIT_API tf_status tf_sample_draw(const tf_model* model, size_t n,
                                     uint64_t seed, tf_sample** out);
/* Copies and sorts caller data. */
TAILFIT_API tf_status tf_sample_from_data(const double* values, size_t n,
                                          tf_sample** out);
TAILFIT_API void tf_sample_free(tf_sample* sample);
TAILFIT_API size_t tf_sample_size(const tf_sample* sample);
/* Ascending values; valid while the handle lives. */
TAILFIT_API const double* tf_sample_values(const tf_sample* sample);

/* ---- estimators --------------------------------------------------------- */

TAILFIT_API tf_status tf_hill(const tf_sample* sample, size_t k, double* out);
TAILFIT_API tf_status tf_pickands(const tf_sample* sample, size_t k,
                                  double* out);
TAILFIT_API tf_status tf_dedh(const tf_sample* sample, size_t k, double* out);

typedef enum tf_weight_kind {
  TF_WEIGHT_UNIFORM = 0,
  TF_WEIGHT_POWER = 1 /* R(s) = c s^k */
} tf_weight_kind;

typedef struct tf_regression_config {
  double a;
  double b;
  int ptilde;
  tf_weight_kind weight;
  double weight_c; /* ignored for uniform */
  double weight_k;
} tf_regression_config;

/* Weighted least squares fit of the tail index. theta_out (length ptilde+1)
 * and condition_out may be NULL. */
TAILFIT_API tf_status tf_wls_fit(const tf_sample* sample,
                                 const tf_regression_config* config,
                                 double* alpha_out, double* theta_out,
                                 double* condition_out);

/* ---- asymptotics -------------------------------------------------------- */

/* Row-major (ptilde+2)^2 limit matrix of the regression. panels <= 0 selects
 * the default quadrature resolution. */
TAILFIT_API tf_status tf_limit_matrix(const tf_regression_config* config,
                                      int panels, double* out);
/* First row of the inverse limit matrix, length ptilde+2. */
TAILFIT_API tf_status tf_gr_coefficients(const tf_regression_config* config,
                                         int panels, double* out);
/* Asymptotic variance of sqrt(n) (alpha_hat - alpha) under the model. */
TAILFIT_API tf_status tf_asymptotic_variance(const tf_model* model,
                                             const tf_regression_config* config,
                                             int panels, double* out);

/* ---- Monte Carlo simulation --------------------------------------------- */

typedef struct tf_sim_plan tf_sim_plan;
typedef struct tf_report tf_report;

/* A plan starts as strict Pareto; tf_plan_set_hall switches the family. */
TAILFIT_API tf_status tf_plan_new(const double* alphas, size_t n_alphas,
                                  size_t n, size_t reps, uint64_t seed,
                                  tf_sim_plan** out);
TAILFIT_API tf_status tf_plan_set_hall(tf_sim_plan* plan, double d1, double d2,
                                       double beta);
/* label is reported in the estimator column ("wls", "ols", ...). */
TAILFIT_API tf_status tf_plan_add_wls(tf_sim_plan* plan, const char* label,
                                      const tf_regression_config* config);
TAILFIT_API tf_status tf_plan_add_hill(tf_sim_plan* plan, size_t k);
TAILFIT_API tf_status tf_plan_add_pickands(tf_sim_plan* plan, size_t k);
TAILFIT_API tf_status tf_plan_add_dedh(tf_sim_plan* plan, size_t k);
TAILFIT_API void tf_plan_free(tf_sim_plan* plan);

/* Runs every replication. The worker pool honours TAILFIT_THREADS; the
 * report does not depend on the thread count. */
TAILFIT_API tf_status tf_plan_run(const tf_sim_plan* plan, tf_report** out);
TAILFIT_API void tf_report_free(tf_report* report);

typedef struct tf_report_row {
  const char* model; /* valid while the report lives */
  double alpha;
  const char* estimator;
  const char* params;
  size_t reps;
  size_t failed;
  double mean;
  double mse;
} tf_report_row;

TAILFIT_API size_t tf_report_rows(const tf_report* report);
TAILFIT_API tf_status tf_report_row_get(const tf_report* report, size_t index,
                                        tf_report_row* out);
/* Full report as CSV (plan echo comment, header, one row per cell).
 * Free with tf_string_free. */
TAILFIT_API tf_status tf_report_csv(const tf_report* report, char** out);
TAILFIT_API void tf_string_free(char* text);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* TAILFIT_H */
