/* Copyright 2026 The gibbs authors
 * SPDX-License-Identifier: Apache-2.0
 *
 * C interface to the gibbs library: Fourier coefficients of test functions,
 * the frame bound B_{n,m}, polynomial and Fourier-extension reconstruction,
 * condition numbers and the figure experiments.
 *
 * Every fallible call returns a gibbs_status. On failure the message is
 * available from gibbs_last_error() on the calling thread until the next
 * failing call. Handles are opaque and owned by the caller.
 */
#ifndef GIBBS_GIBBS_H
#define GIBBS_GIBBS_H

#include <stdint.h>

#if defined(_WIN32)
#define GIBBS_API __declspec(dllexport)
#else
#define GIBBS_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum {
  GIBBS_OK = 0,
  GIBBS_ERR_NUMERIC = 1, /* precision regime or singular system */
  GIBBS_ERR_INPUT = 2,   /* invalid argument or malformed input */
  GIBBS_ERR_IO = 3,
  GIBBS_ERR_INTERNAL = 4
} gibbs_status;

typedef enum { GIBBS_PRECISION_DOUBLE = 0, GIBBS_PRECISION_DD = 1 } gibbs_precision;

typedef enum { GIBBS_METHOD_IPRM = 0, GIBBS_METHOD_PLS = 1, GIBBS_METHOD_FE = 2 } gibbs_method;

typedef enum {
  GIBBS_ESTIMATOR_SIGMA_MIN_EXACT = 0,
  GIBBS_ESTIMATOR_RANDOMIZED = 1,
  GIBBS_ESTIMATOR_POWER_ITERATION = 2
} gibbs_estimator;

typedef void (*gibbs_log_fn)(const char* message, void* user);

GIBBS_API const char* gibbs_version(void);
GIBBS_API const char* gibbs_last_error(void);
GIBBS_API void gibbs_string_free(char* s);

GIBBS_API gibbs_status gibbs_parse_precision(const char* text, gibbs_precision* out);
GIBBS_API gibbs_status gibbs_parse_method(const char* text, gibbs_method* out);

/* Frame bound */

typedef struct {
  int n;
  int m;
  double b_value; /* +inf when 2m < n */
  double b_star;
  double sigma_min;
  gibbs_precision precision;
} gibbs_bnm_report;

GIBBS_API gibbs_status gibbs_bnm(int n, int m, gibbs_precision precision, gibbs_bnm_report* out);
GIBBS_API gibbs_status gibbs_required_precision(int n, int m, gibbs_precision* out);
GIBBS_API gibbs_status gibbs_b_star(int n, int m, double* out);
GIBBS_API gibbs_status gibbs_witness_ratio(int q, int m, double* out);
GIBBS_API gibbs_status gibbs_witness_lower_bound(int q, int m, double* out);
GIBBS_API gibbs_status gibbs_sup_zeta_bound(int n, int m, double* out);

/* Condition numbers */

typedef struct {
  gibbs_method method;
  int n;
  int m;
  double T; /* NaN for PLS */
  double kappa;
  gibbs_estimator estimator;
  int trials;
  uint64_t seed;
  int iterations;
  int quadrature_nodes;
} gibbs_condition_report;

GIBBS_API gibbs_status gibbs_kappa_pls(int n, int m, gibbs_condition_report* out);
GIBBS_API gibbs_status gibbs_kappa_pls_randomized(int n, int m, int trials, uint64_t seed,
                                                  gibbs_condition_report* out);
GIBBS_API gibbs_status gibbs_kappa_pls_power(int n, int m, int max_iters, gibbs_condition_report* out);
GIBBS_API gibbs_status gibbs_kappa_fe_randomized(int n, int m, double T, int trials, uint64_t seed,
                                                 gibbs_condition_report* out);
GIBBS_API gibbs_status gibbs_kappa_fe_power(int n, int m, double T, int max_iters,
                                            gibbs_condition_report* out);

typedef struct {
  int n;
  double kappa;
  int evaluations;
  int non_monotone;
} gibbs_selection;

/* Largest n with kappa <= kappa0, ascending from start_n. T ignored for PLS. */
GIBBS_API gibbs_status gibbs_select_max_n(gibbs_method method, int m, double T, double kappa0, int trials,
                                          uint64_t seed, int start_n, gibbs_selection* out);

/* Fourier coefficients c_j, |j| <= m */

typedef struct gibbs_coeffs gibbs_coeffs;

/* spec: "exp:100", "realpole:9", "runge:5", "cos:7sqrt2". */
GIBBS_API gibbs_status gibbs_coeffs_from_function(const char* spec, int m, gibbs_coeffs** out);
/* re, im: 2m+1 values for j = -m..m. */
GIBBS_API gibbs_status gibbs_coeffs_from_values(int m, const double* re, const double* im, gibbs_coeffs** out);
GIBBS_API gibbs_status gibbs_coeffs_read_csv(const char* path, gibbs_coeffs** out);
GIBBS_API gibbs_status gibbs_coeffs_write_csv(const gibbs_coeffs* c, const char* path);
GIBBS_API int gibbs_coeffs_m(const gibbs_coeffs* c);
GIBBS_API gibbs_status gibbs_coeffs_get(const gibbs_coeffs* c, int j, double* re, double* im);
GIBBS_API void gibbs_coeffs_free(gibbs_coeffs* c);

/* Reconstructions */

typedef struct gibbs_recon gibbs_recon;

/* n is ignored for IPRM, T is used by FE only. */
GIBBS_API gibbs_status gibbs_reconstruct(const gibbs_coeffs* c, gibbs_method method, int n, double T,
                                         gibbs_recon** out);
GIBBS_API gibbs_status gibbs_recon_eval(const gibbs_recon* r, double x, double* re, double* im);
/* Legendre coefficients (k = 0..degree) or extension coefficients (k = -n..n). */
GIBBS_API int gibbs_recon_size(const gibbs_recon* r);
GIBBS_API gibbs_status gibbs_recon_coefficient(const gibbs_recon* r, int index, double* re, double* im);
GIBBS_API gibbs_status gibbs_recon_info(const gibbs_recon* r, int* rank_used, double* residual_norm);
GIBBS_API gibbs_status gibbs_recon_l2_error(const gibbs_recon* r, const char* function_spec, double* out);
GIBBS_API void gibbs_recon_free(gibbs_recon* r);

/* Experiments */

typedef struct gibbs_config gibbs_config;

/* figure: "fig1", "fig2" or "fig3"; built-in defaults. */
GIBBS_API gibbs_status gibbs_config_default(const char* figure, gibbs_config** out);
GIBBS_API gibbs_status gibbs_config_load(const char* path, gibbs_config** out);
GIBBS_API gibbs_status gibbs_config_from_json(const char* text, gibbs_config** out);
/* *out is released with gibbs_string_free. */
GIBBS_API gibbs_status gibbs_config_to_json(const gibbs_config* cfg, char** out);
/* Sets one field from its JSON text, e.g. ("T", "[1.5, 2]"), ("out_dir", "\"out\""). */
GIBBS_API gibbs_status gibbs_config_set(gibbs_config* cfg, const char* key, const char* json_value);
GIBBS_API void gibbs_config_free(gibbs_config* cfg);

typedef struct {
  int rows;
  int files;
  int violations;   /* fig1: rows with B < B* */
  int non_monotone; /* fig2, fig3: observed kappa(n+1) < kappa(n) */
} gibbs_run_summary;

/* Warnings and written files are reported through log when non-null. */
GIBBS_API gibbs_status gibbs_run(const gibbs_config* cfg, gibbs_log_fn log, void* user, gibbs_run_summary* out);

typedef struct {
  const char* coeff_file; /* either a CoeffVec CSV */
  const char* function;   /* or a function spec with m */
  int m;                  /* -1: from file */
  gibbs_method method;
  int n;
  double T;
  const char* out_dir;
  uint64_t seed;
} gibbs_recover_request;

typedef struct {
  double l2_error; /* NaN when the function is unknown */
  int rank_used;
  double residual_norm;
} gibbs_recover_result;

GIBBS_API gibbs_status gibbs_recover(const gibbs_recover_request* req, gibbs_log_fn log, void* user,
                                     gibbs_recover_result* out);

/* y and group are comma-separated column lists; group may be NULL or "". */
GIBBS_API gibbs_status gibbs_emit_svg(const char* csv_path, const char* x, const char* y, const char* group,
                                      int log_y, const char* title, const char* out_path, gibbs_log_fn log,
                                      void* user);

#ifdef __cplusplus
}
#endif

#endif /* GIBBS_GIBBS_H */
