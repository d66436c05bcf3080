/*
 * Copyright 2026 The wgauss Authors.
 * Licensed under the Apache License, Version 2.0 (the "License"); you may not
 * use this file except in compliance with the License. You may obtain a copy
 * of the License at http://www.apache.org/licenses/LICENSE-2.0
 */
/* C interface of the wgauss shared library.
 *
 * Every function returns a wg_status. On failure the thread-local message from
 * wg_last_error() describes the problem. Objects are opaque handles released
 * with the matching *_free function; strings returned through char** are
 * released with wg_string_free. Handles are immutable and may be shared across
 * threads. */
#ifndef WGAUSS_H
#define WGAUSS_H

#include <stdint.h>

#if defined(WGAUSS_BUILDING_LIBRARY)
#define WGAUSS_API __attribute__((visibility("default")))
#else
#define WGAUSS_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum wg_status {
  WG_OK = 0,
  WG_ERR_DOMAIN = 1,
  WG_ERR_SINGULARITY = 2,
  WG_ERR_INADMISSIBLE_WEIGHT = 3,
  WG_ERR_NOT_HOMOGENEOUS = 4,
  WG_ERR_AMBIGUOUS_NORMAL = 5,
  WG_ERR_NO_BOUNDARY = 6,
  WG_ERR_RESOURCE = 7,
  WG_ERR_UNSUPPORTED = 8,
  WG_ERR_INTEGRATION_FAILURE = 9,
  WG_ERR_EVALUATION = 10,
  WG_ERR_DECAY_CONTRACT = 11,
  WG_ERR_CONTRACT = 12,
  WG_ERR_DEGENERATE_INPUT = 13,
  WG_ERR_PARAMETER = 14,
  WG_ERR_MEAN_ZERO_VIOLATION = 15,
  WG_ERR_DEGREE_TOO_HIGH = 16,
  WG_ERR_CONFIG = 17,
  WG_ERR_IO = 18,
  WG_ERR_NULL_ARGUMENT = 100,
  WG_ERR_INTERNAL = 101
} wg_status;

typedef struct wg_weight wg_weight;
typedef struct wg_field wg_field;
typedef struct wg_measure wg_measure;

typedef struct wg_check_result {
  double lhs, rhs, constant, deficit, tolerance;
  int pass;
  int informational;
} wg_check_result;

/* Poincare levels for wg_check_poincare */
enum { WG_POINCARE_BASIC = 0, WG_POINCARE_GRADIENT_STABILITY = 1, WG_POINCARE_L2_STABILITY = 2 };

/* Callbacks for custom weights. x has dim entries; grad writes dim entries,
 * hess writes dim*dim entries in row-major order. */
typedef double (*wg_log_weight_fn)(const double* x, int dim, void* user);
typedef void (*wg_grad_log_fn)(const double* x, int dim, double* grad, void* user);
typedef void (*wg_hess_log_fn)(const double* x, int dim, double* hess, void* user);

WGAUSS_API const char* wg_version(void);
WGAUSS_API const char* wg_last_error(void);
WGAUSS_API const char* wg_status_name(wg_status status);
WGAUSS_API void wg_string_free(char* s);

/* Weights. weight_json and cone_json follow the run-configuration schema;
 * cone_json may be NULL for the full space and dim may be 0 to infer it. */
WGAUSS_API wg_status wg_weight_from_json(const char* weight_json, const char* cone_json, int dim, wg_weight** out);
WGAUSS_API wg_status wg_weight_custom(int dim, const char* cone_json, wg_log_weight_fn log_weight,
                                      wg_grad_log_fn grad_log, wg_hess_log_fn hess_log, void* user,
                                      const double* degree, const double* sampler_scale, wg_weight** out);
WGAUSS_API void wg_weight_free(wg_weight* w);
WGAUSS_API wg_status wg_weight_dim(const wg_weight* w, int* dim);
WGAUSS_API wg_status wg_weight_value(const wg_weight* w, const double* x, double* value);
WGAUSS_API wg_status wg_weight_grad_log(const wg_weight* w, const double* x, double* grad);
WGAUSS_API wg_status wg_weight_curvature(const wg_weight* w, double* curvature);
/* homogeneous receives 0 or 1; degree is written only when homogeneous */
WGAUSS_API wg_status wg_weight_degree(const wg_weight* w, int* homogeneous, double* degree);

/* Fields from the library by JSON description, e.g. {"name":"affine","a":[0,3],"b":1}. */
WGAUSS_API wg_status wg_field_from_json(const char* field_json, const wg_weight* w, wg_field** out);
WGAUSS_API void wg_field_free(wg_field* f);
WGAUSS_API wg_status wg_field_value(const wg_field* f, const double* x, double* value);

/* Measures: the weighted Gaussian probability measure at scale lambda, or w dx.
 * order <= 0 selects the default rule order. */
WGAUSS_API wg_status wg_measure_gaussian(const wg_weight* w, double lambda, int order, uint64_t seed,
                                         wg_measure** out);
WGAUSS_API wg_status wg_measure_lebesgue(const wg_weight* w, int order, uint64_t seed, wg_measure** out);
WGAUSS_API void wg_measure_free(wg_measure* m);
WGAUSS_API wg_status wg_integrate(const wg_measure* m, const wg_field* f, double* value, double* std_error);

/* Inequality checks against a Gaussian measure. */
WGAUSS_API wg_status wg_check_poincare(const wg_measure* mu, const wg_field* f, double q, int level,
                                       wg_check_result* out);
WGAUSS_API wg_status wg_check_beckner(const wg_measure* mu, const wg_field* f, double p, double q,
                                      wg_check_result* out);
WGAUSS_API wg_status wg_check_lsi(const wg_measure* mu, const wg_field* f, double q, wg_check_result* out);
WGAUSS_API wg_status wg_spectral_gap(const wg_measure* mu, int degree, double* gap, double* convergence_delta);
/* nu must come from wg_measure_lebesgue */
WGAUSS_API wg_status wg_hup_deficit(const wg_measure* nu, const wg_field* f, double* delta, double* lambda_star);
WGAUSS_API wg_status wg_hup_stability(const wg_weight* w, const wg_field* f, double* delta, double* distance_sq,
                                      double* improved_distance_sq, int* pass);

/* Runs a JSON configuration and returns the rendered report.
 * format: "json" or "csv"; view: "verify", "sharpness", "spectrum" or "report".
 * seed < 0 and tolerance <= 0 leave the configuration values in place.
 * exit_code receives 0 (all checks pass), 1 (some check failed) or 2 (invalid
 * configuration); the return status is WG_ERR_CONFIG in the last case. */
WGAUSS_API wg_status wg_run(const char* config_json, const char* format, const char* view, int64_t seed,
                            double tolerance, int timings, char** report, int* exit_code);

#ifdef __cplusplus
}
#endif

#endif /* WGAUSS_H */
