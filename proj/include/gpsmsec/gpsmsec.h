/* SPDX-License-Identifier: Apache-2.0
 *
 * gpsmsec - secrecy capacity simulation for pre-coded spatial modulation
 * Copyright (C) 2026 The gpsmsec authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 * http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 * ------------------------------------------------------------------------ */

#ifndef GPSMSEC_H
#define GPSMSEC_H

/* C interface to the gpsmsec experiment harness.
 *
 * All objects are opaque and owned by the caller once returned; release them with
 * the matching *_destroy function. Every call that can fail returns a status and
 * leaves a message retrievable with gpsmsec_last_error() on the calling thread.
 * Strings returned through char** are freed with gpsmsec_string_free(). */

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#if defined(GPSMSEC_BUILDING)
#define GPSMSEC_API __declspec(dllexport)
#else
#define GPSMSEC_API __declspec(dllimport)
#endif
#else
#define GPSMSEC_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum gpsmsec_status
{
    GPSMSEC_OK = 0,
    GPSMSEC_ERR_INVALID_ARGUMENT = 1, /* null handle, index out of range */
    GPSMSEC_ERR_CONFIG = 2,           /* unparsable or semantically invalid config */
    GPSMSEC_ERR_UNSUPPORTED = 3,      /* mode/receiver combination not available */
    GPSMSEC_ERR_NUMERICAL = 4,        /* rank-deficient or ill-conditioned channel */
    GPSMSEC_ERR_IO = 5,
    GPSMSEC_ERR_INTERNAL = 6
} gpsmsec_status;

typedef struct gpsmsec_config gpsmsec_config;
typedef struct gpsmsec_result gpsmsec_result;
typedef struct gpsmsec_report gpsmsec_report;

typedef struct gpsmsec_row
{
    double snr_db;
    double c_bob;
    double c_eve;
    double c_sec;
    double se_bob;
    double se_eve;
} gpsmsec_row;

typedef struct gpsmsec_check
{
    const char *name;     /* valid while the report lives */
    double tolerance;
    double deviation;
    int passed;
    const char *instance; /* JSON replay record, valid while the report lives */
} gpsmsec_check;

GPSMSEC_API const char *gpsmsec_version(void);

/* Message for the last failed call on this thread, "" if none. */
GPSMSEC_API const char *gpsmsec_last_error(void);

GPSMSEC_API void gpsmsec_string_free(char *s);

/* ---- configuration ---- */

GPSMSEC_API gpsmsec_status gpsmsec_config_create(gpsmsec_config **out);
GPSMSEC_API gpsmsec_status gpsmsec_config_from_json(const char *json, gpsmsec_config **out);
GPSMSEC_API gpsmsec_status gpsmsec_config_load(const char *path, gpsmsec_config **out);
GPSMSEC_API void gpsmsec_config_destroy(gpsmsec_config *cfg);

/* Sets one field by name. `value` is JSON text ("8", "[0.3,0.4]", "\"gas\"");
 * a bare word such as gas is accepted as a string. */
GPSMSEC_API gpsmsec_status gpsmsec_config_set(gpsmsec_config *cfg, const char *field, const char *value);
/* One field as JSON text (strings keep their quotes). */
GPSMSEC_API gpsmsec_status gpsmsec_config_get(const gpsmsec_config *cfg, const char *field, char **out);
GPSMSEC_API gpsmsec_status gpsmsec_config_set_snr_range(gpsmsec_config *cfg, double start, double stop, double step);
GPSMSEC_API gpsmsec_status gpsmsec_config_validate(const gpsmsec_config *cfg);
GPSMSEC_API gpsmsec_status gpsmsec_config_to_json(const gpsmsec_config *cfg, char **out);

/* ---- experiments ---- */

GPSMSEC_API gpsmsec_status gpsmsec_run_capacity(const gpsmsec_config *cfg, gpsmsec_result **out);
/* The list arguments may be NULL to use the config's sigma_list / rho_list / n_eve_list. */
GPSMSEC_API gpsmsec_status gpsmsec_run_sweep_csit(const gpsmsec_config *cfg, const double *sigma, size_t n,
                                                  gpsmsec_result **out);
GPSMSEC_API gpsmsec_status gpsmsec_run_sweep_corr(const gpsmsec_config *cfg, const double *rho, size_t n,
                                                  gpsmsec_result **out);
GPSMSEC_API gpsmsec_status gpsmsec_run_sweep_eve(const gpsmsec_config *cfg, const size_t *n_eve, size_t n,
                                                 gpsmsec_result **out);
/* Outage at the config's outage_snr_db. */
GPSMSEC_API gpsmsec_status gpsmsec_run_outage(const gpsmsec_config *cfg, gpsmsec_result **out);

/* Scatter samples as CSV text (case,node,antenna,re,im); n_samples 0 uses the config's n_scatter. */
GPSMSEC_API gpsmsec_status gpsmsec_run_scatter(const gpsmsec_config *cfg, size_t n_samples, char **csv_out);

/* Brute-force vs Monte Carlo suite. `log_theta_bias` is a test hook added to every
 * ln Theta (0 in normal use); `include_direct_eve` adds the direct-Eve GAS zero check.
 * `cfg` may be NULL; otherwise its seed and workers are used. */
GPSMSEC_API gpsmsec_status gpsmsec_run_oracle_check(const gpsmsec_config *cfg, double log_theta_bias,
                                                    int include_direct_eve, gpsmsec_report **out);

/* ---- results ---- */

GPSMSEC_API size_t gpsmsec_result_record_count(const gpsmsec_result *res);
GPSMSEC_API size_t gpsmsec_result_row_count(const gpsmsec_result *res, size_t record);
GPSMSEC_API gpsmsec_status gpsmsec_result_row(const gpsmsec_result *res, size_t record, size_t row,
                                              gpsmsec_row *out);
GPSMSEC_API int gpsmsec_result_eve_blind(const gpsmsec_result *res, size_t record);
/* File-name suffix of a sweep entry ("sigma0.3", "ne16"); "" for a plain run. */
GPSMSEC_API const char *gpsmsec_result_tag(const gpsmsec_result *res, size_t record);
GPSMSEC_API size_t gpsmsec_result_outage_count(const gpsmsec_result *res, size_t record);
GPSMSEC_API gpsmsec_status gpsmsec_result_outage_point(const gpsmsec_result *res, size_t record, size_t index,
                                                       double *threshold, double *probability);
GPSMSEC_API gpsmsec_status gpsmsec_result_csv(const gpsmsec_result *res, size_t record, char **out);
GPSMSEC_API gpsmsec_status gpsmsec_result_json(const gpsmsec_result *res, char **out);
/* Writes <name>.csv (or <name>_<tag>.csv), <name>.json and, with outage data, <name>_outage.csv. */
GPSMSEC_API gpsmsec_status gpsmsec_result_write(const gpsmsec_result *res, const char *out_dir, const char *name);
GPSMSEC_API void gpsmsec_result_destroy(gpsmsec_result *res);

GPSMSEC_API size_t gpsmsec_report_check_count(const gpsmsec_report *rep);
GPSMSEC_API gpsmsec_status gpsmsec_report_check(const gpsmsec_report *rep, size_t index, gpsmsec_check *out);
GPSMSEC_API int gpsmsec_report_passed(const gpsmsec_report *rep);
GPSMSEC_API gpsmsec_status gpsmsec_report_text(const gpsmsec_report *rep, char **out);
GPSMSEC_API gpsmsec_status gpsmsec_report_json(const gpsmsec_report *rep, char **out);
GPSMSEC_API void gpsmsec_report_destroy(gpsmsec_report *rep);

#ifdef __cplusplus
}
#endif

#endif /* GPSMSEC_H */
