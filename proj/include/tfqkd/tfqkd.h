/* Copyright 2026 The tfqkd Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

/* C interface of the tfqkd shared library: secret-key rates, bounds and
 * rate-vs-distance sweeps for coherent-state twin-field QKD over lossy
 * channels.
 *
 * Every fallible call returns a tfqkd_status; outputs are written through
 * pointers only on TFQKD_OK. tfqkd_last_error() describes the most recent
 * failure on the calling thread. Opaque handles are created and released by
 * the matching _new/_free pair and are not thread-safe to mutate
 * concurrently; distinct handles are independent.
 */

#ifndef TFQKD_TFQKD_H
#define TFQKD_TFQKD_H

#include <stddef.h>

#if defined(_WIN32)
#define TFQKD_API __declspec(dllexport)
#else
#define TFQKD_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum tfqkd_status {
  TFQKD_OK = 0,
  TFQKD_ERR_INVALID_ARGUMENT = 1, /* bad pointer or out-of-range parameter */
  TFQKD_ERR_DOMAIN = 2,           /* math-domain violation */
  TFQKD_ERR_CONSTRAINT = 3,       /* protocol constraint (interference matching) */
  TFQKD_ERR_CONFIG = 4,           /* unparseable or out-of-range configuration */
  TFQKD_ERR_IO = 5,               /* file could not be read or written */
  TFQKD_ERR_INTERNAL = 6
} tfqkd_status;

typedef enum tfqkd_format {
  TFQKD_FORMAT_CSV = 0,
  TFQKD_FORMAT_JSON = 1
} tfqkd_format;

/* Fiber and detector description of the two-arm link to the middle node. */
typedef struct tfqkd_channel_params {
  double beta_db_per_km;      /* fiber loss coefficient, > 0 */
  double dist_ac_km;          /* Alice - Charlie distance, >= 0 */
  double dist_bc_km;          /* Bob - Charlie distance, >= 0 */
  double detector_efficiency; /* in (0, 1] */
  double dark_count_prob;     /* per pulse, in [0, 1] */
} tfqkd_channel_params;

/* Gains and error rates of one operating point. The component fields are
 * outputs of tfqkd_protocol1_observables; the rate entry points consume only
 * q_z, e_z and e_x. */
typedef struct tfqkd_observables {
  double q_z, e_z, e_x;
  double q_z_correct, q_z_error, q_x_correct, q_x_error;
  int degenerate; /* gain underflow: error rates reported as zero */
} tfqkd_observables;

typedef struct tfqkd_rate_result {
  double rate;     /* bits per pulse, clamped at zero */
  double raw_rate; /* unclamped; negative means no key */
  int k_bsteps;
  tfqkd_observables observables_after;
} tfqkd_rate_result;

/* One row of a rate-vs-distance sweep. NaN marks protocols that were not
 * selected; plob is +infinity at zero total loss. */
typedef struct tfqkd_curve_point {
  double distance_km;
  double total_loss_db;
  double rate_p1_oneway; /* cat-state protocol, one-way */
  double rate_p1_k1;     /* after one B step */
  double rate_p1_k2;     /* after two B steps */
  double rate_p2;        /* three-intensity phase-randomized protocol */
  double plob;           /* repeaterless bound */
  double mu_opt_p1;      /* Alice's optimal signal intensity, cat protocol */
  double mu_opt_p2;
} tfqkd_curve_point;

/* Single-point report; NaN marks protocols that were not selected. */
typedef struct tfqkd_point_report {
  double distance_km, total_loss_db;
  double p1_mu_opt, p1_q_z, p1_e_z, p1_e_x;
  double p1_rate_oneway, p1_rate_k1, p1_rate_k2;
  double p2_mu_opt, p2_q_z, p2_e_z, p2_e_x_upper, p2_rate;
  double plob;
} tfqkd_point_report;

typedef struct tfqkd_config tfqkd_config; /* opaque run configuration */
typedef struct tfqkd_curve tfqkd_curve;   /* opaque sweep result */

TFQKD_API const char* tfqkd_version(void);

/* Message describing the last failure on this thread; empty string if the
 * last call succeeded. The pointer stays valid until the next library call
 * on the same thread. */
TFQKD_API const char* tfqkd_last_error(void);

/* ---- scalar numerics ---- */

TFQKD_API tfqkd_status tfqkd_binary_entropy(double x, double* out);

/* Conditional entropy H(e_p | e_b) of a Bell-diagonal error triple. */
TFQKD_API tfqkd_status tfqkd_conditional_entropy(double e_b, double e_p, double a,
                                                 double* out);

TFQKD_API tfqkd_status tfqkd_bessel_i0(double x, double* out);

TFQKD_API tfqkd_status tfqkd_binomial(int n, int k, double* out);

/* ---- channel model ---- */

TFQKD_API tfqkd_status tfqkd_link_efficiencies(const tfqkd_channel_params* ch,
                                               double* eta_a, double* eta_b);

/* Eavesdropper-free observables of the cat-state protocol. Requires
 * mu_a * eta_a = mu_b * eta_b within 1e-9 relative. */
TFQKD_API tfqkd_status tfqkd_protocol1_observables(const tfqkd_channel_params* ch,
                                                   double mu_a, double mu_b,
                                                   double e_dz,
                                                   tfqkd_observables* out);

/* Heralding gain for phase-randomized pulses of intensities nu_a, nu_b. */
TFQKD_API tfqkd_status tfqkd_decoy_gain(const tfqkd_channel_params* ch, double nu_a,
                                        double nu_b, double* out);

/* Exact yield Y_{n,m} for Fock inputs with n and m photons; n, m <= 64. */
TFQKD_API tfqkd_status tfqkd_yield_exact(const tfqkd_channel_params* ch, int n, int m,
                                         double* out);

/* ---- decoy-state bounds ---- */

/* Upper bound on Y_{n,m} from modeled three-intensity gains (0 < omega < nu). */
TFQKD_API tfqkd_status tfqkd_yield_upper(const tfqkd_channel_params* ch, double omega,
                                         double nu, int n, int m, double* out);

/* Cauchy-Schwarz upper bound on the X-basis error gain of the
 * phase-randomized protocol with signal intensities mu_a, mu_b. */
TFQKD_API tfqkd_status tfqkd_phase_error_gain_upper(const tfqkd_channel_params* ch,
                                                    double omega, double nu,
                                                    double mu_a, double mu_b,
                                                    int n_cut, double* out);

/* ---- key rates ---- */

TFQKD_API tfqkd_status tfqkd_one_way_rate(const tfqkd_observables* obs, double f,
                                          tfqkd_rate_result* out);

/* k B steps of two-way distillation followed by the one-way rate. */
TFQKD_API tfqkd_status tfqkd_two_way_rate(const tfqkd_observables* obs, double f,
                                          int k, tfqkd_rate_result* out);

/* Closed-form ideal symmetric-channel rate of the matched coherent-state
 * protocol (no dark counts, no misalignment, f = 1). */
TFQKD_API tfqkd_status tfqkd_lin_ideal_rate(double mu, double eta, double* out);

/* Repeaterless secret-key capacity -log2(1 - eta_total), eta_total in [0,1). */
TFQKD_API tfqkd_status tfqkd_plob_bound(double eta_total, double* out);

/* ---- configuration ---- */

/* A fresh configuration carries the reference defaults (0.16 dB/km, 85%
 * detector efficiency, 1e-7 dark counts, f = 1.16, decoy 0.02/0.1,
 * symmetric 0-600 km sweep at 3% misalignment, CSV output). */
TFQKD_API tfqkd_config* tfqkd_config_new(void);
TFQKD_API void tfqkd_config_free(tfqkd_config* cfg);

/* Merges a flat "key = value" config file into cfg. */
TFQKD_API tfqkd_status tfqkd_config_load_file(tfqkd_config* cfg, const char* path);

/* Sets one key, e.g. tfqkd_config_set(cfg, "params.e_dz", "0.1"). */
TFQKD_API tfqkd_status tfqkd_config_set(tfqkd_config* cfg, const char* key,
                                        const char* value);

/* Range-checks all fields; the error message names the offending key. */
TFQKD_API tfqkd_status tfqkd_config_validate(const tfqkd_config* cfg);

/* Output controls from the configuration (CLI convenience accessors). */
TFQKD_API tfqkd_status tfqkd_config_output_path(const tfqkd_config* cfg, char* buf,
                                                size_t buflen);
TFQKD_API tfqkd_status tfqkd_config_format(const tfqkd_config* cfg, tfqkd_format* out);

/* ---- sweeps ---- */

/* Runs the configured sweep; on success *out owns the rows until
 * tfqkd_curve_free. Identical configurations produce identical curves. */
TFQKD_API tfqkd_status tfqkd_sweep_run(const tfqkd_config* cfg, tfqkd_curve** out);
TFQKD_API void tfqkd_curve_free(tfqkd_curve* curve);

TFQKD_API size_t tfqkd_curve_size(const tfqkd_curve* curve);
TFQKD_API tfqkd_status tfqkd_curve_point_at(const tfqkd_curve* curve, size_t index,
                                            tfqkd_curve_point* out);

/* Error note recorded for a row, or the empty string. */
TFQKD_API const char* tfqkd_curve_row_error(const tfqkd_curve* curve, size_t index);

/* Serializes the curve; CSV uses a fixed header and 12 significant digits,
 * JSON round-trips exactly through tfqkd_curve_read_json. */
TFQKD_API tfqkd_status tfqkd_curve_write(const tfqkd_curve* curve, const char* path,
                                         tfqkd_format format);
TFQKD_API tfqkd_status tfqkd_curve_to_string(const tfqkd_curve* curve,
                                             tfqkd_format format, char* buf,
                                             size_t buflen, size_t* needed);
TFQKD_API tfqkd_status tfqkd_curve_read_json(const char* path, tfqkd_curve** out);

/* Single-point report; the configuration must resolve to exactly one
 * distance. */
TFQKD_API tfqkd_status tfqkd_rate_point(const tfqkd_config* cfg,
                                        tfqkd_point_report* out);

#ifdef __cplusplus
}
#endif

#endif /* TFQKD_TFQKD_H */
