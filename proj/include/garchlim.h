/*
 * garchlim - simulation and statistical comparison of randomly thinned GARCH
 * and its continuous-time limits (COGARCH / MCOGARCH).
 *
 * C interface to the shared library. All functions return a status code;
 * results are written through out-parameters. Handles are opaque and must be
 * released with the matching *_free function. garchlim_last_error() returns
 * a thread-local message describing the most recent failure.
 */
#ifndef GARCHLIM_H
#define GARCHLIM_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum garchlim_status {
  GARCHLIM_OK = 0,
  GARCHLIM_ERR_INVALID_ARGUMENT = 1, /* bad parameter or domain violation */
  GARCHLIM_ERR_CONFIG = 2,           /* malformed config file or law spec */
  GARCHLIM_ERR_SINGULAR = 3,         /* degenerate model (h0 + beta = 0) */
  GARCHLIM_ERR_TOLERANCE = 4,        /* quadrature missed its tolerance */
  GARCHLIM_ERR_DEGENERATE = 5,       /* rank-sum test on an all-tied pool */
  GARCHLIM_ERR_IO = 6,               /* file could not be written or read */
  GARCHLIM_ERR_INTERNAL = 7
} garchlim_status;

typedef enum garchlim_model {
  GARCHLIM_MODEL_COGARCH = 0,
  GARCHLIM_MODEL_MCOGARCH = 1
} garchlim_model;

typedef enum garchlim_scheme {
  GARCHLIM_SCHEME_H0 = 0,
  GARCHLIM_SCHEME_KV = 1,
  GARCHLIM_SCHEME_M = 2
} garchlim_scheme;

typedef struct garchlim_law garchlim_law;
typedef struct garchlim_skeleton garchlim_skeleton;
typedef struct garchlim_lr_batch garchlim_lr_batch;
typedef struct garchlim_experiment garchlim_experiment;

const char* garchlim_version(void);
/* Thread-local message for the most recent error in this thread. */
const char* garchlim_last_error(void);

/* ---- jump-size laws ----------------------------------------------------
 * Text specs: "normal", "cauchy:a=<real>", "mixture",
 * "gengamma:a=<real>,b=<real>,c=<real>".
 */
garchlim_status garchlim_law_parse(const char* spec, garchlim_law** out);
void garchlim_law_free(garchlim_law* law);
garchlim_status garchlim_law_density(const garchlim_law* law, double z, double* out);
garchlim_status garchlim_law_cdf(const garchlim_law* law, double z, double* out);
/* count i.i.d. draws into out[0..count); deterministic in seed. */
garchlim_status garchlim_law_sample(const garchlim_law* law, size_t count, uint64_t seed,
                                    double* out);

/* ---- processes ---------------------------------------------------------
 * theta is always the 4-vector (h0, beta, alpha, lambda).
 */
garchlim_status garchlim_parametrize(garchlim_scheme scheme, const double theta[4], long n,
                                     double coeffs_out[4]);
/* g_out and h_out receive n+1 values each (partial sums and volatilities). */
garchlim_status garchlim_garch_path(const double coeffs[4], const double* innovations, size_t n,
                                    double* g_out, double* h_out);
garchlim_status garchlim_thinned_innovations(size_t n, double p_n, double gamma,
                                             const garchlim_law* law, uint64_t seed,
                                             double* out);
garchlim_status garchlim_time_change_eval(const double* jump_times, size_t m, double t,
                                          double* out);

garchlim_status garchlim_skeleton_simulate(garchlim_model model, const double theta[4],
                                           double gamma, const garchlim_law* law, uint64_t seed,
                                           garchlim_skeleton** out);
void garchlim_skeleton_free(garchlim_skeleton* skeleton);
size_t garchlim_skeleton_jump_count(const garchlim_skeleton* skeleton);

typedef enum garchlim_skeleton_field {
  GARCHLIM_SKEL_JUMP_TIMES = 0,
  GARCHLIM_SKEL_SPACINGS = 1, /* empty for MCOGARCH */
  GARCHLIM_SKEL_VOLATILITIES = 2,
  GARCHLIM_SKEL_INCREMENTS = 3
} garchlim_skeleton_field;

/* Borrows a pointer into the handle; valid until the handle is freed. */
garchlim_status garchlim_skeleton_data(const garchlim_skeleton* skeleton,
                                       garchlim_skeleton_field field, const double** data,
                                       size_t* len);
/* Cadlag (G(t), h(t)) values on a sorted grid in [0,1]. */
garchlim_status garchlim_skeleton_on_grid(const garchlim_skeleton* skeleton,
                                          const double theta[4], const double* grid,
                                          size_t grid_len, double* g_out, double* h_out);

/* ---- likelihood -------------------------------------------------------- */
/* Recovered innovations (length = jump count) and the log Jacobian term. */
garchlim_status garchlim_invert_innovations(garchlim_model model, const double theta[4],
                                            const garchlim_skeleton* skeleton, double* z_out,
                                            double* log_jacobian_out);
/* Theta-dependent log density factor of the skeleton (0 when d = 0). */
garchlim_status garchlim_log_density(garchlim_model model, const double theta[4],
                                     const garchlim_skeleton* skeleton,
                                     const garchlim_law* law, double* out);
garchlim_status garchlim_likelihood_ratio(garchlim_model model, const double theta[4],
                                          const double theta0[4],
                                          const garchlim_skeleton* skeleton,
                                          const garchlim_law* law, double* out);
/* count ratio samples under theta0; threads = 0 picks hardware concurrency. */
garchlim_status garchlim_lr_sample(garchlim_model model, const double theta[4],
                                   const double theta0[4], double gamma,
                                   const garchlim_law* law, size_t count, uint64_t seed,
                                   unsigned threads, garchlim_lr_batch** out);
void garchlim_lr_batch_free(garchlim_lr_batch* batch);
garchlim_status garchlim_lr_batch_samples(const garchlim_lr_batch* batch, const double** data,
                                          size_t* len);
garchlim_status garchlim_lr_batch_write_csv(const garchlim_lr_batch* batch, const char* path);

/* ---- hellinger ---------------------------------------------------------- */
/* Scaling function g_{f,zeta}(h); closed form when available, otherwise
 * adaptive quadrature at the given tolerances. */
garchlim_status garchlim_g_eval(const garchlim_law* law, double zeta, double h, double abs_tol,
                                double rel_tol, double* out);
garchlim_status garchlim_volatility_ratio(const double theta1[4], const double theta2[4],
                                          double w, double* out);
/* gap = g(sqrt(H(1))) - integral over w of g(sqrt(H(w))); budget bounds the
 * combined quadrature error of the two sides. */
garchlim_status garchlim_d1_identity_gap(const double theta1[4], const double theta2[4],
                                         double zeta, const garchlim_law* law, double abs_tol,
                                         double rel_tol, double* gap_out, double* budget_out);
/* Monte Carlo estimate of the d-jump Hellinger transform conditioned on the
 * spacings (w = NULL for equal spacing 1/d). */
garchlim_status garchlim_hellinger_transform_mc(garchlim_model model, size_t d,
                                                const double theta1[4], const double theta2[4],
                                                const double* w, double zeta,
                                                const garchlim_law* law, size_t count,
                                                uint64_t seed, double* estimate_out,
                                                double* std_error_out);

/* ---- statistics ---------------------------------------------------------- */
garchlim_status garchlim_quantiles(const double* samples, size_t n, const double* probs,
                                   size_t nprobs, double* out);
/* Tie-corrected two-sided rank-sum test. On an all-tied pool returns
 * GARCHLIM_ERR_DEGENERATE and sets w = 0, p = 1. */
garchlim_status garchlim_wilcoxon_rank_sum(const double* x, size_t nx, const double* y,
                                           size_t ny, double* w_out, double* p_out);
garchlim_status garchlim_thinning_bound(double n, double p_n, double gamma, double tv_qn_q,
                                        double* out);

/* ---- experiment runner --------------------------------------------------- */
garchlim_status garchlim_experiment_create_default(garchlim_experiment** out);
garchlim_status garchlim_experiment_load(const char* path, garchlim_experiment** out);
void garchlim_experiment_free(garchlim_experiment* experiment);
garchlim_status garchlim_experiment_set_seed(garchlim_experiment* experiment, uint64_t seed);
/* Replaces the list of batch sizes with the single value given. */
garchlim_status garchlim_experiment_set_samples(garchlim_experiment* experiment, size_t samples);
/* Restricts the law list to one spec. */
garchlim_status garchlim_experiment_set_law(garchlim_experiment* experiment, const char* spec);
garchlim_status garchlim_experiment_set_share_seed(garchlim_experiment* experiment, int on);
garchlim_status garchlim_experiment_set_gamma(garchlim_experiment* experiment, double gamma);
garchlim_status garchlim_experiment_set_output_dir(garchlim_experiment* experiment,
                                                   const char* dir);
garchlim_status garchlim_experiment_set_threads(garchlim_experiment* experiment,
                                                unsigned threads);
/* Borrowed pointer to the experiment's output directory. */
const char* garchlim_experiment_output_dir(const garchlim_experiment* experiment);

/* Emits lr_table.csv / lr_table.txt under the output directory. */
garchlim_status garchlim_experiment_run_lr_table(garchlim_experiment* experiment);
/* Emits wilcoxon_table.csv / wilcoxon_table.txt. */
garchlim_status garchlim_experiment_run_wilcoxon_table(garchlim_experiment* experiment);
/* Emits diagnostics.csv; *failures_out receives the number of failed checks. */
garchlim_status garchlim_experiment_run_diagnostics(garchlim_experiment* experiment,
                                                    int* failures_out);
/* Scans the configured theta grid: writes hellinger_gap.csv rows
 * (theta1, theta2, zeta, gap, tolerance) and a g-grid g_grid.csv. */
garchlim_status garchlim_experiment_run_hellinger_gap(garchlim_experiment* experiment,
                                                      double zeta);
/* Thinning diagnostic rows for n in {10^3..10^6}; *failures_out as above. */
garchlim_status garchlim_experiment_run_thinning_check(garchlim_experiment* experiment,
                                                       int* failures_out);
/* Audit dump of `count` skeletons to skeletons.csv under the output dir. */
garchlim_status garchlim_experiment_dump_skeletons(garchlim_experiment* experiment,
                                                   garchlim_model model, const double theta[4],
                                                   size_t count);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* GARCHLIM_H */
