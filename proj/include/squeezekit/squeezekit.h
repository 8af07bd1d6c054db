#ifndef SQUEEZEKIT_H
#define SQUEEZEKIT_H

/* C interface to the squeezekit shared library.
 *
 * Every fallible call returns an sqk_status; on failure the message is
 * available from sqk_last_error() on the same thread until the next call.
 * Strings returned through char** are heap-allocated and must be released
 * with sqk_string_free. States are opaque handles released with
 * sqk_state_free. Modes are numbered from 1. A cutoff <= 0 asks for the
 * automatic choice where the function documents one. */

#include <stddef.h>

#if defined(_WIN32)
#  if defined(SQUEEZEKIT_BUILDING)
#    define SQK_API __declspec(dllexport)
#  else
#    define SQK_API __declspec(dllimport)
#  endif
#else
#  define SQK_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum sqk_status {
  SQK_OK = 0,
  SQK_INVALID_ARGUMENT = 1,
  SQK_DOMAIN_ERROR = 2,
  SQK_NUMERICAL_ERROR = 3,
  SQK_BUDGET_EXCEEDED = 4,
  SQK_INTERNAL_ERROR = 5
} sqk_status;

typedef struct sqk_complex {
  double re;
  double im;
} sqk_complex;

typedef struct sqk_state sqk_state;

SQK_API const char* sqk_version(void);
SQK_API const char* sqk_schema_version(void);
SQK_API const char* sqk_last_error(void);
SQK_API void sqk_string_free(char* str);

/* ---- states ---- */

SQK_API sqk_status sqk_state_vacuum(int num_modes, int cutoff, sqk_state** out);
SQK_API sqk_status sqk_state_from_amplitudes(int num_modes, int cutoff, const sqk_complex* amplitudes,
                                             size_t length, sqk_state** out);
/* Closed-form squeezed vacua; cutoff <= 0 picks the smallest even cutoff
 * whose tail is below 1e-12. */
SQK_API sqk_status sqk_state_smsv(sqk_complex alpha, int cutoff, sqk_state** out);
SQK_API sqk_status sqk_state_tmsv(sqk_complex alpha, int cutoff, sqk_state** out);
/* exp(alpha a^dagger^2 / 2)|0> and exp(alpha a^dagger b^dagger)|0,0>. */
SQK_API sqk_status sqk_state_exp_single(sqk_complex alpha, int cutoff, int normalize, sqk_state** out);
SQK_API sqk_status sqk_state_exp_pair(sqk_complex alpha, int cutoff, int normalize, sqk_state** out);
/* S(xi)|0> and T(xi)|0,0> by matrix exponential, xi = r e^{i theta}. */
SQK_API sqk_status sqk_state_squeeze_single(double r, double theta, int cutoff, sqk_state** out);
SQK_API sqk_status sqk_state_squeeze_two(double r, double theta, int cutoff, sqk_state** out);
SQK_API sqk_status sqk_state_from_json(const char* json, sqk_state** out);
SQK_API void sqk_state_free(sqk_state* state);

SQK_API sqk_status sqk_state_shape(const sqk_state* state, int* num_modes, int* cutoff, size_t* dim);
/* Copies dim amplitudes; `length` must be at least dim. */
SQK_API sqk_status sqk_state_amplitudes(const sqk_state* state, sqk_complex* buffer, size_t length);
SQK_API sqk_status sqk_state_norm(const sqk_state* state, double* out);
SQK_API sqk_status sqk_state_truncation_deficit(const sqk_state* state, double* out);
SQK_API sqk_status sqk_state_to_json(const sqk_state* state, char** out);

/* ---- measures ---- */

SQK_API sqk_status sqk_fidelity(const sqk_state* lhs, const sqk_state* rhs, double* out);
SQK_API sqk_status sqk_mean_occupation(const sqk_state* state, int mode, double* out);
/* Von Neumann entropy of the reduced state on `keep_modes`. */
SQK_API sqk_status sqk_entanglement_entropy(const sqk_state* state, const int* keep_modes, size_t count,
                                            double* out);

/* ---- parameters ---- */

/* two_mode = 0: alpha = -tanh r e^{i theta}; otherwise alpha = +tanh r e^{i theta}. */
SQK_API sqk_status sqk_alpha_from_xi(double r, double theta, int two_mode, sqk_complex* out);
SQK_API sqk_status sqk_xi_from_alpha(sqk_complex alpha, int two_mode, double* r, double* theta);
SQK_API sqk_status sqk_auto_cutoff(double alpha_modulus, double epsilon, int* out);
SQK_API sqk_status sqk_auto_cutoff_for_r(double r, int* out);

/* ---- identity checks ---- */

SQK_API sqk_status sqk_double_factorial_ratio(int n, double* out);
SQK_API sqk_status sqk_gen_fn_partial_sum(double x, int terms, double* out);
SQK_API sqk_status sqk_commutator_check_single(sqk_complex alpha, int cutoff, int window, double* out);
SQK_API sqk_status sqk_bch_residual_two(double r, double theta, int cutoff, int window, double* out);

/* ---- constraint systems ---- */

/* Residual of each cyclic condition on `state`; writes num_modes values. */
SQK_API sqk_status sqk_constraint_residuals(const sqk_complex* alphas, size_t num_modes, const sqk_state* state,
                                            double* out, size_t length);
SQK_API sqk_status sqk_diagonal_ansatz_residual(const sqk_complex* alphas, size_t num_modes,
                                                const sqk_complex* coeffs, size_t num_coeffs, int cutoff,
                                                double* max_residual);
/* Cutoff scan plus verdict, returned as a JSON document with keys
 * "system", "reports" and "verdict". relative_tolerance <= 0 keeps the
 * default. */
SQK_API sqk_status sqk_nogo_scan(const sqk_complex* alphas, size_t num_modes, const int* cutoffs,
                                 size_t num_cutoffs, double relative_tolerance, int include_basis, char** out);
/* Same as sqk_nogo_scan with the system read from a JSON document
 * {"alphas": [[re, im], ...], "num_modes": N}. */
SQK_API sqk_status sqk_nogo_scan_json(const char* system_json, const int* cutoffs, size_t num_cutoffs,
                                      double relative_tolerance, int include_basis, char** out);
SQK_API sqk_status sqk_pairwise_chain(const sqk_complex* alphas, size_t num_modes, int cutoff, char** out);

/* ---- thermofield double ---- */

typedef struct sqk_thermal_check {
  double population_residual;
  double max_off_diagonal;
  double mean_occupation;
  double occupation_deviation;
} sqk_thermal_check;

typedef struct sqk_tfd_row {
  double omega;
  double alpha;
  double r;
  double mean_occupation;
  double thermal_residual;
  int cutoff;
  int cutoff_capped;
} sqk_tfd_row;

SQK_API sqk_status sqk_tfd_alpha(double beta, double omega, double* out);
SQK_API sqk_status sqk_tfd_r(double beta, double omega, double* out);
SQK_API sqk_status sqk_thermal_check_run(double beta, double omega, int cutoff, sqk_thermal_check* out);
/* Fills up to `capacity` rows and stores num_points in *count. Passing
 * rows = NULL only validates and reports the count. */
SQK_API sqk_status sqk_tfd_spectrum(double beta, double omega_min, double omega_max, int num_points,
                                    int logarithmic, sqk_tfd_row* rows, size_t capacity, size_t* count);

#ifdef __cplusplus
}
#endif

#endif
