/*
 * lchs: linear combination of Hamiltonian simulation, desk-scale numerics.
 *
 * C interface to the shared library. All objects are opaque handles created
 * and destroyed through these functions; every fallible call returns an
 * lchs_status and leaves a human-readable message in lchs_last_error()
 * (thread-local) on failure.
 *
 * Complex data crosses this boundary as interleaved doubles: re, im, re, im,
 * ... in row-major entry order.
 */
#ifndef LCHS_H
#define LCHS_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

#define LCHS_VERSION_STRING "0.1.0"

typedef enum lchs_status {
    LCHS_OK = 0,
    LCHS_ERR_INVALID_ARGUMENT = 1,
    LCHS_ERR_DIMENSION = 2,
    LCHS_ERR_DOMAIN = 3,
    LCHS_ERR_NUMERIC = 4,
    LCHS_ERR_CONVERGENCE = 5,
    LCHS_ERR_PRECONDITION = 6,
    LCHS_ERR_IO = 7,
    LCHS_ERR_INTERNAL = 8
} lchs_status;

const char* lchs_version(void);
/* message from the most recent failing call on this thread; never NULL */
const char* lchs_last_error(void);

typedef struct lchs_matrix lchs_matrix;       /* dense complex, row-major */
typedef struct lchs_kernel lchs_kernel;       /* kernel function spec */
typedef struct lchs_grid lchs_grid;           /* k-quadrature grid {k_j, c_j} */
typedef struct lchs_problem lchs_problem;     /* ODE du/dt = -A(t)u + b(t) */
typedef struct lchs_time_grid lchs_time_grid; /* s-quadrature grid {s_j', c'_j'} */
typedef struct lchs_plan lchs_plan;           /* pair-sampling plan */

/* ---- matrices and vectors (a vector is a dim x 1 matrix) ---- */

lchs_status lchs_matrix_create(int64_t rows, int64_t cols, const double* interleaved,
                               lchs_matrix** out);
void lchs_matrix_free(lchs_matrix* m);
lchs_status lchs_matrix_shape(const lchs_matrix* m, int64_t* rows, int64_t* cols);
/* copies rows*cols complex entries into out (2*rows*cols doubles) */
lchs_status lchs_matrix_data(const lchs_matrix* m, double* out);
lchs_status lchs_matrix_read(const char* path, lchs_matrix** out);
lchs_status lchs_matrix_write(const lchs_matrix* m, const char* path);
lchs_status lchs_matrix_spectral_norm(const lchs_matrix* m, double* out);
lchs_status lchs_matrix_expm(const lchs_matrix* m, lchs_matrix** out);
lchs_status lchs_matrix_cartesian_split(const lchs_matrix* a, lchs_matrix** l, lchs_matrix** h);

/* seeded generators (deterministic across platforms) */
lchs_status lchs_generate_hermitian(int64_t dim, uint64_t seed, lchs_matrix** out);
/* Hermitian, lambda_min = 0, unit spectral norm */
lchs_status lchs_generate_psd_unit(int64_t dim, uint64_t seed, lchs_matrix** out);
/* (L, H) with unit norms and lambda_min(L) = 0 */
lchs_status lchs_generate_unit_pair(int64_t dim, uint64_t seed, lchs_matrix** l,
                                    lchs_matrix** h);
lchs_status lchs_generate_state(int64_t dim, uint64_t seed, lchs_matrix** out);

/* ---- kernel functions ---- */

lchs_status lchs_kernel_beta(double beta, lchs_kernel** out);
lchs_status lchs_kernel_cauchy(lchs_kernel** out);
lchs_status lchs_kernel_poly(int p, lchs_kernel** out);
lchs_status lchs_kernel_log(int p, lchs_kernel** out);
/* JSON form, e.g. {"variant": "beta_exponential", "beta": 0.75} */
lchs_status lchs_kernel_parse(const char* json_text, lchs_kernel** out);
void lchs_kernel_free(lchs_kernel* k);
/* writes a short label ("beta=0.75", "cauchy", ...) into buf */
lchs_status lchs_kernel_label(const lchs_kernel* k, char* buf, size_t buflen);

lchs_status lchs_c_beta(double beta, double* out);
lchs_status lchs_kernel_f(const lchs_kernel* k, double re_z, double im_z, double* re_out,
                          double* im_out);
lchs_status lchs_kernel_g(const lchs_kernel* k, double x, double* re_out, double* im_out);
lchs_status lchs_g_abs_bound(double beta, double x, double* out);
/* half-width covering the tail of g e^{-ikx} to tol/2 */
lchs_status lchs_kernel_suggest_kmax(const lchs_kernel* k, double tol, double x, double* out);
/* |integral over [-k_max, k_max] of g - 1| */
lchs_status lchs_kernel_normalization_residual(const lchs_kernel* k, double k_max, double tol,
                                               double* out);
/* integral of g(k) e^{-ikx}; equals e^{-x} for x >= 0 for valid kernels */
lchs_status lchs_kernel_fourier(const lchs_kernel* k, double x, double tol, double* re_out,
                                double* im_out);

/* ---- quadrature: rules, parameter selection, the LCHS grid ---- */

/* fills nodes[q] and weights[q] */
lchs_status lchs_gauss_legendre(int order_q, double* nodes, double* weights);
/* empirical != 0 bisects the numeric modulus tail instead of the bound */
lchs_status lchs_select_truncation_k(double beta, double eps, int empirical, double* out);
lchs_status lchs_select_quadrature_params(double horizon_t, double max_norm_l, double trunc_k,
                                          double beta, double eps, double* step_h1,
                                          int* order_q);
/* explicit truncation-error bound at half-width K (beta family) */
lchs_status lchs_truncation_bound(double beta, double trunc_k, double* out);

lchs_status lchs_grid_build(const lchs_kernel* k, double trunc_k, double step_h1, int order_q,
                            lchs_grid** out);
void lchs_grid_free(lchs_grid* g);
lchs_status lchs_grid_size(const lchs_grid* g, int64_t* out);
lchs_status lchs_grid_params(const lchs_grid* g, double* trunc_k, double* step_h1,
                             int* order_q);
lchs_status lchs_grid_nodes(const lchs_grid* g, double* out);
lchs_status lchs_grid_coeffs(const lchs_grid* g, double* interleaved_out);
lchs_status lchs_grid_one_norm(const lchs_grid* g, double* out);
lchs_status lchs_grid_coeff_sum(const lchs_grid* g, double* re_out, double* im_out);
lchs_status lchs_grid_write_csv(const lchs_grid* g, const char* path);

/* ---- problems ---- */

/* b may be NULL (homogeneous); a is dim x dim, b and u0 are dim x 1 */
lchs_status lchs_problem_constant(const lchs_matrix* a, const lchs_matrix* b,
                                  const lchs_matrix* u0, double horizon_t, lchs_problem** out);

/* callback fills 2*rows*cols doubles (interleaved, row-major) at time t */
typedef void (*lchs_time_matrix_fn)(double t, double* interleaved_out, void* user);
lchs_status lchs_problem_callback(int64_t dim, lchs_time_matrix_fn a_fn, void* a_user,
                                  lchs_time_matrix_fn b_fn, void* b_user,
                                  const lchs_matrix* u0, double horizon_t, lchs_problem** out);

/* named generators: scalar-decay, constant-psd, td-psd, td-inhomogeneous */
lchs_status lchs_problem_named(const char* name, int64_t dim, uint64_t seed, double horizon_t,
                               lchs_problem** out);
void lchs_problem_free(lchs_problem* p);
lchs_status lchs_problem_dim(const lchs_problem* p, int64_t* out);
lchs_status lchs_problem_horizon(const lchs_problem* p, double* out);
lchs_status lchs_problem_has_b(const lchs_problem* p, int* out);
/* LCHS_OK when L(t) stays PSD (within tol) on a 257-point sample grid */
lchs_status lchs_problem_psd_check(const lchs_problem* p, double tol_psd);
/* max_t ||A(t)|| on a 257-point sample grid */
lchs_status lchs_problem_max_norm(const lchs_problem* p, double* out);

/* ---- brute-force oracles ---- */

lchs_status lchs_time_ordered_propagator(const lchs_problem* p, double t0, double t1,
                                         double tol, lchs_matrix** out);
lchs_status lchs_unitary_evolution(const lchs_problem* p, double k, double s, double t_end,
                                   double tol, lchs_matrix** out);
lchs_status lchs_reference_solution(const lchs_problem* p, double tol, lchs_matrix** out);

/* ---- solver ---- */

typedef struct lchs_solve_stats {
    double abs_error;
    double state_error;
    int64_t grid_m;
    int64_t grid_mprime;
    double trunc_k;
    double step_h1;
    int order_q;
    double step_h2;
    int order_q2;
} lchs_solve_stats;

lchs_status lchs_default_ham_tol(double eps, const lchs_grid* g, double* out);
lchs_status lchs_approx_propagator(const lchs_problem* p, const lchs_grid* g, double ham_tol,
                                   lchs_matrix** out);
lchs_status lchs_solve_homogeneous(const lchs_problem* p, const lchs_grid* g, double ham_tol,
                                   double oracle_tol, lchs_matrix** u_approx,
                                   lchs_matrix** u_oracle, lchs_solve_stats* stats);

lchs_status lchs_estimate_lambda_xi(const lchs_problem* p, int p_max, double* lambda_out,
                                    double* xi_out);
lchs_status lchs_time_grid_build(const lchs_problem* p, double trunc_k, double lambda_cap,
                                 double xi_cap, double eps, lchs_time_grid** out);
void lchs_time_grid_free(lchs_time_grid* tg);
lchs_status lchs_time_grid_size(const lchs_time_grid* tg, int64_t* out);
lchs_status lchs_time_grid_params(const lchs_time_grid* tg, double* step_h2, int* order_q2);
lchs_status lchs_time_grid_coeff_sum(const lchs_time_grid* tg, double* out);
lchs_status lchs_solve_inhomogeneous(const lchs_problem* p, const lchs_grid* g,
                                     const lchs_time_grid* tg, double ham_tol,
                                     double oracle_tol, lchs_matrix** u_approx,
                                     lchs_matrix** u_oracle, lchs_solve_stats* stats);

/* truncation error per (kernel, K) for constant unit-norm L, H;
 * errors_out has nspecs * nk entries, spec-major */
lchs_status lchs_truncation_sweep(const lchs_matrix* l, const lchs_matrix* h,
                                  const lchs_kernel* const* specs, int64_t nspecs,
                                  const double* k_values, int64_t nk, double tol,
                                  double* errors_out);
lchs_status lchs_smallest_sufficient_k(const lchs_matrix* l, const lchs_matrix* h,
                                       const lchs_kernel* spec, double target, double k_step,
                                       double k_cap, double* out);

/* ---- thermal states ---- */

lchs_status lchs_partition_function(const lchs_matrix* l, double gamma, double* out);

typedef struct lchs_gibbs_stats {
    double partition_z;
    double trace_distance;
    double purified_error;
    double unnormalized_norm;
    double post_selection_ratio;
} lchs_gibbs_stats;

/* density is N x N; purified is N^2 x 1; either out pointer may be NULL */
lchs_status lchs_gibbs_prepare(const lchs_matrix* l, double gamma, const lchs_grid* g,
                               double ham_tol, lchs_matrix** density, lchs_matrix** purified,
                               lchs_gibbs_stats* stats);

/* ---- hybrid estimator ---- */

lchs_status lchs_plan_build(const lchs_grid* g, lchs_plan** out);
void lchs_plan_free(lchs_plan* plan);
lchs_status lchs_plan_masses(const lchs_plan* plan, double* re_mass, double* im_mass);
lchs_status lchs_sample_count(double eps, double delta, double obs_norm, int64_t* out);

typedef struct lchs_estimate {
    double value_re;
    double value_im;
    double stderr_value;
    int64_t n_samples;
    uint64_t seed;
} lchs_estimate;

/* n_samples = 0 runs full enumeration (exact expectation, stderr 0) */
lchs_status lchs_estimate_observable(const lchs_problem* p, const lchs_grid* g,
                                     const lchs_matrix* obs, int64_t n_samples, uint64_t seed,
                                     double ham_tol, double noise_width, lchs_estimate* out);
/* direct double sum over pairs, the enumeration reference */
lchs_status lchs_expectation_direct(const lchs_problem* p, const lchs_grid* g,
                                    const lchs_matrix* obs, double ham_tol, double* re_out,
                                    double* im_out);

/* ---- resource estimates ---- */

typedef struct lchs_cost_input {
    double alpha_a;
    double alpha_l;
    double alpha_h;
    double horizon_t;
    double eps;
    double beta;
    double norm_u0;
    double norm_ut;
    double b_l1;
    double lambda_cap;
    double xi_cap;
    double n_dim;       /* Gibbs only */
    double partition_z; /* Gibbs only */
    double gamma;       /* Gibbs only */
} lchs_cost_input;

typedef struct lchs_resource_estimate {
    double trunc_k;
    int64_t grid_m;
    int64_t grid_mprime;
    double matrix_queries;
    double state_prep_queries;
    char notes[128];
} lchs_resource_estimate;

lchs_status lchs_cost_homogeneous(const lchs_cost_input* in, lchs_resource_estimate* out);
lchs_status lchs_cost_inhomogeneous(const lchs_cost_input* in, lchs_resource_estimate* out);
lchs_status lchs_cost_time_independent(const lchs_cost_input* in, lchs_resource_estimate* out);
lchs_status lchs_cost_gibbs(const lchs_cost_input* in, lchs_resource_estimate* out);
/* writes the method-comparison CSV; kappa_v = NaN marks that row unavailable */
lchs_status lchs_comparison_table_csv(const lchs_cost_input* in, double kappa_v,
                                      const char* path);

/* ---- invariant suite ---- */

/* returns LCHS_OK and sets *failures; verbose != 0 prints one line per check
 * to stdout */
lchs_status lchs_selftest(int verbose, int64_t* failures);

#ifdef __cplusplus
}
#endif

#endif /* LCHS_H */
