// extern-C surface of the shared library. Exceptions from the core are
// caught here and mapped to status codes plus a thread-local message.
#include "lchs/lchs.h"

#include <cstring>
#include <iostream>
#include <memory>
#include <string>

#include "errors.hpp"
#include "gauss.hpp"
#include "generators.hpp"
#include "gibbs.hpp"
#include "grid.hpp"
#include "io.hpp"
#include "kernels.hpp"
#include "linalg.hpp"
#include "propagator.hpp"
#include "resource.hpp"
#include "sampler.hpp"
#include "selftest.hpp"
#include "solver.hpp"

using namespace lchs;

struct lchs_matrix {
    Matrix m;
};
struct lchs_kernel {
    KernelSpec spec;
};
struct lchs_grid {
    QuadratureGrid grid;
};
struct lchs_problem {
    OdeProblem p;
};
struct lchs_time_grid {
    TimeGrid tg;
};
struct lchs_plan {
    SamplingPlan plan;
};

namespace {

thread_local std::string g_last_error = "";

lchs_status set_error(lchs_status code, const std::string& msg) {
    g_last_error = msg;
    return code;
}

template <typename Fn>
lchs_status guarded(Fn&& fn) {
    try {
        fn();
        return LCHS_OK;
    } catch (const DimensionError& e) {
        return set_error(LCHS_ERR_DIMENSION, e.what());
    } catch (const DomainError& e) {
        return set_error(LCHS_ERR_DOMAIN, e.what());
    } catch (const ConvergenceError& e) {
        return set_error(LCHS_ERR_CONVERGENCE, e.what());
    } catch (const PreconditionError& e) {
        return set_error(LCHS_ERR_PRECONDITION, e.what());
    } catch (const IoError& e) {
        return set_error(LCHS_ERR_IO, e.what());
    } catch (const NumericError& e) {
        return set_error(LCHS_ERR_NUMERIC, e.what());
    } catch (const std::invalid_argument& e) {
        return set_error(LCHS_ERR_INVALID_ARGUMENT, e.what());
    } catch (const std::exception& e) {
        return set_error(LCHS_ERR_INTERNAL, e.what());
    } catch (...) {
        return set_error(LCHS_ERR_INTERNAL, "unknown failure");
    }
}

lchs_status require(bool cond, const char* what) {
    if (cond) return LCHS_OK;
    return set_error(LCHS_ERR_INVALID_ARGUMENT, what);
}

#define LCHS_REQUIRE(cond, what)                                   \
    do {                                                           \
        if (!(cond)) return require(false, what);                  \
    } while (0)

lchs_matrix* wrap(Matrix m) { return new lchs_matrix{std::move(m)}; }

Matrix from_interleaved(int64_t rows, int64_t cols, const double* data) {
    Matrix m(rows, cols);
    for (int64_t i = 0; i < rows; ++i) {
        for (int64_t j = 0; j < cols; ++j) {
            int64_t idx = 2 * (i * cols + j);
            m(i, j) = Complex(data[idx], data[idx + 1]);
        }
    }
    return m;
}

void to_interleaved(const Matrix& m, double* out) {
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        for (Eigen::Index j = 0; j < m.cols(); ++j) {
            Eigen::Index idx = 2 * (i * m.cols() + j);
            out[idx] = m(i, j).real();
            out[idx + 1] = m(i, j).imag();
        }
    }
}

void fill_stats(const SolveReport& rep, lchs_solve_stats* stats) {
    if (!stats) return;
    stats->abs_error = rep.abs_error;
    stats->state_error = rep.state_error;
    stats->grid_m = static_cast<int64_t>(rep.grid_m);
    stats->grid_mprime = static_cast<int64_t>(rep.grid_mprime);
    stats->trunc_k = rep.trunc_k;
    stats->step_h1 = rep.step_h1;
    stats->order_q = rep.order_q;
    stats->step_h2 = rep.step_h2;
    stats->order_q2 = rep.order_q2;
}

void fill_estimate(const ResourceEstimate& est, lchs_resource_estimate* out) {
    out->trunc_k = est.trunc_k;
    out->grid_m = est.grid_m;
    out->grid_mprime = est.grid_mprime;
    out->matrix_queries = est.matrix_queries;
    out->state_prep_queries = est.state_prep_queries;
    std::snprintf(out->notes, sizeof(out->notes), "%s", est.notes.c_str());
}

}  // namespace

extern "C" {

const char* lchs_version(void) { return LCHS_VERSION_STRING; }

const char* lchs_last_error(void) { return g_last_error.c_str(); }

/* ---- matrices ---- */

lchs_status lchs_matrix_create(int64_t rows, int64_t cols, const double* interleaved,
                               lchs_matrix** out) {
    LCHS_REQUIRE(rows > 0 && cols > 0 && interleaved && out, "matrix_create: bad arguments");
    return guarded([&] { *out = wrap(from_interleaved(rows, cols, interleaved)); });
}

void lchs_matrix_free(lchs_matrix* m) { delete m; }

lchs_status lchs_matrix_shape(const lchs_matrix* m, int64_t* rows, int64_t* cols) {
    LCHS_REQUIRE(m && rows && cols, "matrix_shape: bad arguments");
    *rows = m->m.rows();
    *cols = m->m.cols();
    return LCHS_OK;
}

lchs_status lchs_matrix_data(const lchs_matrix* m, double* out) {
    LCHS_REQUIRE(m && out, "matrix_data: bad arguments");
    to_interleaved(m->m, out);
    return LCHS_OK;
}

lchs_status lchs_matrix_read(const char* path, lchs_matrix** out) {
    LCHS_REQUIRE(path && out, "matrix_read: bad arguments");
    return guarded([&] { *out = wrap(read_matrix_file(path)); });
}

lchs_status lchs_matrix_write(const lchs_matrix* m, const char* path) {
    LCHS_REQUIRE(m && path, "matrix_write: bad arguments");
    return guarded([&] {
        if (m->m.cols() == 1 && m->m.rows() > 1) {
            write_vector_file(m->m.col(0), path);
        } else {
            write_matrix_file(m->m, path);
        }
    });
}

lchs_status lchs_matrix_spectral_norm(const lchs_matrix* m, double* out) {
    LCHS_REQUIRE(m && out, "spectral_norm: bad arguments");
    return guarded([&] { *out = spectral_norm(m->m); });
}

lchs_status lchs_matrix_expm(const lchs_matrix* m, lchs_matrix** out) {
    LCHS_REQUIRE(m && out, "matrix_expm: bad arguments");
    return guarded([&] { *out = wrap(expm(m->m)); });
}

lchs_status lchs_matrix_cartesian_split(const lchs_matrix* a, lchs_matrix** l,
                                        lchs_matrix** h) {
    LCHS_REQUIRE(a && l && h, "cartesian_split: bad arguments");
    return guarded([&] {
        HermitianPair pair = cartesian_split(a->m);
        *l = wrap(std::move(pair.l));
        *h = wrap(std::move(pair.h));
    });
}

lchs_status lchs_generate_hermitian(int64_t dim, uint64_t seed, lchs_matrix** out) {
    LCHS_REQUIRE(dim > 0 && out, "generate_hermitian: bad arguments");
    return guarded([&] { *out = wrap(random_hermitian(dim, seed)); });
}

lchs_status lchs_generate_psd_unit(int64_t dim, uint64_t seed, lchs_matrix** out) {
    LCHS_REQUIRE(dim > 0 && out, "generate_psd_unit: bad arguments");
    return guarded([&] { *out = wrap(random_psd_unit(dim, seed)); });
}

lchs_status lchs_generate_unit_pair(int64_t dim, uint64_t seed, lchs_matrix** l,
                                    lchs_matrix** h) {
    LCHS_REQUIRE(dim > 0 && l && h, "generate_unit_pair: bad arguments");
    return guarded([&] {
        HermitianPair pair = random_unit_pair(dim, seed);
        *l = wrap(std::move(pair.l));
        *h = wrap(std::move(pair.h));
    });
}

lchs_status lchs_generate_state(int64_t dim, uint64_t seed, lchs_matrix** out) {
    LCHS_REQUIRE(dim > 0 && out, "generate_state: bad arguments");
    return guarded([&] { *out = wrap(Matrix(random_state(dim, seed))); });
}

/* ---- kernels ---- */

lchs_status lchs_kernel_beta(double beta, lchs_kernel** out) {
    LCHS_REQUIRE(out, "kernel_beta: bad arguments");
    return guarded([&] { *out = new lchs_kernel{KernelSpec::beta_exponential(beta)}; });
}

lchs_status lchs_kernel_cauchy(lchs_kernel** out) {
    LCHS_REQUIRE(out, "kernel_cauchy: bad arguments");
    return guarded([&] { *out = new lchs_kernel{KernelSpec::cauchy()}; });
}

lchs_status lchs_kernel_poly(int p, lchs_kernel** out) {
    LCHS_REQUIRE(out, "kernel_poly: bad arguments");
    return guarded([&] { *out = new lchs_kernel{KernelSpec::poly_power(p)}; });
}

lchs_status lchs_kernel_log(int p, lchs_kernel** out) {
    LCHS_REQUIRE(out, "kernel_log: bad arguments");
    return guarded([&] { *out = new lchs_kernel{KernelSpec::log_power(p)}; });
}

lchs_status lchs_kernel_parse(const char* json_text, lchs_kernel** out) {
    LCHS_REQUIRE(json_text && out, "kernel_parse: bad arguments");
    return guarded([&] { *out = new lchs_kernel{kernel_from_json(json_text)}; });
}

void lchs_kernel_free(lchs_kernel* k) { delete k; }

lchs_status lchs_kernel_label(const lchs_kernel* k, char* buf, size_t buflen) {
    LCHS_REQUIRE(k && buf && buflen > 0, "kernel_label: bad arguments");
    std::snprintf(buf, buflen, "%s", k->spec.label().c_str());
    return LCHS_OK;
}

lchs_status lchs_c_beta(double beta, double* out) {
    LCHS_REQUIRE(out, "c_beta: bad arguments");
    return guarded([&] { *out = c_beta(beta); });
}

lchs_status lchs_kernel_f(const lchs_kernel* k, double re_z, double im_z, double* re_out,
                          double* im_out) {
    LCHS_REQUIRE(k && re_out && im_out, "kernel_f: bad arguments");
    return guarded([&] {
        Complex v = f_eval(k->spec, Complex(re_z, im_z));
        *re_out = v.real();
        *im_out = v.imag();
    });
}

lchs_status lchs_kernel_g(const lchs_kernel* k, double x, double* re_out, double* im_out) {
    LCHS_REQUIRE(k && re_out && im_out, "kernel_g: bad arguments");
    return guarded([&] {
        Complex v = g_eval(k->spec, x);
        *re_out = v.real();
        *im_out = v.imag();
    });
}

lchs_status lchs_g_abs_bound(double beta, double x, double* out) {
    LCHS_REQUIRE(out, "g_abs_bound: bad arguments");
    return guarded([&] { *out = g_abs_bound(beta, x); });
}

lchs_status lchs_kernel_suggest_kmax(const lchs_kernel* k, double tol, double x, double* out) {
    LCHS_REQUIRE(k && out, "suggest_kmax: bad arguments");
    return guarded([&] { *out = suggest_kmax(k->spec, tol, x); });
}

lchs_status lchs_kernel_normalization_residual(const lchs_kernel* k, double k_max, double tol,
                                               double* out) {
    LCHS_REQUIRE(k && out, "normalization_residual: bad arguments");
    return guarded([&] { *out = verify_normalization(k->spec, k_max, tol); });
}

lchs_status lchs_kernel_fourier(const lchs_kernel* k, double x, double tol, double* re_out,
                                double* im_out) {
    LCHS_REQUIRE(k && re_out && im_out, "kernel_fourier: bad arguments");
    return guarded([&] {
        Complex v = fourier_check(k->spec, x, tol);
        *re_out = v.real();
        *im_out = v.imag();
    });
}

/* ---- quadrature ---- */

lchs_status lchs_gauss_legendre(int order_q, double* nodes, double* weights) {
    LCHS_REQUIRE(nodes && weights, "gauss_legendre: bad arguments");
    return guarded([&] {
        GaussLegendreRule rule = gauss_legendre(order_q);
        std::memcpy(nodes, rule.nodes.data(), sizeof(double) * rule.nodes.size());
        std::memcpy(weights, rule.weights.data(), sizeof(double) * rule.weights.size());
    });
}

lchs_status lchs_select_truncation_k(double beta, double eps, int empirical, double* out) {
    LCHS_REQUIRE(out, "select_truncation_k: bad arguments");
    return guarded([&] {
        *out = select_truncation_k(beta, eps,
                                   empirical ? TruncationMode::empirical
                                             : TruncationMode::bound);
    });
}

lchs_status lchs_select_quadrature_params(double horizon_t, double max_norm_l, double trunc_k,
                                          double beta, double eps, double* step_h1,
                                          int* order_q) {
    LCHS_REQUIRE(step_h1 && order_q, "select_quadrature_params: bad arguments");
    return guarded([&] {
        QuadratureParams qp = select_quadrature_params(horizon_t, max_norm_l, trunc_k, beta,
                                                       eps);
        *step_h1 = qp.step_h1;
        *order_q = qp.order_q;
    });
}

lchs_status lchs_truncation_bound(double beta, double trunc_k, double* out) {
    LCHS_REQUIRE(out, "truncation_bound: bad arguments");
    return guarded([&] { *out = truncation_bound(beta, trunc_k); });
}

lchs_status lchs_grid_build(const lchs_kernel* k, double trunc_k, double step_h1, int order_q,
                            lchs_grid** out) {
    LCHS_REQUIRE(k && out, "grid_build: bad arguments");
    return guarded([&] {
        *out = new lchs_grid{build_grid(k->spec, trunc_k, step_h1, order_q)};
    });
}

void lchs_grid_free(lchs_grid* g) { delete g; }

lchs_status lchs_grid_size(const lchs_grid* g, int64_t* out) {
    LCHS_REQUIRE(g && out, "grid_size: bad arguments");
    *out = static_cast<int64_t>(g->grid.total_m);
    return LCHS_OK;
}

lchs_status lchs_grid_params(const lchs_grid* g, double* trunc_k, double* step_h1,
                             int* order_q) {
    LCHS_REQUIRE(g && trunc_k && step_h1 && order_q, "grid_params: bad arguments");
    *trunc_k = g->grid.trunc_k;
    *step_h1 = g->grid.step_h1;
    *order_q = g->grid.order_q;
    return LCHS_OK;
}

lchs_status lchs_grid_nodes(const lchs_grid* g, double* out) {
    LCHS_REQUIRE(g && out, "grid_nodes: bad arguments");
    std::memcpy(out, g->grid.nodes.data(), sizeof(double) * g->grid.nodes.size());
    return LCHS_OK;
}

lchs_status lchs_grid_coeffs(const lchs_grid* g, double* interleaved_out) {
    LCHS_REQUIRE(g && interleaved_out, "grid_coeffs: bad arguments");
    for (std::size_t j = 0; j < g->grid.total_m; ++j) {
        interleaved_out[2 * j] = g->grid.coeffs[j].real();
        interleaved_out[2 * j + 1] = g->grid.coeffs[j].imag();
    }
    return LCHS_OK;
}

lchs_status lchs_grid_one_norm(const lchs_grid* g, double* out) {
    LCHS_REQUIRE(g && out, "grid_one_norm: bad arguments");
    return guarded([&] { *out = coefficient_one_norm(g->grid); });
}

lchs_status lchs_grid_coeff_sum(const lchs_grid* g, double* re_out, double* im_out) {
    LCHS_REQUIRE(g && re_out && im_out, "grid_coeff_sum: bad arguments");
    return guarded([&] {
        Complex s = coefficient_sum(g->grid);
        *re_out = s.real();
        *im_out = s.imag();
    });
}

lchs_status lchs_grid_write_csv(const lchs_grid* g, const char* path) {
    LCHS_REQUIRE(g && path, "grid_write_csv: bad arguments");
    return guarded([&] { write_grid_csv(g->grid, path); });
}

/* ---- problems ---- */

lchs_status lchs_problem_constant(const lchs_matrix* a, const lchs_matrix* b,
                                  const lchs_matrix* u0, double horizon_t,
                                  lchs_problem** out) {
    LCHS_REQUIRE(a && u0 && out, "problem_constant: bad arguments");
    return guarded([&] {
        OdeProblem p;
        p.a = TimeDependentMatrix::constant(a->m);
        if (b) {
            if (b->m.cols() != 1) throw DimensionError("b must be a column vector");
            p.b = TimeDependentMatrix::constant(b->m);
        }
        if (u0->m.cols() != 1) throw DimensionError("u0 must be a column vector");
        p.u0 = u0->m.col(0);
        p.horizon_T = horizon_t;
        p.validate();
        *out = new lchs_problem{std::move(p)};
    });
}

lchs_status lchs_problem_callback(int64_t dim, lchs_time_matrix_fn a_fn, void* a_user,
                                  lchs_time_matrix_fn b_fn, void* b_user,
                                  const lchs_matrix* u0, double horizon_t,
                                  lchs_problem** out) {
    LCHS_REQUIRE(dim > 0 && a_fn && u0 && out, "problem_callback: bad arguments");
    return guarded([&] {
        OdeProblem p;
        p.a = TimeDependentMatrix(
            dim, dim,
            [a_fn, a_user, dim](double t, Matrix& m) {
                std::vector<double> buf(2 * dim * dim);
                a_fn(t, buf.data(), a_user);
                m = from_interleaved(dim, dim, buf.data());
            },
            "caller-supplied");
        if (b_fn) {
            p.b = TimeDependentMatrix(
                dim, 1,
                [b_fn, b_user, dim](double t, Matrix& m) {
                    std::vector<double> buf(2 * dim);
                    b_fn(t, buf.data(), b_user);
                    m = from_interleaved(dim, 1, buf.data());
                },
                "caller-supplied");
        }
        if (u0->m.cols() != 1) throw DimensionError("u0 must be a column vector");
        p.u0 = u0->m.col(0);
        p.horizon_T = horizon_t;
        p.validate();
        *out = new lchs_problem{std::move(p)};
    });
}

lchs_status lchs_problem_named(const char* name, int64_t dim, uint64_t seed, double horizon_t,
                               lchs_problem** out) {
    LCHS_REQUIRE(name && out, "problem_named: bad arguments");
    return guarded([&] {
        *out = new lchs_problem{make_named_problem(name, dim, seed, horizon_t)};
    });
}

void lchs_problem_free(lchs_problem* p) { delete p; }

lchs_status lchs_problem_dim(const lchs_problem* p, int64_t* out) {
    LCHS_REQUIRE(p && out, "problem_dim: bad arguments");
    *out = p->p.dim();
    return LCHS_OK;
}

lchs_status lchs_problem_horizon(const lchs_problem* p, double* out) {
    LCHS_REQUIRE(p && out, "problem_horizon: bad arguments");
    *out = p->p.horizon_T;
    return LCHS_OK;
}

lchs_status lchs_problem_has_b(const lchs_problem* p, int* out) {
    LCHS_REQUIRE(p && out, "problem_has_b: bad arguments");
    *out = p->p.b ? 1 : 0;
    return LCHS_OK;
}

lchs_status lchs_problem_psd_check(const lchs_problem* p, double tol_psd) {
    LCHS_REQUIRE(p, "psd_check: bad arguments");
    return guarded([&] { p->p.psd_check(tol_psd); });
}

lchs_status lchs_problem_max_norm(const lchs_problem* p, double* out) {
    LCHS_REQUIRE(p && out, "problem_max_norm: bad arguments");
    return guarded([&] {
        *out = detail::max_norm_on_grid(p->p.a, 0.0, p->p.horizon_T, 257);
    });
}

/* ---- oracles ---- */

lchs_status lchs_time_ordered_propagator(const lchs_problem* p, double t0, double t1,
                                         double tol, lchs_matrix** out) {
    LCHS_REQUIRE(p && out, "time_ordered_propagator: bad arguments");
    return guarded([&] { *out = wrap(time_ordered_propagator(p->p.a, t0, t1, tol)); });
}

lchs_status lchs_unitary_evolution(const lchs_problem* p, double k, double s, double t_end,
                                   double tol, lchs_matrix** out) {
    LCHS_REQUIRE(p && out, "unitary_evolution: bad arguments");
    return guarded([&] { *out = wrap(unitary_evolution(p->p.a, k, s, t_end, tol)); });
}

lchs_status lchs_reference_solution(const lchs_problem* p, double tol, lchs_matrix** out) {
    LCHS_REQUIRE(p && out, "reference_solution: bad arguments");
    return guarded([&] { *out = wrap(Matrix(reference_solution(p->p, tol))); });
}

/* ---- solver ---- */

lchs_status lchs_default_ham_tol(double eps, const lchs_grid* g, double* out) {
    LCHS_REQUIRE(g && out, "default_ham_tol: bad arguments");
    return guarded([&] { *out = default_ham_tol(eps, g->grid); });
}

lchs_status lchs_approx_propagator(const lchs_problem* p, const lchs_grid* g, double ham_tol,
                                   lchs_matrix** out) {
    LCHS_REQUIRE(p && g && out, "approx_propagator: bad arguments");
    return guarded([&] { *out = wrap(approx_propagator(p->p, g->grid, ham_tol)); });
}

lchs_status lchs_solve_homogeneous(const lchs_problem* p, const lchs_grid* g, double ham_tol,
                                   double oracle_tol, lchs_matrix** u_approx,
                                   lchs_matrix** u_oracle, lchs_solve_stats* stats) {
    LCHS_REQUIRE(p && g, "solve_homogeneous: bad arguments");
    return guarded([&] {
        SolveReport rep = solve_homogeneous(p->p, g->grid, ham_tol, oracle_tol);
        if (u_approx) *u_approx = wrap(Matrix(rep.approx_u));
        if (u_oracle) *u_oracle = wrap(Matrix(rep.oracle_u));
        fill_stats(rep, stats);
    });
}

lchs_status lchs_estimate_lambda_xi(const lchs_problem* p, int p_max, double* lambda_out,
                                    double* xi_out) {
    LCHS_REQUIRE(p && lambda_out && xi_out, "estimate_lambda_xi: bad arguments");
    return guarded([&] {
        auto [lambda, xi] = estimate_lambda_xi(p->p, p_max);
        *lambda_out = lambda;
        *xi_out = xi;
    });
}

lchs_status lchs_time_grid_build(const lchs_problem* p, double trunc_k, double lambda_cap,
                                 double xi_cap, double eps, lchs_time_grid** out) {
    LCHS_REQUIRE(p && out, "time_grid_build: bad arguments");
    return guarded([&] {
        *out = new lchs_time_grid{build_time_grid(p->p, trunc_k, lambda_cap, xi_cap, eps)};
    });
}

void lchs_time_grid_free(lchs_time_grid* tg) { delete tg; }

lchs_status lchs_time_grid_size(const lchs_time_grid* tg, int64_t* out) {
    LCHS_REQUIRE(tg && out, "time_grid_size: bad arguments");
    *out = static_cast<int64_t>(tg->tg.total_m());
    return LCHS_OK;
}

lchs_status lchs_time_grid_params(const lchs_time_grid* tg, double* step_h2, int* order_q2) {
    LCHS_REQUIRE(tg && step_h2 && order_q2, "time_grid_params: bad arguments");
    *step_h2 = tg->tg.step_h2;
    *order_q2 = tg->tg.order_q2;
    return LCHS_OK;
}

lchs_status lchs_time_grid_coeff_sum(const lchs_time_grid* tg, double* out) {
    LCHS_REQUIRE(tg && out, "time_grid_coeff_sum: bad arguments");
    *out = tg->tg.coeff_sum();
    return LCHS_OK;
}

lchs_status lchs_solve_inhomogeneous(const lchs_problem* p, const lchs_grid* g,
                                     const lchs_time_grid* tg, double ham_tol,
                                     double oracle_tol, lchs_matrix** u_approx,
                                     lchs_matrix** u_oracle, lchs_solve_stats* stats) {
    LCHS_REQUIRE(p && g && tg, "solve_inhomogeneous: bad arguments");
    return guarded([&] {
        SolveReport rep = solve_inhomogeneous(p->p, g->grid, tg->tg, ham_tol, oracle_tol);
        if (u_approx) *u_approx = wrap(Matrix(rep.approx_u));
        if (u_oracle) *u_oracle = wrap(Matrix(rep.oracle_u));
        fill_stats(rep, stats);
    });
}

lchs_status lchs_truncation_sweep(const lchs_matrix* l, const lchs_matrix* h,
                                  const lchs_kernel* const* specs, int64_t nspecs,
                                  const double* k_values, int64_t nk, double tol,
                                  double* errors_out) {
    LCHS_REQUIRE(l && h && specs && nspecs > 0 && k_values && nk > 0 && errors_out,
                 "truncation_sweep: bad arguments");
    return guarded([&] {
        std::vector<KernelSpec> spec_list;
        spec_list.reserve(nspecs);
        for (int64_t i = 0; i < nspecs; ++i) spec_list.push_back(specs[i]->spec);
        std::vector<double> ks(k_values, k_values + nk);
        std::vector<SweepRow> rows = truncation_error_sweep(l->m, h->m, spec_list, ks, tol);
        for (std::size_t i = 0; i < rows.size(); ++i) errors_out[i] = rows[i].error;
    });
}

lchs_status lchs_smallest_sufficient_k(const lchs_matrix* l, const lchs_matrix* h,
                                       const lchs_kernel* spec, double target, double k_step,
                                       double k_cap, double* out) {
    LCHS_REQUIRE(l && h && spec && out, "smallest_sufficient_k: bad arguments");
    return guarded([&] {
        *out = smallest_sufficient_k(l->m, h->m, spec->spec, target, k_step, k_cap);
    });
}

/* ---- thermal states ---- */

lchs_status lchs_partition_function(const lchs_matrix* l, double gamma, double* out) {
    LCHS_REQUIRE(l && out, "partition_function: bad arguments");
    return guarded([&] { *out = partition_function(l->m, gamma); });
}

lchs_status lchs_gibbs_prepare(const lchs_matrix* l, double gamma, const lchs_grid* g,
                               double ham_tol, lchs_matrix** density, lchs_matrix** purified,
                               lchs_gibbs_stats* stats) {
    LCHS_REQUIRE(l && g, "gibbs_prepare: bad arguments");
    return guarded([&] {
        GibbsResult res = prepare_purified_gibbs(l->m, gamma, g->grid, ham_tol);
        if (density) *density = wrap(std::move(res.density));
        if (purified) *purified = wrap(Matrix(res.purified_state));
        if (stats) {
            stats->partition_z = res.partition_z;
            stats->trace_distance = res.trace_distance_to_exact;
            stats->purified_error = res.purified_error;
            stats->unnormalized_norm = res.unnormalized_norm;
            stats->post_selection_ratio = res.post_selection_ratio;
        }
    });
}

/* ---- hybrid estimator ---- */

lchs_status lchs_plan_build(const lchs_grid* g, lchs_plan** out) {
    LCHS_REQUIRE(g && out, "plan_build: bad arguments");
    return guarded([&] { *out = new lchs_plan{build_plan(g->grid)}; });
}

void lchs_plan_free(lchs_plan* plan) { delete plan; }

lchs_status lchs_plan_masses(const lchs_plan* plan, double* re_mass, double* im_mass) {
    LCHS_REQUIRE(plan && re_mass && im_mass, "plan_masses: bad arguments");
    *re_mass = plan->plan.re_mass;
    *im_mass = plan->plan.im_mass;
    return LCHS_OK;
}

lchs_status lchs_sample_count(double eps, double delta, double obs_norm, int64_t* out) {
    LCHS_REQUIRE(out, "sample_count: bad arguments");
    return guarded([&] { *out = sample_count(eps, delta, obs_norm); });
}

lchs_status lchs_estimate_observable(const lchs_problem* p, const lchs_grid* g,
                                     const lchs_matrix* obs, int64_t n_samples, uint64_t seed,
                                     double ham_tol, double noise_width, lchs_estimate* out) {
    LCHS_REQUIRE(p && g && obs && out && n_samples >= 0, "estimate_observable: bad arguments");
    return guarded([&] {
        PairContext ctx = build_pair_context(p->p, g->grid, obs->m, ham_tol);
        if (n_samples == 0) {
            SamplingPlan plan = build_plan(g->grid);
            Complex v = expectation_from_plan(plan, g->grid, ctx);
            out->value_re = v.real();
            out->value_im = v.imag();
            out->stderr_value = 0.0;
            out->n_samples = 0;
            out->seed = seed;
        } else {
            SamplingPlan plan = build_plan(g->grid);
            ObservableEstimate est = estimate_observable(plan, ctx, n_samples, seed,
                                                         noise_width);
            out->value_re = est.value.real();
            out->value_im = est.value.imag();
            out->stderr_value = est.stderr_value;
            out->n_samples = est.n_samples;
            out->seed = est.seed;
        }
    });
}

lchs_status lchs_expectation_direct(const lchs_problem* p, const lchs_grid* g,
                                    const lchs_matrix* obs, double ham_tol, double* re_out,
                                    double* im_out) {
    LCHS_REQUIRE(p && g && obs && re_out && im_out, "expectation_direct: bad arguments");
    return guarded([&] {
        PairContext ctx = build_pair_context(p->p, g->grid, obs->m, ham_tol);
        Complex v = expectation_direct(g->grid, ctx);
        *re_out = v.real();
        *im_out = v.imag();
    });
}

/* ---- resource estimates ---- */

namespace {
CostInput convert(const lchs_cost_input* in) {
    CostInput c;
    c.alpha_a = in->alpha_a;
    c.alpha_l = in->alpha_l;
    c.alpha_h = in->alpha_h;
    c.horizon_t = in->horizon_t;
    c.eps = in->eps;
    c.beta = in->beta;
    c.norm_u0 = in->norm_u0;
    c.norm_ut = in->norm_ut;
    c.b_l1 = in->b_l1;
    c.lambda_cap = in->lambda_cap;
    c.xi_cap = in->xi_cap;
    c.n_dim = in->n_dim;
    c.partition_z = in->partition_z;
    c.gamma = in->gamma;
    return c;
}
}  // namespace

lchs_status lchs_cost_homogeneous(const lchs_cost_input* in, lchs_resource_estimate* out) {
    LCHS_REQUIRE(in && out, "cost_homogeneous: bad arguments");
    return guarded([&] { fill_estimate(homogeneous_cost(convert(in)), out); });
}

lchs_status lchs_cost_inhomogeneous(const lchs_cost_input* in, lchs_resource_estimate* out) {
    LCHS_REQUIRE(in && out, "cost_inhomogeneous: bad arguments");
    return guarded([&] { fill_estimate(inhomogeneous_cost(convert(in)), out); });
}

lchs_status lchs_cost_time_independent(const lchs_cost_input* in,
                                       lchs_resource_estimate* out) {
    LCHS_REQUIRE(in && out, "cost_time_independent: bad arguments");
    return guarded([&] { fill_estimate(time_independent_cost(convert(in)), out); });
}

lchs_status lchs_cost_gibbs(const lchs_cost_input* in, lchs_resource_estimate* out) {
    LCHS_REQUIRE(in && out, "cost_gibbs: bad arguments");
    return guarded([&] { fill_estimate(gibbs_cost(convert(in)), out); });
}

lchs_status lchs_comparison_table_csv(const lchs_cost_input* in, double kappa_v,
                                      const char* path) {
    LCHS_REQUIRE(in && path, "comparison_table_csv: bad arguments");
    return guarded([&] {
        CostInput c = convert(in);
        std::vector<ComparisonRow> rows = comparison_table(c, kappa_v);
        CsvWriter csv(path);
        csv.meta("tool_version", LCHS_VERSION_STRING);
        csv.meta("alpha_a", c.alpha_a);
        csv.meta("horizon_t", c.horizon_t);
        csv.meta("eps", c.eps);
        csv.meta("beta", c.beta);
        csv.meta("norm_u0", c.norm_u0);
        csv.meta("norm_ut", c.norm_ut);
        csv.meta("kappa_v", kappa_v);
        csv.header({"method", "available", "matrix_queries", "state_prep_queries", "note"});
        for (const ComparisonRow& row : rows) {
            csv.row({row.method, row.available ? "1" : "0",
                     format_double(row.matrix_queries),
                     format_double(row.state_prep_queries), row.note});
        }
        csv.close();
    });
}

/* ---- invariant suite ---- */

lchs_status lchs_selftest(int verbose, int64_t* failures) {
    LCHS_REQUIRE(failures, "selftest: bad arguments");
    return guarded([&] {
        *failures = run_selftest([&](const std::string& line) {
            if (verbose) std::cout << line << "\n";
        });
    });
}

}  // extern "C"
