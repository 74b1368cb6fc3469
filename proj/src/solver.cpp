#include "solver.hpp"

#include <algorithm>
#include <cmath>

#include "errors.hpp"
#include "gauss.hpp"
#include "util.hpp"

namespace lchs {

double TimeGrid::coeff_sum() const {
    CompensatedSum<double> s;
    for (double c : coeffs) s.add(c);
    return s.value();
}

double default_ham_tol(double eps, const QuadratureGrid& grid) {
    double one_norm = coefficient_one_norm(grid);
    return eps / (10.0 * std::max(one_norm, 1e-300));
}

namespace {

constexpr std::size_t kChunk = 2048;

// Evaluate fn(j) for every node of the grid in parallel chunks and fold the
// results in ascending j with the supplied accumulator.
template <typename Value, typename Eval, typename Fold>
void chunked_ordered_reduce(std::size_t m, const Eval& eval, const Fold& fold) {
    std::vector<Value> slots;
    for (std::size_t base = 0; base < m; base += kChunk) {
        std::size_t count = std::min(kChunk, m - base);
        slots.assign(count, Value{});
        parallel_for(count, [&](std::size_t i) { slots[i] = eval(base + i); });
        for (std::size_t i = 0; i < count; ++i) fold(base + i, slots[i]);
    }
}

}  // namespace

Matrix approx_propagator(const OdeProblem& problem, const QuadratureGrid& grid, double ham_tol) {
    problem.psd_check();
    const Eigen::Index n = problem.dim();
    MatrixAccumulator acc(n, n);
    chunked_ordered_reduce<Matrix>(
        grid.total_m,
        [&](std::size_t j) {
            return unitary_evolution(problem.a, grid.nodes[j], 0.0, problem.horizon_T, ham_tol);
        },
        [&](std::size_t j, const Matrix& u) { acc.add(u, grid.coeffs[j]); });
    return acc.value();
}

namespace {

Vector weighted_unitary_apply(const OdeProblem& problem, const QuadratureGrid& grid,
                              double ham_tol, const Vector& rhs) {
    const Eigen::Index n = problem.dim();
    MatrixAccumulator acc(n, 1);
    chunked_ordered_reduce<Vector>(
        grid.total_m,
        [&](std::size_t j) {
            Matrix u =
                unitary_evolution(problem.a, grid.nodes[j], 0.0, problem.horizon_T, ham_tol);
            return Vector(u * rhs);
        },
        [&](std::size_t j, const Vector& v) {
            for (Eigen::Index i = 0; i < n; ++i) acc.add_entry(i, 0, grid.coeffs[j] * v(i));
        });
    return acc.value().col(0);
}

void fill_report_params(SolveReport& report, const QuadratureGrid& grid, const TimeGrid* tg) {
    report.grid_m = grid.total_m;
    report.trunc_k = grid.trunc_k;
    report.step_h1 = grid.step_h1;
    report.order_q = grid.order_q;
    if (tg) {
        report.grid_mprime = tg->total_m();
        report.step_h2 = tg->step_h2;
        report.order_q2 = tg->order_q2;
    }
}

void finish_report(SolveReport& report) {
    report.abs_error = (report.approx_u - report.oracle_u).norm();
    Vector a = report.approx_u;
    Vector o = report.oracle_u;
    if (a.norm() > 0.0) a /= a.norm();
    if (o.norm() > 0.0) o /= o.norm();
    report.state_error = (a - o).norm();
}

}  // namespace

SolveReport solve_homogeneous(const OdeProblem& problem, const QuadratureGrid& grid,
                              double ham_tol, double oracle_tol) {
    if (!problem.homogeneous()) {
        throw PreconditionError("solve_homogeneous: problem has an inhomogeneous term");
    }
    problem.psd_check();
    if (oracle_tol <= 0.0) oracle_tol = ham_tol;

    SolveReport report;
    report.approx_u = weighted_unitary_apply(problem, grid, ham_tol, problem.u0);
    report.oracle_u = reference_solution(problem, oracle_tol);
    fill_report_params(report, grid, nullptr);
    finish_report(report);
    return report;
}

TimeGrid build_time_grid(const OdeProblem& problem, double trunc_k, double lambda_cap,
                         double xi_cap, double eps) {
    if (!problem.b) throw PreconditionError("build_time_grid: problem has no b(t)");
    if (!(eps > 0.0)) throw DomainError("build_time_grid: eps must be positive");
    if (!(trunc_k > 0.0)) throw DomainError("build_time_grid: K must be positive");
    const double T = problem.horizon_T;
    const double growth = lambda_cap + xi_cap;

    TimeGrid tg;
    if (T == 0.0) return tg;

    std::size_t panels;
    if (growth <= 0.0) {
        tg.step_h2 = T;  // degenerate: one panel
        panels = 1;
    } else {
        double h2 = 1.0 / (M_E * trunc_k * growth);
        panels = static_cast<std::size_t>(std::max(1.0, std::ceil(T / h2 - 1e-12)));
        tg.step_h2 = T / static_cast<double>(panels);
    }
    double arg = M_E * T * std::max(growth, 1e-300) / eps;
    tg.order_q2 = arg > 1.0
                      ? static_cast<int>(std::ceil(std::log(arg) / std::log(4.0))) + 1
                      : 1;

    const GaussLegendreRule rule = gauss_legendre(tg.order_q2);
    Matrix bt(problem.dim(), 1);
    tg.nodes.reserve(panels * rule.order_q);
    for (std::size_t m = 0; m < panels; ++m) {
        double lo = static_cast<double>(m) * tg.step_h2;
        for (int q = 0; q < rule.order_q; ++q) {
            double s = lo + 0.5 * tg.step_h2 * (rule.nodes[q] + 1.0);
            double w = 0.5 * tg.step_h2 * rule.weights[q];
            problem.b->eval_into(s, bt);
            double norm = bt.col(0).norm();
            tg.nodes.push_back(s);
            tg.coeffs.push_back(w * norm);
            if (norm > 0.0) {
                tg.directions.push_back(bt.col(0) / norm);
            } else {
                tg.directions.push_back(Vector::Zero(problem.dim()));
            }
        }
    }
    return tg;
}

std::pair<double, double> estimate_lambda_xi(const OdeProblem& problem, int p_max) {
    if (p_max < 0) throw DomainError("estimate_lambda_xi: p_max must be >= 0");
    const double T = problem.horizon_T;
    const double span = T > 0.0 ? T : 1.0;

    auto sup_root = [&](const TimeDependentMatrix& m) {
        double best = 0.0;
        Matrix scratch(m.rows(), m.cols());
        Matrix stencil(m.rows(), m.cols());
        for (int p = 0; p <= p_max; ++p) {
            // central difference step sized against rounding amplification
            double delta = span * std::max(std::pow(2.2e-16, 1.0 / (p + 2)), 1.0 / 512.0);
            double half = 0.5 * p * delta;
            const int samples = 17;
            double value = 0.0;
            for (int i = 0; i < samples; ++i) {
                double t = T == 0.0 ? 0.0 : half + (T - 2.0 * half) * i / (samples - 1);
                if (T > 0.0 && (t < half || t > T - half + 1e-15)) continue;
                stencil.setZero(m.rows(), m.cols());
                for (int j = 0; j <= p; ++j) {
                    double coeff = std::pow(-1.0, j) * std::round(std::tgamma(p + 1.0) /
                                                                  (std::tgamma(j + 1.0) *
                                                                   std::tgamma(p - j + 1.0)));
                    m.eval_into(t + (0.5 * p - j) * delta, scratch);
                    stencil += coeff * scratch;
                }
                if (p > 0) stencil /= std::pow(delta, p);
                if (!stencil.allFinite()) {
                    throw NumericError("estimate_lambda_xi: non-finite difference quotient");
                }
                value = std::max(value, spectral_norm(stencil));
            }
            best = std::max(best, std::pow(value, 1.0 / (p + 1)));
        }
        return 1.25 * best;  // declared safety factor over the finite p scan
    };

    double lambda = sup_root(problem.a);
    double xi = problem.b ? sup_root(*problem.b) : 0.0;
    return {lambda, xi};
}

SolveReport solve_inhomogeneous(const OdeProblem& problem, const QuadratureGrid& grid,
                                const TimeGrid& tg, double ham_tol, double oracle_tol) {
    if (!problem.b) throw PreconditionError("solve_inhomogeneous: problem has no b(t)");
    problem.psd_check();
    if (oracle_tol <= 0.0) oracle_tol = ham_tol;
    const Eigen::Index n = problem.dim();

    MatrixAccumulator acc(n, 1);
    chunked_ordered_reduce<Vector>(
        grid.total_m,
        [&](std::size_t j) {
            detail::CheckpointedUnitary cp = detail::unitary_with_checkpoints(
                problem.a, grid.nodes[j], problem.horizon_T, tg.nodes, tg.coeffs, tg.directions,
                ham_tol);
            return Vector(cp.u_final * (problem.u0 + cp.aggregated));
        },
        [&](std::size_t j, const Vector& v) {
            for (Eigen::Index i = 0; i < n; ++i) acc.add_entry(i, 0, grid.coeffs[j] * v(i));
        });

    SolveReport report;
    report.approx_u = acc.value().col(0);
    report.oracle_u = reference_solution(problem, oracle_tol);
    fill_report_params(report, grid, &tg);
    finish_report(report);
    return report;
}

namespace {

void check_sweep_inputs(const Matrix& l, const Matrix& h) {
    if (l.rows() != l.cols() || h.rows() != h.cols() || l.rows() != h.rows()) {
        throw DimensionError("truncation sweep: L and H must be square and same size");
    }
    if (!is_hermitian(l, 1e-10) || !is_hermitian(h, 1e-10)) {
        throw PreconditionError("truncation sweep: L and H must be Hermitian");
    }
    if (std::abs(spectral_norm(l) - 1.0) > 1e-8 || std::abs(spectral_norm(h) - 1.0) > 1e-8) {
        throw PreconditionError("truncation sweep: L and H must have unit spectral norm");
    }
    if (std::abs(min_eigenvalue_hermitian(l)) > 1e-8) {
        throw PreconditionError("truncation sweep: lambda_min(L) must be 0");
    }
}

// Incremental accumulator for int_{-K}^{K} g(k) e^{-i(kL+H)} dk, marched
// outward in K increments.
class TruncationMarch {
public:
    TruncationMarch(const Matrix& l, const Matrix& h, const KernelSpec& spec, double tol)
        : l_(l), h_(h), spec_(spec), tol_(tol), acc_(l.rows(), l.cols()),
          exact_(expm(-(l + Complex(0.0, 1.0) * h))) {}

    // extend coverage from current K to k_next (both signs)
    void extend(double k_next) {
        double lo = k_;
        if (!(k_next > lo)) throw DomainError("truncation march: K values must increase");
        AdaptiveOptions opts;
        opts.order_q = 16;
        opts.initial_panels_per_segment =
            std::max(2, static_cast<int>(std::ceil((k_next - lo) / 0.5)));
        auto eval = [&](double k, Matrix& out) {
            out = g_eval(spec_, k) * expm_hermitian(k * l_ + h_, Complex(0.0, -1.0));
        };
        Matrix inc = integrate_adaptive_matrix(eval, l_.rows(), l_.cols(), {lo, k_next},
                                               tol_ / 10.0, opts);
        Matrix mirror = integrate_adaptive_matrix(eval, l_.rows(), l_.cols(), {-k_next, -lo},
                                                  tol_ / 10.0, opts);
        acc_.add(inc, 1.0);
        acc_.add(mirror, 1.0);
        k_ = k_next;
    }

    double error() const { return spectral_norm(acc_.value() - exact_); }
    double coverage() const { return k_; }

private:
    const Matrix& l_;
    const Matrix& h_;
    KernelSpec spec_;
    double tol_;
    double k_ = 0.0;
    MatrixAccumulator acc_;
    Matrix exact_;
};

}  // namespace

std::vector<SweepRow> truncation_error_sweep(const Matrix& l, const Matrix& h,
                                             const std::vector<KernelSpec>& specs,
                                             const std::vector<double>& k_values, double tol) {
    check_sweep_inputs(l, h);
    std::vector<double> ks = k_values;
    std::sort(ks.begin(), ks.end());
    std::vector<SweepRow> rows;
    rows.reserve(specs.size() * ks.size());
    for (const KernelSpec& spec : specs) {
        TruncationMarch march(l, h, spec, tol);
        for (double k : ks) {
            march.extend(k);
            rows.push_back({spec.label(), k, march.error()});
        }
    }
    return rows;
}

double smallest_sufficient_k(const Matrix& l, const Matrix& h, const KernelSpec& spec,
                             double target, double k_step, double k_cap) {
    check_sweep_inputs(l, h);
    if (!(target > 0.0) || !(k_step > 0.0)) {
        throw DomainError("smallest_sufficient_k: target and k_step must be positive");
    }
    TruncationMarch march(l, h, spec, target);
    while (march.coverage() < k_cap) {
        march.extend(march.coverage() + k_step);
        if (march.error() <= target) return march.coverage();
    }
    throw NumericError("smallest_sufficient_k: cap " + std::to_string(k_cap) +
                       " reached before error " + std::to_string(target));
}

}  // namespace lchs
