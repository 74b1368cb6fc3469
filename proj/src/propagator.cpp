#include "propagator.hpp"

#include <algorithm>
#include <cmath>

#include "errors.hpp"
#include "gauss.hpp"
#include "util.hpp"

namespace lchs {

TimeDependentMatrix::TimeDependentMatrix(Eigen::Index rows, Eigen::Index cols, Fill fill,
                                         std::string smoothness)
    : rows_(rows), cols_(cols), fill_(std::move(fill)), smoothness_(std::move(smoothness)) {}

TimeDependentMatrix TimeDependentMatrix::constant(const Matrix& m) {
    Matrix copy = m;
    return TimeDependentMatrix(
        m.rows(), m.cols(), [copy](double, Matrix& out) { out = copy; }, "constant");
}

void TimeDependentMatrix::eval_into(double t, Matrix& out) const {
    if (!fill_) throw PreconditionError("TimeDependentMatrix: empty evaluator");
    if (out.rows() != rows_ || out.cols() != cols_) out.resize(rows_, cols_);
    fill_(t, out);
}

Matrix TimeDependentMatrix::eval(double t) const {
    Matrix out(rows_, cols_);
    eval_into(t, out);
    return out;
}

void OdeProblem::validate() const {
    if (!a.valid()) throw PreconditionError("OdeProblem: missing coefficient evaluator");
    if (a.rows() != a.cols()) throw DimensionError("OdeProblem: a(t) must be square");
    if (a.rows() != u0.size()) {
        throw DimensionError("OdeProblem: dim(a) != dim(u0)");
    }
    if (b && (b->rows() != u0.size() || b->cols() != 1)) {
        throw DimensionError("OdeProblem: b(t) must be a column vector matching u0");
    }
    if (horizon_T < 0.0) throw DomainError("OdeProblem: horizon must be nonnegative");
}

void OdeProblem::psd_check(double tol_psd, int samples) const {
    validate();
    Matrix at(a.rows(), a.cols());
    for (int i = 0; i < samples; ++i) {
        double t = samples == 1 ? 0.0 : horizon_T * i / (samples - 1);
        a.eval_into(t, at);
        HermitianPair pair = cartesian_split(at);
        double lam = min_eigenvalue_hermitian(pair.l);
        if (lam < -tol_psd) {
            throw PreconditionError("psd_check: L(t) has eigenvalue " + std::to_string(lam) +
                                    " < -tol at t = " + std::to_string(t));
        }
    }
}

namespace detail {

double max_norm_on_grid(const TimeDependentMatrix& m, double t0, double t1, int samples) {
    Matrix at(m.rows(), m.cols());
    double best = 0.0;
    for (int i = 0; i < samples; ++i) {
        double t = samples == 1 ? t0 : t0 + (t1 - t0) * i / (samples - 1);
        m.eval_into(t, at);
        best = std::max(best, spectral_norm(at));
    }
    return best;
}

Matrix propagator_fixed_steps(const TimeDependentMatrix& a, double t0, double t1,
                              std::size_t steps) {
    const Eigen::Index n = a.rows();
    Matrix acc = Matrix::Identity(n, n);
    Matrix at(n, n);
    const double h = (t1 - t0) / static_cast<double>(steps);
    for (std::size_t i = 0; i < steps; ++i) {
        double mid = t0 + (static_cast<double>(i) + 0.5) * h;
        a.eval_into(mid, at);
        acc = expm((-h) * at) * acc;
    }
    return acc;
}

Matrix unitary_fixed_steps(const TimeDependentMatrix& a, double k, double s, double t_end,
                           std::size_t steps) {
    const Eigen::Index n = a.rows();
    Matrix acc = Matrix::Identity(n, n);
    Matrix at(n, n);
    const double h = (t_end - s) / static_cast<double>(steps);
    for (std::size_t i = 0; i < steps; ++i) {
        double mid = s + (static_cast<double>(i) + 0.5) * h;
        a.eval_into(mid, at);
        HermitianPair pair = cartesian_split(at);
        Matrix gen = k * pair.l + pair.h;  // Hermitian
        acc = expm_hermitian(gen, Complex(0.0, -h)) * acc;
    }
    return acc;
}

namespace {

std::size_t initial_steps(double span, double gen_norm) {
    double guess = std::ceil(span * std::max(gen_norm, 1.0) / 2.0);
    return static_cast<std::size_t>(std::clamp(guess, 8.0, 4096.0));
}

}  // namespace

CheckpointedUnitary unitary_with_checkpoints(const TimeDependentMatrix& a, double k, double T,
                                             const std::vector<double>& times,
                                             const std::vector<double>& weights,
                                             const std::vector<Vector>& directions, double tol) {
    const Eigen::Index n = a.rows();
    const std::size_t nc = times.size();

    // segment boundaries: 0, checkpoint times (ascending), T
    std::vector<double> bounds;
    bounds.reserve(nc + 2);
    bounds.push_back(0.0);
    for (double t : times) bounds.push_back(t);
    bounds.push_back(T);
    for (std::size_t i = 1; i < bounds.size(); ++i) {
        if (bounds[i] < bounds[i - 1]) {
            throw PreconditionError("unitary_with_checkpoints: times must be ascending in [0,T]");
        }
    }

    double gen_norm = std::abs(k) * max_norm_on_grid(a, 0.0, T, 33) + 1.0;
    std::size_t steps = initial_steps(T, gen_norm);

    Matrix at(n, n);
    auto run = [&](std::size_t total_steps, Matrix& u_final, Vector& w) {
        Matrix acc = Matrix::Identity(n, n);
        w = Vector::Zero(n);
        double h_target = T / static_cast<double>(total_steps);
        for (std::size_t seg = 0; seg + 1 < bounds.size(); ++seg) {
            double lo = bounds[seg];
            double hi = bounds[seg + 1];
            if (hi > lo) {
                auto seg_steps = static_cast<std::size_t>(
                    std::max(1.0, std::ceil((hi - lo) / h_target - 1e-12)));
                double h = (hi - lo) / static_cast<double>(seg_steps);
                for (std::size_t i = 0; i < seg_steps; ++i) {
                    double mid = lo + (static_cast<double>(i) + 0.5) * h;
                    a.eval_into(mid, at);
                    HermitianPair pair = cartesian_split(at);
                    Matrix gen = k * pair.l + pair.h;
                    acc = expm_hermitian(gen, Complex(0.0, -h)) * acc;
                }
            }
            if (seg + 1 < bounds.size() - 1) {
                // acc now equals U(times[seg], 0, k)
                std::size_t idx = seg;
                w.noalias() += weights[idx] * (acc.adjoint() * directions[idx]);
            }
        }
        u_final = acc;
    };

    Matrix u_prev;
    Vector w_prev;
    run(steps, u_prev, w_prev);
    double delta = 0.0;
    while (true) {
        std::size_t next = steps * 2;
        if (next > kMaxOracleSteps) {
            throw ConvergenceError("unitary_with_checkpoints: step cap exceeded", delta);
        }
        Matrix u_next;
        Vector w_next;
        run(next, u_next, w_next);
        delta = spectral_norm(u_next - u_prev);
        if (nc > 0) delta += (w_next - w_prev).norm();
        if (delta < tol) {
            CheckpointedUnitary out;
            out.u_final = std::move(u_next);
            out.aggregated = std::move(w_next);
            return out;
        }
        u_prev = std::move(u_next);
        w_prev = std::move(w_next);
        steps = next;
    }
}

namespace {

// Shared step-doubling driver.
template <typename RunFn>
Matrix double_until(const RunFn& run, double span, double gen_norm, double tol,
                    const char* what) {
    std::size_t steps = initial_steps(span, gen_norm);
    Matrix prev = run(steps);
    double delta = 0.0;
    while (true) {
        std::size_t next = steps * 2;
        if (next > kMaxOracleSteps) {
            throw ConvergenceError(std::string(what) + ": step cap exceeded", delta);
        }
        Matrix cur = run(next);
        delta = spectral_norm(cur - prev);
        if (delta < tol) return cur;
        prev = std::move(cur);
        steps = next;
    }
}

}  // namespace

}  // namespace detail

Matrix time_ordered_propagator(const TimeDependentMatrix& a, double t0, double t1, double tol) {
    if (t0 > t1) throw PreconditionError("time_ordered_propagator: t0 > t1");
    if (!(tol > 0.0)) throw DomainError("time_ordered_propagator: tol must be positive");
    if (t1 == t0) return Matrix::Identity(a.rows(), a.rows());
    double gen_norm = detail::max_norm_on_grid(a, t0, t1, 33);
    return detail::double_until(
        [&](std::size_t n) { return detail::propagator_fixed_steps(a, t0, t1, n); }, t1 - t0,
        gen_norm, tol, "time_ordered_propagator");
}

Matrix unitary_evolution(const TimeDependentMatrix& a, double k, double s, double t_end,
                         double tol) {
    if (s > t_end) throw PreconditionError("unitary_evolution: s > t_end");
    if (!(tol > 0.0)) throw DomainError("unitary_evolution: tol must be positive");
    if (t_end == s) return Matrix::Identity(a.rows(), a.rows());
    double gen_norm = std::abs(k) * detail::max_norm_on_grid(a, s, t_end, 33) + 1.0;
    return detail::double_until(
        [&](std::size_t n) { return detail::unitary_fixed_steps(a, k, s, t_end, n); }, t_end - s,
        gen_norm, tol, "unitary_evolution");
}

Vector reference_solution(const OdeProblem& p, double tol) {
    p.validate();
    Vector u = time_ordered_propagator(p.a, 0.0, p.horizon_T, tol) * p.u0;
    if (!p.b) return u;

    // inhomogeneous integral by panel-doubling composite Gauss over s,
    // with a fresh propagator oracle call at every node
    const GaussLegendreRule rule = gauss_legendre(8);
    Matrix bt(p.dim(), 1);
    auto integral = [&](int panels) {
        Eigen::Index n = p.dim();
        MatrixAccumulator acc(n, 1);
        double h = p.horizon_T / panels;
        for (int m = 0; m < panels; ++m) {
            double lo = m * h;
            for (int q = 0; q < rule.order_q; ++q) {
                double s = lo + 0.5 * h * (rule.nodes[q] + 1.0);
                double w = 0.5 * h * rule.weights[q];
                p.b->eval_into(s, bt);
                Vector term = time_ordered_propagator(p.a, s, p.horizon_T, tol) * bt.col(0);
                for (Eigen::Index i = 0; i < n; ++i) acc.add_entry(i, 0, w * term(i));
            }
        }
        return Matrix(acc.value());
    };

    if (p.horizon_T == 0.0) return u;
    int panels = 2;
    Matrix prev = integral(panels);
    while (true) {
        panels *= 2;
        if (panels > 4096) {
            throw ConvergenceError("reference_solution: time quadrature did not settle",
                                   (prev).norm());
        }
        Matrix cur = integral(panels);
        double delta = (cur - prev).norm();
        if (delta < tol) {
            u += cur.col(0);
            return u;
        }
        prev = std::move(cur);
    }
}

}  // namespace lchs
