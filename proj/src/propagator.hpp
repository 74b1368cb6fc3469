// Time-dependent problems and the brute-force propagator oracles every
// LCHS approximation is validated against.
#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "linalg.hpp"
#include "types.hpp"

namespace lchs {

// Deterministic evaluator t -> matrix. The fill form avoids per-call
// allocation in the integrator hot loops.
class TimeDependentMatrix {
public:
    using Fill = std::function<void(double, Matrix&)>;

    TimeDependentMatrix() = default;
    TimeDependentMatrix(Eigen::Index rows, Eigen::Index cols, Fill fill,
                        std::string smoothness = "smooth");

    static TimeDependentMatrix constant(const Matrix& m);

    Eigen::Index rows() const { return rows_; }
    Eigen::Index cols() const { return cols_; }
    const std::string& smoothness() const { return smoothness_; }
    bool valid() const { return static_cast<bool>(fill_); }

    void eval_into(double t, Matrix& out) const;
    Matrix eval(double t) const;

private:
    Eigen::Index rows_ = 0;
    Eigen::Index cols_ = 0;
    Fill fill_;
    std::string smoothness_;
};

struct OdeProblem {
    TimeDependentMatrix a;                 // coefficient matrix, dim x dim
    std::optional<TimeDependentMatrix> b;  // inhomogeneity, dim x 1
    Vector u0;
    double horizon_T = 0.0;

    Eigen::Index dim() const { return u0.size(); }
    bool homogeneous() const { return !b.has_value(); }

    // Throws PreconditionError naming the offending time and eigenvalue if
    // L(t) dips below -tol_psd on a uniform sample grid.
    void psd_check(double tol_psd = 1e-10, int samples = 257) const;

    // Dimension agreement of a(t), b(t), u0 at sampled times.
    void validate() const;
};

inline constexpr std::size_t kMaxOracleSteps = std::size_t(1) << 22;

// T-ordered exp(-int_{t0}^{t1} A) via a midpoint-sampled exponential product,
// steps doubled until two successive results differ by < tol in spectral
// norm. This is the oracle for all acceptance tests.
Matrix time_ordered_propagator(const TimeDependentMatrix& a, double t0, double t1, double tol);

// T-ordered exp(-i int_s^{t_end} (k L + H)) by the same step-doubling oracle.
// Each step is the exact exponential of the Hermitian midpoint sample, so the
// result is unitary to rounding.
Matrix unitary_evolution(const TimeDependentMatrix& a, double k, double s, double t_end,
                         double tol);

// u(T) from the variation-of-constants representation: homogeneous part via
// the propagator oracle, inhomogeneous integral via adaptive composite Gauss
// quadrature refined until the change is < tol.
Vector reference_solution(const OdeProblem& p, double tol);

namespace detail {

// Fixed-step midpoint exponential product, exposed for self-consistency tests.
Matrix propagator_fixed_steps(const TimeDependentMatrix& a, double t0, double t1,
                              std::size_t steps);
Matrix unitary_fixed_steps(const TimeDependentMatrix& a, double k, double s, double t_end,
                           std::size_t steps);

// One step-doubled pass that yields U(T,0,k) together with
// w = sum_j cw_j * U(s_j,0,k)^dag * dir_j for checkpoint times s_j.
// Shares the integration across all checkpoints of a fixed k.
struct CheckpointedUnitary {
    Matrix u_final;
    Vector aggregated;  // w above; zero-size when no checkpoints
};
CheckpointedUnitary unitary_with_checkpoints(const TimeDependentMatrix& a, double k, double T,
                                             const std::vector<double>& times,
                                             const std::vector<double>& weights,
                                             const std::vector<Vector>& directions, double tol);

double max_norm_on_grid(const TimeDependentMatrix& m, double t0, double t1, int samples = 257);

}  // namespace detail

}  // namespace lchs
