// Assembly of the discrete LCHS approximations: homogeneous propagator,
// inhomogeneous double sum, time-grid construction, derivative-growth
// estimation, and the kernel-comparison sweep.
#pragma once

#include <string>
#include <vector>

#include "grid.hpp"
#include "propagator.hpp"

namespace lchs {

struct TimeGrid {
    double step_h2 = 0.0;
    int order_q2 = 0;
    std::vector<double> nodes;       // times in [0, T], ascending
    std::vector<double> coeffs;      // c' = w' ||b(s)||, nonnegative
    std::vector<Vector> directions;  // unit vectors b(s)/||b(s)||

    std::size_t total_m() const { return nodes.size(); }
    double coeff_sum() const;
};

struct SolveReport {
    Vector approx_u;
    Vector oracle_u;
    double abs_error = 0.0;    // ||approx - oracle||
    double state_error = 0.0;  // distance between normalized states
    std::size_t grid_m = 0;
    std::size_t grid_mprime = 0;
    double trunc_k = 0.0;
    double step_h1 = 0.0;
    int order_q = 0;
    double step_h2 = 0.0;
    int order_q2 = 0;
};

// eps / (10 sum|c_j|), the default Hamiltonian-simulation tolerance split.
double default_ham_tol(double eps, const QuadratureGrid& grid);

// sum_j c_j U(T, k_j), nodes evaluated independently (in parallel) and
// reduced in ascending node order with compensated accumulation.
// Requires L(t) PSD on the horizon.
Matrix approx_propagator(const OdeProblem& problem, const QuadratureGrid& grid, double ham_tol);

// Homogeneous solve: apply the approximate propagator to u0 and compare
// against the reference oracle at oracle_tol (<= 0 means use ham_tol).
SolveReport solve_homogeneous(const OdeProblem& problem, const QuadratureGrid& grid,
                              double ham_tol, double oracle_tol = 0.0);

// h2 = 1/(e K (Lambda+Xi)), Q2 = ceil(log(e T (Lambda+Xi)/eps)/log 4) + 1;
// nodes are mapped Gauss points per panel, coefficients w' ||b(s)||.
TimeGrid build_time_grid(const OdeProblem& problem, double trunc_k, double lambda_cap,
                         double xi_cap, double eps);

// Finite-difference estimates of sup_p ||A^(p)||^{1/(p+1)} and the same for
// b, times a 1.25 safety factor. p runs to p_max.
std::pair<double, double> estimate_lambda_xi(const OdeProblem& problem, int p_max);

// Full solve: homogeneous part plus the double sum over (k_j, s_j'). The
// unitaries U(T, s_j', k_j) for a fixed k_j are produced by one checkpointed
// integration pass (the composition U(T,0,k) U(s,0,k)^dag), at the same
// tolerance as the per-pair oracle.
SolveReport solve_inhomogeneous(const OdeProblem& problem, const QuadratureGrid& grid,
                                const TimeGrid& tg, double ham_tol, double oracle_tol = 0.0);

struct SweepRow {
    std::string spec;
    double trunc_k;
    double error;
};

// For constant unit-norm L, H (lambda_min(L) = 0): truncation error
// || int_{-K}^{K} g(k) e^{-i(kL+H)} dk - e^{-(L+iH)} || per spec and K.
std::vector<SweepRow> truncation_error_sweep(const Matrix& l, const Matrix& h,
                                             const std::vector<KernelSpec>& specs,
                                             const std::vector<double>& k_values, double tol);

// Smallest K (marched in k_step increments) whose truncation error falls at
// or below target. Throws NumericError if k_cap is reached first.
double smallest_sufficient_k(const Matrix& l, const Matrix& h, const KernelSpec& spec,
                             double target, double k_step, double k_cap);

}  // namespace lchs
