// Importance sampling over coefficient pairs for estimating u(T)* O u(T) in
// the homogeneous case, with exact classical inner products standing in for
// the Hadamard-test subroutine.
#pragma once

#include <cstdint>
#include <vector>

#include "grid.hpp"
#include "propagator.hpp"

namespace lchs {

struct SamplingPlan {
    std::size_t node_count = 0;   // M
    std::size_t pair_count = 0;   // M^2
    // probabilities proportional to |Re(conj(c_l) c_j)| resp. |Im(...)|,
    // stored as prefix sums for O(log) sampling; signs are +-1 per pair.
    // Pairs are enumerated in (l, j) lexicographic order.
    std::vector<double> re_prefix;
    std::vector<double> im_prefix;
    std::vector<signed char> re_signs;
    std::vector<signed char> im_signs;
    double re_mass = 0.0;  // sum |Re(conj(c_l) c_j)|
    double im_mass = 0.0;  // sum |Im(conj(c_l) c_j)|
};

struct ObservableEstimate {
    Complex value;
    double stderr_value = 0.0;
    std::int64_t n_samples = 0;
    std::uint64_t seed = 0;
};

// Precomputed per-node states: phi_j = U(T,k_j) u0 and obs * phi_j.
// The unitary cache behind every estimator call.
struct PairContext {
    std::vector<Vector> phi;      // U_j u0
    std::vector<Vector> obs_phi;  // O U_j u0
    Complex inner(std::size_t l, std::size_t j) const {
        return phi[l].dot(obs_phi[j]);  // Eigen dot conjugates the left factor
    }
};

SamplingPlan build_plan(const QuadratureGrid& grid);

// <u0| U_l^dag O U_j |u0>, exactly (floating point).
Complex exact_inner(const Vector& u0, const Matrix& obs, const Matrix& u_l, const Matrix& u_j);

PairContext build_pair_context(const OdeProblem& problem, const QuadratureGrid& grid,
                               const Matrix& obs, double ham_tol);

// Direct double sum  sum_{l,j} conj(c_l) c_j <u0|U_l^dag O U_j|u0>.
Complex expectation_direct(const QuadratureGrid& grid, const PairContext& ctx);

// Same quantity assembled from the plan's probability/sign decomposition;
// agrees with expectation_direct up to float reassociation.
Complex expectation_from_plan(const SamplingPlan& plan, const QuadratureGrid& grid,
                              const PairContext& ctx);

// Monte Carlo estimator: n pairs from the Re stream and n from the Im stream
// (independent streams derived from seed). An optional Gaussian noise width
// models shot noise on each inner product; 0 disables it (and is the
// faithful mode).
ObservableEstimate estimate_observable(const SamplingPlan& plan, const PairContext& ctx,
                                       std::int64_t n_samples, std::uint64_t seed,
                                       double noise_width = 0.0);

// ceil((||O||^2 / eps^2) ln(2/delta)), leading constant declared as 1.
std::int64_t sample_count(double eps, double delta, double obs_norm);

}  // namespace lchs
