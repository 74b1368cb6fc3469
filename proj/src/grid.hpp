// Explicit parameter selection for the discrete LCHS sum and construction of
// the composite-Gauss grid {k_j, c_j} over [-K, K].
#pragma once

#include <vector>

#include "kernels.hpp"
#include "types.hpp"

namespace lchs {

// Explicit truncation-error bound for the beta family at half-width K,
// (2^{B+1} B! / (C_beta cos(beta pi/2)^B)) (1/K) exp(-K^beta cos(beta pi/2)/2)
// with B = ceil(1/beta).
double truncation_bound(double beta, double k_trunc);

enum class TruncationMode {
    bound,      // bisect the explicit bound (conservative)
    empirical,  // bisect the numerically integrated modulus tail
};

// Smallest K (to 3 significant digits, rounded up) with bound <= eps; K >= 1.
double select_truncation_k(double beta, double eps,
                           TruncationMode mode = TruncationMode::bound);

struct QuadratureParams {
    double step_h1;
    int order_q;
};

// h1 = 1/(e T maxL) and Q = ceil(log(8K/(3 C_beta eps)) / log 4). A zero
// T*maxL degenerates to a single panel; Q is capped at 64 by halving h1.
QuadratureParams select_quadrature_params(double horizon_t, double max_norm_l, double trunc_k,
                                          double beta, double eps);

struct QuadratureGrid {
    KernelSpec spec;
    double trunc_k;            // stretched to an integer panel count
    double step_h1;
    int order_q;
    std::vector<double> nodes;     // strictly increasing
    std::vector<Complex> coeffs;   // (h1/2) w_q g(k)
    std::size_t total_m = 0;       // 2 * panels * Q

    std::size_t panels_per_side() const { return total_m / (2 * static_cast<std::size_t>(order_q)); }
};

// Panels [m h1, (m+1) h1] for m = -P..P-1 with P = ceil(K/h1); K stretches to
// P h1 so coverage never shrinks. Nodes are affinely mapped Gauss points,
// coefficients (h1/2) w_q g(k_{q,m}).
QuadratureGrid build_grid(const KernelSpec& spec, double trunc_k, double step_h1, int order_q);

// sum_j |c_j|, compensated.
double coefficient_one_norm(const QuadratureGrid& grid);

// sum_j c_j, compensated. Approximates the normalization integral over [-K,K].
Complex coefficient_sum(const QuadratureGrid& grid);

}  // namespace lchs
