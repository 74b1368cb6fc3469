// Thermal-state preparation through the discrete LCHS approximation of
// exp(-gamma L / 2) applied to the maximally entangled state.
#pragma once

#include "grid.hpp"
#include "types.hpp"

namespace lchs {

struct GibbsResult {
    Vector purified_state;           // length N^2, normalized
    Matrix density;                  // N x N, Hermitian PSD, unit trace
    double partition_z = 0.0;        // Tr exp(-gamma L)
    double trace_distance_to_exact = 0.0;
    double purified_error = 0.0;     // 2-norm gap to the exact purification
    double unnormalized_norm = 0.0;  // should be sqrt(Z/N) up to grid error
    double post_selection_ratio = 0.0;  // ||v||^2 / (sum|c_j|)^2
};

// Tr exp(-gamma l) for Hermitian l, via eigendecomposition.
double partition_function(const Matrix& l, double gamma);

// Applies sum_j c_j exp(-i k_j (gamma/2) L) to the second register of the
// maximally entangled state; the phases reuse one eigendecomposition of L.
// The grid must target the rescaled problem A = L, T = gamma/2, H = 0.
GibbsResult prepare_purified_gibbs(const Matrix& l, double gamma, const QuadratureGrid& grid,
                                   double ham_tol);

}  // namespace lchs
