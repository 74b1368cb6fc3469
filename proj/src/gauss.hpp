// Gauss-Legendre rule generation and the panel-doubling adaptive integrators
// used as in-house oracles. The fixed LCHS grid lives in grid.hpp; these
// adaptive tools are deliberately separate from it.
#pragma once

#include <functional>
#include <vector>

#include "types.hpp"

namespace lchs {

struct GaussLegendreRule {
    int order_q = 0;
    std::vector<double> nodes;    // ascending, in (-1,1)
    std::vector<double> weights;  // positive, sum to 2
};

// Nodes are Legendre roots found by Newton iteration from Chebyshev initial
// guesses (converged to 1e-15); weights w = 2 / ((1-x^2) P'^2).
GaussLegendreRule gauss_legendre(int order_q);

struct AdaptiveOptions {
    int order_q = 12;
    int initial_panels_per_segment = 4;
    int max_doublings = 22;
    double tol_divisor = 10.0;  // stop when the change < tol / tol_divisor
};

// Composite Gauss over the segment list, panel counts doubled globally until
// the total changes by less than tol / tol_divisor. Segments let callers
// grade panel density over wide ranges; {a, b} is the single-segment case.
Complex integrate_adaptive(const std::function<Complex(double)>& f,
                           const std::vector<double>& segment_bounds, double tol,
                           AdaptiveOptions opts = {});

double integrate_adaptive_real(const std::function<double(double)>& f,
                               const std::vector<double>& segment_bounds, double tol,
                               AdaptiveOptions opts = {});

// Matrix-valued variant; convergence measured in Frobenius norm.
Matrix integrate_adaptive_matrix(const std::function<void(double, Matrix&)>& f,
                                 Eigen::Index rows, Eigen::Index cols,
                                 const std::vector<double>& segment_bounds, double tol,
                                 AdaptiveOptions opts = {});

// Segment boundaries a, .., -2, -1, 0, 1, 2, 4, .., b with geometric growth
// away from zero. Suits integrands that concentrate near the origin and
// decay over a wide tail.
std::vector<double> graded_segments(double a, double b);

}  // namespace lchs
