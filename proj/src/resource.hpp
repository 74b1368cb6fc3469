// Analytic query-count formulas with every O(.) constant pinned to 1.
// Outputs are method comparisons at a fixed convention, not absolute
// predictions, and carry notes saying so.
#pragma once

#include <string>
#include <vector>

#include "types.hpp"

namespace lchs {

struct CostInput {
    double alpha_a = 1.0;  // block-encoding factors
    double alpha_l = 1.0;
    double alpha_h = 1.0;
    double horizon_t = 1.0;
    double eps = 1e-6;   // target error, in (0,1)
    double beta = 0.75;  // kernel parameter, in (0,1)
    double norm_u0 = 1.0;
    double norm_ut = 1.0;
    double b_l1 = 0.0;       // L1 norm of b over [0,T]
    double lambda_cap = 1.0;  // derivative-growth caps
    double xi_cap = 0.0;
    // Gibbs-only fields
    double n_dim = 0.0;
    double partition_z = 0.0;
    double gamma = 0.0;

    void validate() const;
};

struct ResourceEstimate {
    double trunc_k = 0.0;
    long long grid_m = 0;
    long long grid_mprime = 0;
    double matrix_queries = 0.0;
    double state_prep_queries = 0.0;
    std::string notes;
};

// Homogeneous: K at eps ||u(T)||/||u0||, M = 2KQ/h1 from the explicit
// selectors, matrix queries (||u0||/||u(T)||) alpha_A T log^{1+1/beta}.
ResourceEstimate homogeneous_cost(const CostInput& in);

// Adds the time grid M' and the (||u0||+||b||_L1)/||u(T)|| success factor.
ResourceEstimate inhomogeneous_cost(const CostInput& in);

// Time-independent coefficient: additive QSP/QSVT scaling, so the log power
// drops from 1+1/beta to 1/beta.
ResourceEstimate time_independent_cost(const CostInput& in);

// Purified thermal state: sqrt(N/Z) gamma alpha_L log^{1/beta}(1/eps).
ResourceEstimate gibbs_cost(const CostInput& in);

struct ComparisonRow {
    std::string method;
    bool available = true;
    double matrix_queries = 0.0;
    double state_prep_queries = 0.0;
    std::string note;
};

// One row per method for homogeneous ODEs; kappa_v (condition number of the
// diagonalizing transform) gates the spectral-method row. Pass NaN when it
// is not known.
std::vector<ComparisonRow> comparison_table(const CostInput& in, double kappa_v);

}  // namespace lchs
