// Seeded, platform-independent random matrices and named test problems.
#pragma once

#include <string>
#include <vector>

#include "propagator.hpp"
#include "types.hpp"

namespace lchs {

// Gaussian-entry Hermitian matrix, symmetrized.
Matrix random_hermitian(Eigen::Index dim, std::uint64_t seed, std::uint64_t stream = 0);

// Hermitian, shifted so the smallest eigenvalue is exactly 0, scaled to unit
// spectral norm. The construction behind the kernel-comparison experiments.
Matrix random_psd_unit(Eigen::Index dim, std::uint64_t seed, std::uint64_t stream = 0);

// (L, H) with ||L|| = ||H|| = 1 and lambda_min(L) = 0.
HermitianPair random_unit_pair(Eigen::Index dim, std::uint64_t seed);

// Normalized complex Gaussian vector.
Vector random_state(Eigen::Index dim, std::uint64_t seed, std::uint64_t stream = 0);

// Named problem generators, the CLI-facing registry:
//   scalar-decay      A = [[1]], u0 = [1], homogeneous
//   constant-psd      constant random A with PSD real part, random u0
//   td-psd            time-dependent A(t) with PSD real part for all t
//   td-inhomogeneous  td-psd plus analytic b(t) = e^{-t} v
OdeProblem make_named_problem(const std::string& name, Eigen::Index dim, std::uint64_t seed,
                              double horizon_t);

std::vector<std::string> named_problem_list();

}  // namespace lchs
