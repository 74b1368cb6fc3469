// Dense complex linear algebra: Cartesian decomposition, matrix exponential,
// Hermitian eigendecompositions, and the norms used across the toolkit.
#pragma once

#include <utility>

#include "types.hpp"

namespace lchs {

// A = L + iH with both parts Hermitian.
struct HermitianPair {
    Matrix l;
    Matrix h;
};

bool is_hermitian(const Matrix& m, double tol = kHermitianTol);

// L = (A + A^dag)/2, H = (A - A^dag)/(2i)
HermitianPair cartesian_split(const Matrix& a);

// Scaling-and-squaring with a fixed-order (6,6) diagonal Pade approximant;
// the input is rescaled until its 1-norm is at most 0.5.
Matrix expm(const Matrix& m);

// exp(scale * m) for Hermitian m, via one eigendecomposition. Exact up to
// the eigensolver, preferred wherever m is known Hermitian.
Matrix expm_hermitian(const Matrix& m, Complex scale);

struct HermitianEigen {
    RealVector values;  // ascending
    Matrix vectors;     // columns
};
HermitianEigen eigh(const Matrix& m);

double spectral_norm(const Matrix& m);
double min_eigenvalue_hermitian(const Matrix& m);

// 0.5 * sum |eig(a - b)| for Hermitian a, b.
double trace_distance(const Matrix& a, const Matrix& b);

}  // namespace lchs
