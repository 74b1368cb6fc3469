#include "linalg.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/LU>
#include <Eigen/SVD>
#include <cmath>

#include "errors.hpp"

namespace lchs {

bool is_hermitian(const Matrix& m, double tol) {
    if (m.rows() != m.cols()) return false;
    return (m - m.adjoint()).cwiseAbs().maxCoeff() <= tol;
}

HermitianPair cartesian_split(const Matrix& a) {
    if (a.rows() != a.cols()) {
        throw DimensionError("cartesian_split: matrix must be square, got " +
                             std::to_string(a.rows()) + "x" + std::to_string(a.cols()));
    }
    Matrix adj = a.adjoint();
    HermitianPair pair;
    pair.l = (a + adj) / 2.0;
    pair.h = (a - adj) / Complex(0.0, 2.0);
    return pair;
}

Matrix expm(const Matrix& m) {
    if (m.rows() != m.cols()) {
        throw DimensionError("expm: matrix must be square");
    }
    if (!m.allFinite()) {
        throw NumericError("expm: non-finite entries");
    }
    const Eigen::Index n = m.rows();

    // squaring count so the scaled 1-norm is <= 0.5
    double norm1 = m.cwiseAbs().colwise().sum().maxCoeff();
    int squarings = 0;
    if (norm1 > 0.5) {
        squarings = static_cast<int>(std::ceil(std::log2(norm1 / 0.5)));
    }
    Matrix a = m / std::pow(2.0, squarings);

    // (6,6) Pade coefficients
    static const double c[] = {1.0,       0.5,        5.0 / 44.0,  1.0 / 66.0,
                               1.0 / 792.0, 1.0 / 15840.0, 1.0 / 665280.0};
    Matrix a2 = a * a;
    Matrix a4 = a2 * a2;
    Matrix a6 = a4 * a2;
    Matrix id = Matrix::Identity(n, n);
    Matrix u = a * (c[1] * id + c[3] * a2 + c[5] * a4);
    Matrix v = c[0] * id + c[2] * a2 + c[4] * a4 + c[6] * a6;

    Matrix num = v + u;
    Matrix den = v - u;
    Matrix r = Eigen::PartialPivLU<Matrix>(den).solve(num);

    for (int i = 0; i < squarings; ++i) {
        r = r * r;
    }
    return r;
}

Matrix expm_hermitian(const Matrix& m, Complex scale) {
    if (!is_hermitian(m, 1e-10)) {
        throw PreconditionError("expm_hermitian: input is not Hermitian");
    }
    HermitianEigen eig = eigh(m);
    Vector phases(m.rows());
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        phases(i) = std::exp(scale * eig.values(i));
    }
    return eig.vectors * phases.asDiagonal() * eig.vectors.adjoint();
}

HermitianEigen eigh(const Matrix& m) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(m);
    if (solver.info() != Eigen::Success) {
        throw NumericError("eigh: eigendecomposition failed");
    }
    HermitianEigen out;
    out.values = solver.eigenvalues();
    out.vectors = solver.eigenvectors();
    return out;
}

double spectral_norm(const Matrix& m) {
    if (m.size() == 0) return 0.0;
    if (m.rows() == 1 && m.cols() == 1) return std::abs(m(0, 0));
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m);
    return svd.singularValues()(0);
}

double min_eigenvalue_hermitian(const Matrix& m) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(m, Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) {
        throw NumericError("min_eigenvalue_hermitian: eigendecomposition failed");
    }
    return solver.eigenvalues()(0);
}

double trace_distance(const Matrix& a, const Matrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw DimensionError("trace_distance: shape mismatch");
    }
    Matrix d = a - b;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(d, Eigen::EigenvaluesOnly);
    return 0.5 * solver.eigenvalues().cwiseAbs().sum();
}

}  // namespace lchs
