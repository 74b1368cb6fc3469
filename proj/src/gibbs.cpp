#include "gibbs.hpp"

#include <cmath>

#include "errors.hpp"
#include "linalg.hpp"
#include "util.hpp"

namespace lchs {

double partition_function(const Matrix& l, double gamma) {
    if (!is_hermitian(l, 1e-10)) {
        throw PreconditionError("partition_function: l must be Hermitian");
    }
    if (gamma < 0.0) throw DomainError("partition_function: gamma must be nonnegative");
    HermitianEigen eig = eigh(l);
    CompensatedSum<double> z;
    for (Eigen::Index i = 0; i < eig.values.size(); ++i) {
        z.add(std::exp(-gamma * eig.values(i)));
    }
    return z.value();
}

GibbsResult prepare_purified_gibbs(const Matrix& l, double gamma, const QuadratureGrid& grid,
                                   double ham_tol) {
    (void)ham_tol;  // phases are exact here; kept for interface symmetry
    if (!is_hermitian(l, 1e-10)) {
        throw PreconditionError("prepare_purified_gibbs: l must be Hermitian");
    }
    if (gamma < 0.0) throw DomainError("prepare_purified_gibbs: gamma must be nonnegative");
    const Eigen::Index n = l.rows();
    HermitianEigen eig = eigh(l);
    if (eig.values(0) < -1e-10) {
        throw PreconditionError("prepare_purified_gibbs: L has eigenvalue " +
                                std::to_string(eig.values(0)) + " < 0");
    }

    // sum_j c_j e^{-i k_j (gamma/2) lambda} per eigenvalue; one
    // eigendecomposition serves every k node
    const double t_eff = gamma / 2.0;
    Vector filtered(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        ComplexCompensatedSum s;
        for (std::size_t j = 0; j < grid.total_m; ++j) {
            s.add(grid.coeffs[j] *
                  std::exp(Complex(0.0, -grid.nodes[j] * t_eff * eig.values(i))));
        }
        filtered(i) = s.value();
    }
    Matrix m_gamma = eig.vectors * filtered.asDiagonal() * eig.vectors.adjoint();

    GibbsResult out;
    out.partition_z = partition_function(l, gamma);

    // purified vector: component (j, i) is M[i, j] / sqrt(N)
    Vector v(n * n);
    for (Eigen::Index j = 0; j < n; ++j) {
        for (Eigen::Index i = 0; i < n; ++i) {
            v(j * n + i) = m_gamma(i, j) / std::sqrt(static_cast<double>(n));
        }
    }
    out.unnormalized_norm = v.norm();
    if (out.unnormalized_norm <= 0.0) {
        throw NumericError("prepare_purified_gibbs: zero output norm");
    }
    out.purified_state = v / out.unnormalized_norm;

    // partial trace over the first register: M M^dag / ||M||_F^2
    Matrix mm = m_gamma * m_gamma.adjoint();
    out.density = mm / mm.trace().real();

    Matrix exact = expm_hermitian(l, Complex(-gamma, 0.0)) / out.partition_z;
    out.trace_distance_to_exact = trace_distance(out.density, exact);

    // exact purification for the vector-error report
    Matrix half = expm_hermitian(l, Complex(-gamma / 2.0, 0.0));
    Vector v_exact(n * n);
    for (Eigen::Index j = 0; j < n; ++j) {
        for (Eigen::Index i = 0; i < n; ++i) {
            v_exact(j * n + i) = half(i, j) / std::sqrt(static_cast<double>(n));
        }
    }
    v_exact /= v_exact.norm();
    out.purified_error = (out.purified_state - v_exact).norm();

    double one_norm = 0.0;
    for (const Complex& c : grid.coeffs) one_norm += std::abs(c);
    out.post_selection_ratio =
        (out.unnormalized_norm * out.unnormalized_norm) / (one_norm * one_norm);
    return out;
}

}  // namespace lchs
