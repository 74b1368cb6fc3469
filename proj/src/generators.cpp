#include "generators.hpp"

#include <cmath>

#include "errors.hpp"
#include "linalg.hpp"
#include "util.hpp"

namespace lchs {

Matrix random_hermitian(Eigen::Index dim, std::uint64_t seed, std::uint64_t stream) {
    CounterRng rng(seed, stream);
    Matrix m(dim, dim);
    for (Eigen::Index i = 0; i < dim; ++i) {
        for (Eigen::Index j = 0; j < dim; ++j) {
            m(i, j) = Complex(rng.normal(), rng.normal());
        }
    }
    Matrix h = (m + m.adjoint()) / 2.0;
    return h;
}

Matrix random_psd_unit(Eigen::Index dim, std::uint64_t seed, std::uint64_t stream) {
    Matrix l = random_hermitian(dim, seed, stream);
    double lam = min_eigenvalue_hermitian(l);
    l -= lam * Matrix::Identity(dim, dim);
    double norm = spectral_norm(l);
    if (norm > 0.0) l /= norm;
    return l;
}

HermitianPair random_unit_pair(Eigen::Index dim, std::uint64_t seed) {
    HermitianPair pair;
    pair.l = random_psd_unit(dim, seed, 0);
    Matrix h = random_hermitian(dim, seed, 1);
    double norm = spectral_norm(h);
    if (norm > 0.0) h /= norm;
    pair.h = h;
    return pair;
}

Vector random_state(Eigen::Index dim, std::uint64_t seed, std::uint64_t stream) {
    CounterRng rng(seed, stream);
    Vector v(dim);
    for (Eigen::Index i = 0; i < dim; ++i) v(i) = Complex(rng.normal(), rng.normal());
    double n = v.norm();
    if (n > 0.0) v /= n;
    return v;
}

namespace {

OdeProblem scalar_decay(double horizon_t) {
    OdeProblem p;
    Matrix a(1, 1);
    a(0, 0) = 1.0;
    p.a = TimeDependentMatrix::constant(a);
    p.u0 = Vector::Ones(1);
    p.horizon_T = horizon_t;
    return p;
}

OdeProblem constant_psd(Eigen::Index dim, std::uint64_t seed, double horizon_t) {
    OdeProblem p;
    HermitianPair pair = random_unit_pair(dim, seed);
    Matrix a = pair.l + Complex(0.0, 1.0) * pair.h;
    p.a = TimeDependentMatrix::constant(a);
    p.u0 = random_state(dim, seed, 2);
    p.horizon_T = horizon_t;
    return p;
}

// A(t) = s (L0 + (1+cos t)/2 L1) + i s (H0 + sin(t)/2 H1); both L pieces are
// PSD, so L(t) stays PSD for every t. The 0.25 scale keeps norms desk-sized.
OdeProblem td_psd(Eigen::Index dim, std::uint64_t seed, double horizon_t, bool with_b) {
    const double scale = 0.25;
    Matrix l0 = random_psd_unit(dim, seed, 0);
    Matrix l1 = random_psd_unit(dim, seed, 1);
    Matrix h0 = random_hermitian(dim, seed, 2);
    h0 /= std::max(spectral_norm(h0), 1e-12);
    Matrix h1 = random_hermitian(dim, seed, 3);
    h1 /= std::max(spectral_norm(h1), 1e-12);

    OdeProblem p;
    p.a = TimeDependentMatrix(
        dim, dim,
        [l0, l1, h0, h1, scale](double t, Matrix& out) {
            out = scale * (l0 + 0.5 * (1.0 + std::cos(t)) * l1) +
                  Complex(0.0, scale) * (h0 + 0.5 * std::sin(t) * h1);
        },
        "trigonometric, entire");
    p.u0 = random_state(dim, seed, 4);
    p.horizon_T = horizon_t;
    if (with_b) {
        Vector dir = random_state(dim, seed, 5);
        Matrix bvec = 0.3 * dir;
        p.b = TimeDependentMatrix(
            dim, 1, [bvec](double t, Matrix& out) { out = std::exp(-t) * bvec; },
            "exponential, entire");
    }
    return p;
}

}  // namespace

OdeProblem make_named_problem(const std::string& name, Eigen::Index dim, std::uint64_t seed,
                              double horizon_t) {
    if (name == "scalar-decay") return scalar_decay(horizon_t);
    if (name == "constant-psd") return constant_psd(dim, seed, horizon_t);
    if (name == "td-psd") return td_psd(dim, seed, horizon_t, false);
    if (name == "td-inhomogeneous") return td_psd(dim, seed, horizon_t, true);
    throw DomainError("unknown problem generator '" + name + "'");
}

std::vector<std::string> named_problem_list() {
    return {"scalar-decay", "constant-psd", "td-psd", "td-inhomogeneous"};
}

}  // namespace lchs
