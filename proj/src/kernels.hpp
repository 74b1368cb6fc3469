// Kernel family f(z), the integrand g(k) = f(k)/(1-ik), normalization
// constants, decay majorants, and the identity checks built on them.
#pragma once

#include <string>

#include "types.hpp"

namespace lchs {

enum class KernelFamily { beta_exponential, cauchy, poly_power, log_power };

class KernelSpec {
public:
    static KernelSpec beta_exponential(double beta);
    static KernelSpec cauchy();
    static KernelSpec poly_power(int p);
    static KernelSpec log_power(int p);

    KernelFamily family() const { return family_; }
    double beta() const { return beta_; }
    int power() const { return power_; }

    // Only the beta family feeds the truncation/step selectors.
    bool selectable() const { return family_ == KernelFamily::beta_exponential; }

    std::string label() const;

private:
    KernelSpec(KernelFamily family, double beta, int power)
        : family_(family), beta_(beta), power_(power) {}

    KernelFamily family_;
    double beta_;
    int power_;
};

// 2 pi exp(-2^beta), the beta-family normalization constant.
double c_beta(double beta);

// Kernel value at z in the closed lower half plane (the analyticity region);
// the open upper half plane is rejected. Powers and logs take principal
// values with argument in (-pi, pi].
Complex f_eval(const KernelSpec& spec, Complex z);

// g(k) = f(k) / (1 - ik) for real k.
Complex g_eval(const KernelSpec& spec, double k);

// Exact modulus of g for the beta family,
// 1 / (C_beta sqrt(k^2+1) exp((k^2+1)^{beta/2} cos(beta arctan k))).
// Serves as the integrable majorant in truncation selection.
double g_abs_bound(double beta, double k);

// 2 * integral_K^inf |g|, evaluated numerically over a graded tail.
double kernel_tail_integral(const KernelSpec& spec, double k_trunc);

// Half-width that makes the truncated integral of g e^{-ikx} accurate to
// tol/2; oscillation at |x| >= 0.25 sharpens the slow Cauchy tail.
double suggest_kmax(const KernelSpec& spec, double tol, double x = 0.0);

// |integral_{-k_max}^{k_max} g - 1| by adaptive quadrature. Valid specs give
// residuals below tol once k_max covers the tail.
double verify_normalization(const KernelSpec& spec, double k_max, double tol);

// integral g(k) e^{-ikx} dk, adaptively; equals e^{-x} for x >= 0 for every
// valid spec, and e^{-|x|} on the negative axis for the Cauchy kernel only.
Complex fourier_check(const KernelSpec& spec, double x, double tol);

}  // namespace lchs
