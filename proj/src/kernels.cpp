#include "kernels.hpp"

#include <cmath>
#include <sstream>

#include "errors.hpp"
#include "gauss.hpp"
#include "util.hpp"

namespace lchs {

KernelSpec KernelSpec::beta_exponential(double beta) {
    // beta = 1 stops decaying along the real axis, so the interval is open
    if (!(beta > 0.0 && beta < 1.0)) {
        throw DomainError("beta_exponential: beta must lie strictly in (0,1), got " +
                          std::to_string(beta));
    }
    return KernelSpec(KernelFamily::beta_exponential, beta, 0);
}

KernelSpec KernelSpec::cauchy() { return KernelSpec(KernelFamily::cauchy, 0.0, 0); }

KernelSpec KernelSpec::poly_power(int p) {
    if (p < 1) throw DomainError("poly_power: p must be a positive integer");
    return KernelSpec(KernelFamily::poly_power, 0.0, p);
}

KernelSpec KernelSpec::log_power(int p) {
    if (p < 1) throw DomainError("log_power: p must be a positive integer");
    return KernelSpec(KernelFamily::log_power, 0.0, p);
}

std::string KernelSpec::label() const {
    std::ostringstream os;
    switch (family_) {
        case KernelFamily::beta_exponential:
            os << "beta=" << beta_;
            break;
        case KernelFamily::cauchy:
            os << "cauchy";
            break;
        case KernelFamily::poly_power:
            os << "poly_p=" << power_;
            break;
        case KernelFamily::log_power:
            os << "log_p=" << power_;
            break;
    }
    return os.str();
}

double c_beta(double beta) {
    if (!(beta > 0.0 && beta < 1.0)) {
        throw DomainError("c_beta: beta must lie strictly in (0,1)");
    }
    return 2.0 * M_PI * std::exp(-std::pow(2.0, beta));
}

Complex f_eval(const KernelSpec& spec, Complex z) {
    if (z.imag() > 0.0) {
        throw DomainError("f_eval: z must lie in the closed lower half plane");
    }
    const Complex one_plus_iz = 1.0 + Complex(0.0, 1.0) * z;
    switch (spec.family()) {
        case KernelFamily::beta_exponential: {
            Complex w = std::pow(one_plus_iz, spec.beta());  // principal power
            if (w.real() > 700.0) return {0.0, 0.0};
            return std::exp(-w) / c_beta(spec.beta());
        }
        case KernelFamily::cauchy:
            return 1.0 / (M_PI * one_plus_iz);
        case KernelFamily::poly_power: {
            Complex den = std::pow(one_plus_iz, static_cast<double>(spec.power()));
            return std::pow(2.0, spec.power() - 1) / (M_PI * den);
        }
        case KernelFamily::log_power: {
            Complex w = std::pow(std::log(one_plus_iz), static_cast<double>(spec.power()));
            if (w.real() > 700.0) return {0.0, 0.0};
            double norm = 2.0 * M_PI * std::exp(-std::pow(std::log(2.0), spec.power()));
            return std::exp(-w) / norm;
        }
    }
    throw DomainError("f_eval: unknown kernel family");
}

Complex g_eval(const KernelSpec& spec, double k) {
    if (!std::isfinite(k)) throw DomainError("g_eval: k must be finite");
    return f_eval(spec, Complex(k, 0.0)) / Complex(1.0, -k);
}

double g_abs_bound(double beta, double k) {
    if (!(beta > 0.0 && beta < 1.0)) {
        throw DomainError("g_abs_bound: beta must lie strictly in (0,1)");
    }
    double r2 = k * k + 1.0;
    double expo = std::pow(r2, beta / 2.0) * std::cos(beta * std::atan(k));
    if (expo > 700.0) return 0.0;
    return 1.0 / (c_beta(beta) * std::sqrt(r2) * std::exp(expo));
}

namespace {

double abs_g(const KernelSpec& spec, double k) { return std::abs(g_eval(spec, k)); }

}  // namespace

double kernel_tail_integral(const KernelSpec& spec, double k_trunc) {
    if (!(k_trunc > 0.0)) throw DomainError("kernel_tail_integral: k_trunc must be positive");
    if (spec.family() == KernelFamily::cauchy) {
        return 2.0 * (M_PI / 2.0 - std::atan(k_trunc)) / M_PI;  // closed form
    }
    // |g| is even for every family; march over octaves until they stop
    // contributing
    const GaussLegendreRule rule = gauss_legendre(12);
    CompensatedSum<double> total;
    double lo = k_trunc;
    for (int octave = 0; octave < 70; ++octave) {
        double hi = lo * 2.0;
        double seg = 0.0;
        int panels = 4;
        for (int m = 0; m < panels; ++m) {
            double a = lo + (hi - lo) * m / panels;
            double b = lo + (hi - lo) * (m + 1) / panels;
            double c = 0.5 * (b - a);
            double mid = 0.5 * (a + b);
            for (int q = 0; q < rule.order_q; ++q) {
                seg += c * rule.weights[q] * abs_g(spec, mid + c * rule.nodes[q]);
            }
        }
        total.add(seg);
        if (seg < 1e-300 || (total.value() > 0.0 && seg < 1e-6 * total.value() && octave >= 3)) {
            break;
        }
        lo = hi;
    }
    return 2.0 * total.value();
}

double suggest_kmax(const KernelSpec& spec, double tol, double x) {
    if (!(tol > 0.0)) throw DomainError("suggest_kmax: tol must be positive");
    switch (spec.family()) {
        case KernelFamily::cauchy: {
            double plain = 4.0 / (M_PI * tol);
            if (std::abs(x) >= 0.25) {
                // one integration by parts against e^{-ikx}
                double osc = std::sqrt(6.0 / (M_PI * tol * std::abs(x)));
                return std::max(8.0, std::min(plain, osc));
            }
            return std::max(8.0, plain);
        }
        case KernelFamily::poly_power: {
            int p = spec.power();
            if (p == 1) return suggest_kmax(KernelSpec::cauchy(), tol, x);
            double k = std::pow(std::pow(2.0, p + 1) / (M_PI * p * tol), 1.0 / p);
            return std::max(8.0, k);
        }
        default: {
            double k = 8.0;
            while (kernel_tail_integral(spec, k) > tol / 2.0) {
                k *= 2.0;
                if (k > 1e9) throw NumericError("suggest_kmax: tail does not fall below tol");
            }
            return k;
        }
    }
}

double verify_normalization(const KernelSpec& spec, double k_max, double tol) {
    if (!(k_max > 0.0)) throw DomainError("verify_normalization: k_max must be positive");
    if (!(tol > 0.0)) throw DomainError("verify_normalization: tol must be positive");
    if (kernel_tail_integral(spec, k_max) > tol / 2.0) {
        throw DomainError("verify_normalization: k_max leaves a tail above tol/2");
    }
    Complex integral = integrate_adaptive([&](double k) { return g_eval(spec, k); },
                                          graded_segments(-k_max, k_max), tol);
    return std::abs(integral - 1.0);
}

Complex fourier_check(const KernelSpec& spec, double x, double tol) {
    if (!std::isfinite(x)) throw DomainError("fourier_check: x must be finite");
    if (!(tol > 0.0)) throw DomainError("fourier_check: tol must be positive");
    double k_max = suggest_kmax(spec, tol, x);
    return integrate_adaptive(
        [&](double k) { return g_eval(spec, k) * std::exp(Complex(0.0, -k * x)); },
        graded_segments(-k_max, k_max), tol);
}

}  // namespace lchs
