#include "grid.hpp"

#include <cmath>

#include "errors.hpp"
#include "gauss.hpp"
#include "util.hpp"

namespace lchs {

namespace {

double factorial(int n) {
    double f = 1.0;
    for (int i = 2; i <= n; ++i) f *= i;
    return f;
}

double round_up_3sig(double v) {
    if (v <= 0.0) return v;
    double scale = std::pow(10.0, std::floor(std::log10(v)) - 2.0);
    return std::ceil(v / scale - 1e-9) * scale;
}

}  // namespace

double truncation_bound(double beta, double k_trunc) {
    if (!(beta > 0.0 && beta < 1.0)) throw DomainError("truncation_bound: beta must be in (0,1)");
    if (!(k_trunc > 0.0)) throw DomainError("truncation_bound: K must be positive");
    const int b = static_cast<int>(std::ceil(1.0 / beta));
    const double cosb = std::cos(beta * M_PI / 2.0);
    const double pre =
        std::pow(2.0, b + 1) * factorial(b) / (c_beta(beta) * std::pow(cosb, b));
    return pre * (1.0 / k_trunc) * std::exp(-0.5 * std::pow(k_trunc, beta) * cosb);
}

double select_truncation_k(double beta, double eps, TruncationMode mode) {
    if (!(eps > 0.0)) throw DomainError("select_truncation_k: eps must be positive");
    auto err_at = [&](double k) {
        return mode == TruncationMode::bound
                   ? truncation_bound(beta, k)
                   : kernel_tail_integral(KernelSpec::beta_exponential(beta), k);
    };
    if (err_at(1.0) <= eps) return 1.0;

    double lo = 1.0;
    double hi = 2.0;
    while (err_at(hi) > eps) {
        lo = hi;
        hi *= 2.0;
        if (hi > 1e12) throw NumericError("select_truncation_k: bound never reaches eps");
    }
    while ((hi - lo) / hi > 1e-4) {
        double mid = 0.5 * (lo + hi);
        if (err_at(mid) > eps) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    double k = round_up_3sig(hi);
    return std::max(1.0, k);
}

QuadratureParams select_quadrature_params(double horizon_t, double max_norm_l, double trunc_k,
                                          double beta, double eps) {
    if (!(eps > 0.0)) throw DomainError("select_quadrature_params: eps must be positive");
    if (horizon_t < 0.0 || max_norm_l < 0.0 || !(trunc_k > 0.0)) {
        throw DomainError("select_quadrature_params: inputs must be nonnegative, K positive");
    }
    QuadratureParams out{};
    double tl = horizon_t * max_norm_l;
    if (tl == 0.0) {
        // degenerate input: a single panel covers [-K, K]
        out.step_h1 = trunc_k;
        out.order_q = std::max(
            1, static_cast<int>(std::ceil(std::log(8.0 * trunc_k / (3.0 * c_beta(beta) * eps)) /
                                          std::log(4.0))));
        out.order_q = std::min(out.order_q, 64);
        return out;
    }
    double h1 = 1.0 / (M_E * tl);
    // per-panel ratio h1 e T maxL / 2 starts at 1/2; halving h1 halves it
    double rho = 0.5;
    double arg = 8.0 * trunc_k / (3.0 * c_beta(beta) * eps);
    int q = std::max(1, static_cast<int>(std::ceil(std::log(arg) / (-2.0 * std::log(rho)))));
    while (q > 64) {
        h1 /= 2.0;
        rho /= 2.0;
        q = std::max(1, static_cast<int>(std::ceil(std::log(arg) / (-2.0 * std::log(rho)))));
    }
    out.step_h1 = h1;
    out.order_q = q;
    return out;
}

QuadratureGrid build_grid(const KernelSpec& spec, double trunc_k, double step_h1, int order_q) {
    if (!(trunc_k > 0.0) || !(step_h1 > 0.0)) {
        throw DomainError("build_grid: K and h1 must be positive");
    }
    if (order_q < 1) throw DomainError("build_grid: Q must be >= 1");

    const auto panels =
        static_cast<std::size_t>(std::max(1.0, std::ceil(trunc_k / step_h1 - 1e-12)));
    const double k_eff = static_cast<double>(panels) * step_h1;  // stretched coverage

    const GaussLegendreRule rule = gauss_legendre(order_q);
    QuadratureGrid grid{spec, k_eff, step_h1, order_q, {}, {}, 0};
    grid.total_m = 2 * panels * static_cast<std::size_t>(order_q);
    grid.nodes.reserve(grid.total_m);
    grid.coeffs.reserve(grid.total_m);

    const auto p = static_cast<std::ptrdiff_t>(panels);
    for (std::ptrdiff_t m = -p; m < p; ++m) {
        double lo = static_cast<double>(m) * step_h1;
        for (int q = 0; q < order_q; ++q) {
            double k = lo + 0.5 * step_h1 * (rule.nodes[q] + 1.0);
            double w = 0.5 * step_h1 * rule.weights[q];
            grid.nodes.push_back(k);
            grid.coeffs.push_back(w * g_eval(spec, k));
        }
    }
    return grid;
}

double coefficient_one_norm(const QuadratureGrid& grid) {
    CompensatedSum<double> sum;
    for (const Complex& c : grid.coeffs) sum.add(std::abs(c));
    return sum.value();
}

Complex coefficient_sum(const QuadratureGrid& grid) {
    ComplexCompensatedSum sum;
    for (const Complex& c : grid.coeffs) sum.add(c);
    return sum.value();
}

}  // namespace lchs
