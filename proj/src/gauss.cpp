#include "gauss.hpp"

#include <algorithm>
#include <cmath>

#include "errors.hpp"
#include "util.hpp"

namespace lchs {

namespace {

// P_q(x) and P_q'(x) by the three-term recurrence.
std::pair<double, double> legendre_with_derivative(int q, double x) {
    double p0 = 1.0;
    double p1 = x;
    for (int n = 2; n <= q; ++n) {
        double p2 = ((2 * n - 1) * x * p1 - (n - 1) * p0) / n;
        p0 = p1;
        p1 = p2;
    }
    double dp = q * (x * p1 - p0) / (x * x - 1.0);
    return {p1, dp};
}

}  // namespace

GaussLegendreRule gauss_legendre(int order_q) {
    if (order_q < 1) throw DomainError("gauss_legendre: order must be >= 1");
    GaussLegendreRule rule;
    rule.order_q = order_q;
    rule.nodes.resize(order_q);
    rule.weights.resize(order_q);

    if (order_q == 1) {
        rule.nodes[0] = 0.0;
        rule.weights[0] = 2.0;
        return rule;
    }

    const int half = order_q / 2;
    for (int i = 0; i < half; ++i) {
        // Chebyshev initial guess for the i-th largest root
        double x = std::cos(M_PI * (4.0 * i + 3.0) / (4.0 * order_q + 2.0));
        bool converged = false;
        for (int it = 0; it < 100; ++it) {
            auto [p, dp] = legendre_with_derivative(order_q, x);
            double dx = p / dp;
            x -= dx;
            if (std::abs(dx) <= 1e-15) {
                converged = true;
                break;
            }
        }
        if (!converged) throw NumericError("gauss_legendre: Newton iteration stalled");
        auto [p, dp] = legendre_with_derivative(order_q, x);
        (void)p;
        double w = 2.0 / ((1.0 - x * x) * dp * dp);
        rule.nodes[order_q - 1 - i] = x;
        rule.nodes[i] = -x;
        rule.weights[order_q - 1 - i] = w;
        rule.weights[i] = w;
    }
    if (order_q % 2 == 1) {
        auto [p, dp] = legendre_with_derivative(order_q, 0.0);
        (void)p;
        rule.nodes[half] = 0.0;
        rule.weights[half] = 2.0 / (dp * dp);
    }
    return rule;
}

namespace {

template <typename Value, typename Add, typename Norm>
Value adaptive_impl(const std::function<void(double, double, Value&)>& accumulate_panel,
                    const std::vector<double>& bounds, double tol, const AdaptiveOptions& opts,
                    const Add& add, const Norm& norm, const Value& zero) {
    if (bounds.size() < 2) throw DomainError("integrate_adaptive: need at least one segment");
    for (std::size_t i = 1; i < bounds.size(); ++i) {
        if (!(bounds[i] > bounds[i - 1])) {
            throw DomainError("integrate_adaptive: segment bounds must be strictly increasing");
        }
    }
    auto total = [&](int mult) {
        Value acc = zero;
        for (std::size_t s = 0; s + 1 < bounds.size(); ++s) {
            int panels = opts.initial_panels_per_segment * mult;
            double lo = bounds[s];
            double width = (bounds[s + 1] - lo) / panels;
            for (int m = 0; m < panels; ++m) {
                Value panel = zero;
                accumulate_panel(lo + m * width, lo + (m + 1) * width, panel);
                add(acc, panel);
            }
        }
        return acc;
    };

    int mult = 1;
    Value prev = total(mult);
    for (int d = 0; d < opts.max_doublings; ++d) {
        mult *= 2;
        Value cur = total(mult);
        double delta = norm(cur, prev);
        if (delta < tol / opts.tol_divisor) return cur;
        prev = cur;
    }
    throw NumericError("integrate_adaptive: did not converge within the doubling cap");
}

}  // namespace

Complex integrate_adaptive(const std::function<Complex(double)>& f,
                           const std::vector<double>& segment_bounds, double tol,
                           AdaptiveOptions opts) {
    const GaussLegendreRule rule = gauss_legendre(opts.order_q);
    std::function<void(double, double, ComplexCompensatedSum&)> panel =
        [&](double lo, double hi, ComplexCompensatedSum& out) {
            double c = 0.5 * (hi - lo);
            double mid = 0.5 * (hi + lo);
            for (int q = 0; q < rule.order_q; ++q) {
                out.add(c * rule.weights[q] * f(mid + c * rule.nodes[q]));
            }
        };
    auto result = adaptive_impl<ComplexCompensatedSum>(
        panel, segment_bounds, tol, opts,
        [](ComplexCompensatedSum& acc, const ComplexCompensatedSum& p) { acc.add(p.value()); },
        [](const ComplexCompensatedSum& a, const ComplexCompensatedSum& b) {
            return std::abs(a.value() - b.value());
        },
        ComplexCompensatedSum{});
    return result.value();
}

double integrate_adaptive_real(const std::function<double(double)>& f,
                               const std::vector<double>& segment_bounds, double tol,
                               AdaptiveOptions opts) {
    Complex v = integrate_adaptive([&](double x) { return Complex(f(x), 0.0); }, segment_bounds,
                                   tol, opts);
    return v.real();
}

Matrix integrate_adaptive_matrix(const std::function<void(double, Matrix&)>& f,
                                 Eigen::Index rows, Eigen::Index cols,
                                 const std::vector<double>& segment_bounds, double tol,
                                 AdaptiveOptions opts) {
    const GaussLegendreRule rule = gauss_legendre(opts.order_q);
    Matrix scratch(rows, cols);
    std::function<void(double, double, Matrix&)> panel = [&](double lo, double hi, Matrix& out) {
        out = Matrix::Zero(rows, cols);
        double c = 0.5 * (hi - lo);
        double mid = 0.5 * (hi + lo);
        for (int q = 0; q < rule.order_q; ++q) {
            f(mid + c * rule.nodes[q], scratch);
            out.noalias() += (c * rule.weights[q]) * scratch;
        }
    };
    return adaptive_impl<Matrix>(
        panel, segment_bounds, tol, opts,
        [](Matrix& acc, const Matrix& p) {
            if (acc.size() == 0) {
                acc = p;
            } else {
                acc += p;
            }
        },
        [](const Matrix& a, const Matrix& b) { return (a - b).norm(); }, Matrix());
}

std::vector<double> graded_segments(double a, double b) {
    if (!(a < b)) throw DomainError("graded_segments: need a < b");
    std::vector<double> bounds;
    auto push_side = [&](double lo, double hi, bool negative) {
        // geometric ladder 1, 2, 4, ... between |lo| and |hi|
        std::vector<double> side;
        double mag = 1.0;
        double lim = negative ? -lo : hi;
        while (mag < lim) {
            if (mag > (negative ? -hi : lo)) side.push_back(mag);
            mag *= 2.0;
        }
        if (negative) {
            for (auto it = side.rbegin(); it != side.rend(); ++it) bounds.push_back(-*it);
        } else {
            for (double v : side) bounds.push_back(v);
        }
    };

    bounds.push_back(a);
    if (a < 0.0 && b > 0.0) {
        push_side(a, 0.0, true);
        bounds.push_back(0.0);
        push_side(0.0, b, false);
    } else if (b <= 0.0) {
        push_side(a, b, true);
    } else {
        push_side(a, b, false);
    }
    bounds.push_back(b);
    std::sort(bounds.begin(), bounds.end());
    bounds.erase(std::unique(bounds.begin(), bounds.end(),
                             [](double x, double y) { return std::abs(x - y) < 1e-14; }),
                 bounds.end());
    return bounds;
}

}  // namespace lchs
