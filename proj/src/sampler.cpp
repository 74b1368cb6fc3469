#include "sampler.hpp"

#include <algorithm>
#include <cmath>

#include "errors.hpp"
#include "util.hpp"

namespace lchs {

namespace {

constexpr std::size_t kMaxPairs = std::size_t(1) << 25;

std::size_t draw_pair(const std::vector<double>& prefix, double mass, CounterRng& rng) {
    double u = rng.uniform() * mass;
    auto it = std::upper_bound(prefix.begin(), prefix.end(), u);
    std::size_t idx = static_cast<std::size_t>(it - prefix.begin());
    return std::min(idx, prefix.size() - 1);
}

}  // namespace

SamplingPlan build_plan(const QuadratureGrid& grid) {
    const std::size_t m = grid.total_m;
    if (m == 0) throw PreconditionError("build_plan: empty grid");
    if (m * m > kMaxPairs) {
        throw DomainError("build_plan: " + std::to_string(m * m) +
                          " pairs exceeds the in-memory cap; use a coarser grid");
    }
    SamplingPlan plan;
    plan.node_count = m;
    plan.pair_count = m * m;
    plan.re_prefix.resize(plan.pair_count);
    plan.im_prefix.resize(plan.pair_count);
    plan.re_signs.resize(plan.pair_count);
    plan.im_signs.resize(plan.pair_count);

    CompensatedSum<double> re_mass;
    CompensatedSum<double> im_mass;
    std::size_t idx = 0;
    for (std::size_t l = 0; l < m; ++l) {
        const Complex cl = std::conj(grid.coeffs[l]);
        for (std::size_t j = 0; j < m; ++j, ++idx) {
            Complex prod = cl * grid.coeffs[j];
            double re = prod.real();
            double im = prod.imag();
            re_mass.add(std::abs(re));
            im_mass.add(std::abs(im));
            plan.re_prefix[idx] = re_mass.value();
            plan.im_prefix[idx] = im_mass.value();
            plan.re_signs[idx] = re >= 0.0 ? 1 : -1;
            plan.im_signs[idx] = im >= 0.0 ? 1 : -1;
        }
    }
    plan.re_mass = re_mass.value();
    plan.im_mass = im_mass.value();
    return plan;
}

Complex exact_inner(const Vector& u0, const Matrix& obs, const Matrix& u_l, const Matrix& u_j) {
    if (obs.rows() != obs.cols() || obs.rows() != u0.size() || u_l.rows() != u0.size() ||
        u_j.rows() != u0.size()) {
        throw DimensionError("exact_inner: dimension mismatch");
    }
    if (!is_hermitian(obs, 1e-10)) {
        throw PreconditionError("exact_inner: observable must be Hermitian");
    }
    Vector left = u_l * u0;
    Vector right = obs * (u_j * u0);
    return left.dot(right);
}

PairContext build_pair_context(const OdeProblem& problem, const QuadratureGrid& grid,
                               const Matrix& obs, double ham_tol) {
    if (!problem.homogeneous()) {
        throw PreconditionError("build_pair_context: hybrid estimator covers the homogeneous case");
    }
    if (!is_hermitian(obs, 1e-10)) {
        throw PreconditionError("build_pair_context: observable must be Hermitian");
    }
    problem.psd_check();
    PairContext ctx;
    ctx.phi.resize(grid.total_m);
    ctx.obs_phi.resize(grid.total_m);
    parallel_for(grid.total_m, [&](std::size_t j) {
        Matrix u = unitary_evolution(problem.a, grid.nodes[j], 0.0, problem.horizon_T, ham_tol);
        ctx.phi[j] = u * problem.u0;
        ctx.obs_phi[j] = obs * ctx.phi[j];
    });
    return ctx;
}

Complex expectation_direct(const QuadratureGrid& grid, const PairContext& ctx) {
    ComplexCompensatedSum sum;
    for (std::size_t l = 0; l < grid.total_m; ++l) {
        const Complex cl = std::conj(grid.coeffs[l]);
        for (std::size_t j = 0; j < grid.total_m; ++j) {
            sum.add(cl * grid.coeffs[j] * ctx.inner(l, j));
        }
    }
    return sum.value();
}

Complex expectation_from_plan(const SamplingPlan& plan, const QuadratureGrid& grid,
                              const PairContext& ctx) {
    const std::size_t m = plan.node_count;
    if (m != grid.total_m) throw DimensionError("expectation_from_plan: plan/grid mismatch");
    ComplexCompensatedSum re_part;
    ComplexCompensatedSum im_part;
    std::size_t idx = 0;
    double re_prev = 0.0;
    double im_prev = 0.0;
    for (std::size_t l = 0; l < m; ++l) {
        for (std::size_t j = 0; j < m; ++j, ++idx) {
            double re_w = plan.re_prefix[idx] - re_prev;
            double im_w = plan.im_prefix[idx] - im_prev;
            re_prev = plan.re_prefix[idx];
            im_prev = plan.im_prefix[idx];
            Complex v = ctx.inner(l, j);
            re_part.add(static_cast<double>(plan.re_signs[idx]) * re_w * v);
            im_part.add(static_cast<double>(plan.im_signs[idx]) * im_w * v);
        }
    }
    return re_part.value() + Complex(0.0, 1.0) * im_part.value();
}

ObservableEstimate estimate_observable(const SamplingPlan& plan, const PairContext& ctx,
                                       std::int64_t n_samples, std::uint64_t seed,
                                       double noise_width) {
    if (n_samples < 1) throw DomainError("estimate_observable: need at least one sample");
    if (plan.pair_count == 0) throw PreconditionError("estimate_observable: empty plan");
    const std::size_t m = plan.node_count;

    // independent streams for the two parts, plus one for the noise channel
    CounterRng re_rng(seed, 0);
    CounterRng im_rng(seed, 1);
    CounterRng noise_rng(seed, 2);

    auto run_stream = [&](const std::vector<double>& prefix,
                          const std::vector<signed char>& signs, double mass, CounterRng& rng,
                          bool imaginary_part) {
        ComplexCompensatedSum mean_acc;
        CompensatedSum<double> var_acc;  // over the real-part contribution
        std::vector<Complex> draws(static_cast<std::size_t>(n_samples));
        if (mass > 0.0) {
            for (std::int64_t i = 0; i < n_samples; ++i) {
                std::size_t idx = draw_pair(prefix, mass, rng);
                std::size_t l = idx / m;
                std::size_t j = idx % m;
                Complex v = ctx.inner(l, j);
                if (noise_width > 0.0) {
                    v += Complex(noise_width * noise_rng.normal(),
                                 noise_width * noise_rng.normal());
                }
                Complex term = static_cast<double>(signs[idx]) * v;
                draws[static_cast<std::size_t>(i)] = term;
                mean_acc.add(term);
            }
        }
        Complex mean = mass > 0.0 ? mean_acc.value() / static_cast<double>(n_samples)
                                  : Complex(0.0, 0.0);
        // sample variance of the component that lands in Re(estimate)
        double variance = 0.0;
        if (mass > 0.0 && n_samples > 1) {
            double mu = imaginary_part ? -mean.imag() : mean.real();
            for (const Complex& d : draws) {
                double x = imaginary_part ? -d.imag() : d.real();
                var_acc.add((x - mu) * (x - mu));
            }
            variance = var_acc.value() / static_cast<double>(n_samples - 1);
        }
        return std::make_pair(mean, variance);
    };

    auto [re_mean, re_var] = run_stream(plan.re_prefix, plan.re_signs, plan.re_mass, re_rng,
                                        false);
    auto [im_mean, im_var] = run_stream(plan.im_prefix, plan.im_signs, plan.im_mass, im_rng,
                                        true);

    ObservableEstimate est;
    est.value = plan.re_mass * re_mean + Complex(0.0, 1.0) * plan.im_mass * im_mean;
    est.stderr_value = std::sqrt((plan.re_mass * plan.re_mass * re_var +
                                  plan.im_mass * plan.im_mass * im_var) /
                                 static_cast<double>(n_samples));
    est.n_samples = n_samples;
    est.seed = seed;
    return est;
}

std::int64_t sample_count(double eps, double delta, double obs_norm) {
    if (!(eps > 0.0) || !(delta > 0.0) || delta >= 1.0 || !(obs_norm > 0.0)) {
        throw DomainError("sample_count: need eps > 0, 0 < delta < 1, obs_norm > 0");
    }
    double n = (obs_norm * obs_norm) / (eps * eps) * std::log(2.0 / delta);
    return static_cast<std::int64_t>(std::ceil(n));
}

}  // namespace lchs
