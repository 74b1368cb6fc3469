#include "selftest.hpp"

#include <cmath>
#include <sstream>
#include <vector>

#include "gauss.hpp"
#include "generators.hpp"
#include "gibbs.hpp"
#include "grid.hpp"
#include "io.hpp"
#include "kernels.hpp"
#include "linalg.hpp"
#include "propagator.hpp"
#include "resource.hpp"
#include "sampler.hpp"
#include "solver.hpp"
#include "util.hpp"

namespace lchs {

namespace {

struct Harness {
    const std::function<void(const std::string&)>& report;
    int failures = 0;

    void check(const std::string& name, bool ok, const std::string& detail = "") {
        if (ok) {
            report("ok   " + name);
        } else {
            ++failures;
            report("FAIL " + name + (detail.empty() ? "" : ": " + detail));
        }
    }

    void run(const std::string& name, const std::function<void(Harness&)>& body) {
        try {
            body(*this);
        } catch (const std::exception& e) {
            ++failures;
            report("FAIL " + name + ": threw " + e.what());
        }
    }
};

void linalg_checks(Harness& h) {
    Matrix a = random_hermitian(5, 11) + Complex(0.0, 1.0) * random_hermitian(5, 12);
    HermitianPair pair = cartesian_split(a);
    Matrix rebuilt = pair.l + Complex(0.0, 1.0) * pair.h;
    h.check("cartesian reconstruction", (rebuilt - a).cwiseAbs().maxCoeff() <= 1e-13);
    h.check("cartesian parts Hermitian",
            is_hermitian(pair.l, 1e-13) && is_hermitian(pair.h, 1e-13));

    Matrix one(1, 1);
    one(0, 0) = -1.0;
    h.check("expm scalar", std::abs(expm(one)(0, 0) - std::exp(-1.0)) <= 1e-14);

    // dominance of the Hermitian part for constant coefficients
    HermitianPair lh = random_unit_pair(4, 21);
    Matrix full = lh.l + Complex(0.0, 1.0) * lh.h;
    bool dominated = true;
    for (double t : {0.1, 1.0, 5.0}) {
        double lhs = spectral_norm(expm(-t * full));
        double rhs = spectral_norm(expm(-t * lh.l));
        if (lhs > rhs + 1e-10) dominated = false;
    }
    h.check("norm dominance exp(-At) vs exp(-Lt)", dominated);
}

void oracle_checks(Harness& h) {
    OdeProblem p = make_named_problem("td-psd", 3, 5, 1.0);
    Matrix prop = time_ordered_propagator(p.a, 0.0, p.horizon_T, 1e-8);
    h.check("oracle contractivity", spectral_norm(prop) <= 1.0 + 1e-10,
            "norm " + format_double(spectral_norm(prop)));

    Matrix u = unitary_evolution(p.a, 2.5, 0.0, p.horizon_T, 1e-8);
    Matrix gap = u.adjoint() * u - Matrix::Identity(3, 3);
    h.check("evolution unitarity", spectral_norm(gap) <= 1e-7);
}

void kernel_checks(Harness& h) {
    std::vector<KernelSpec> specs = {
        KernelSpec::beta_exponential(0.3), KernelSpec::beta_exponential(0.5),
        KernelSpec::beta_exponential(0.7), KernelSpec::beta_exponential(0.8),
        KernelSpec::beta_exponential(0.9), KernelSpec::cauchy()};
    for (const KernelSpec& spec : specs) {
        double kmax = suggest_kmax(spec, 1e-8, 0.0);
        double residual = verify_normalization(spec, kmax, 1e-8);
        h.check("normalization " + spec.label(), residual < 1e-8, format_double(residual));
    }
    for (const KernelSpec& spec :
         {KernelSpec::beta_exponential(0.75), KernelSpec::cauchy()}) {
        for (double x : {0.0, 0.5, 1.0, 2.0, 5.0}) {
            Complex ft = fourier_check(spec, x, 1e-6);
            bool ok = std::abs(ft - std::exp(-x)) < 1e-6 && std::abs(ft.imag()) < 1e-8;
            h.check("fourier " + spec.label() + " x=" + format_double(x), ok);
        }
    }
}

void grid_checks(Harness& h) {
    GaussLegendreRule rule = gauss_legendre(7);
    CompensatedSum<double> wsum;
    for (double w : rule.weights) wsum.add(w);
    h.check("gauss weights sum to 2", std::abs(wsum.value() - 2.0) <= 1e-13);

    const double beta = 0.75;
    double k = select_truncation_k(beta, 1e-6);
    QuadratureParams qp = select_quadrature_params(1.0, 1.0, k, beta, 1e-6);
    QuadratureGrid grid = build_grid(KernelSpec::beta_exponential(beta), k, qp.step_h1,
                                     qp.order_q);
    h.check("grid node count", grid.total_m == grid.nodes.size() &&
                                   grid.total_m == 2 * grid.panels_per_side() *
                                                       static_cast<std::size_t>(grid.order_q));
    double one_norm = coefficient_one_norm(grid);
    double oracle = integrate_adaptive_real(
        [&](double kk) { return std::abs(g_eval(grid.spec, kk)); },
        graded_segments(-grid.trunc_k, grid.trunc_k), 1e-8);
    h.check("coefficient one-norm within oracle margin", one_norm <= oracle + 0.01,
            format_double(one_norm) + " vs " + format_double(oracle));

    // scalar reconstruction at the selected parameters
    double worst = 0.0;
    for (double x : {0.0, 0.5, 1.0}) {
        ComplexCompensatedSum s;
        for (std::size_t j = 0; j < grid.total_m; ++j) {
            s.add(grid.coeffs[j] * std::exp(Complex(0.0, -grid.nodes[j] * x)));
        }
        worst = std::max(worst, std::abs(s.value() - std::exp(-x)));
    }
    h.check("scalar reconstruction at selected parameters", worst <= 1e-6,
            format_double(worst));
}

void solver_checks(Harness& h) {
    OdeProblem p = make_named_problem("constant-psd", 3, 31, 0.4);
    double k = select_truncation_k(0.75, 1e-3);
    QuadratureParams qp = select_quadrature_params(p.horizon_T, 1.0, k, 0.75, 1e-3);
    QuadratureGrid grid = build_grid(KernelSpec::beta_exponential(0.75), k, qp.step_h1,
                                     qp.order_q);
    SolveReport rep = solve_homogeneous(p, grid, default_ham_tol(1e-3, grid), 1e-5);
    h.check("homogeneous solve within target", rep.abs_error <= 1e-3,
            format_double(rep.abs_error));

    Matrix prop = approx_propagator(p, grid, default_ham_tol(1e-3, grid));
    h.check("approximate propagator contractivity", spectral_norm(prop) <= 1.0 + 2e-3,
            format_double(spectral_norm(prop)));
}

void gibbs_checks(Harness& h) {
    Matrix l = random_psd_unit(4, 17);
    double gamma = 1.0;
    double k = select_truncation_k(0.75, 5e-4);
    QuadratureParams qp = select_quadrature_params(gamma / 2.0, 1.0, k, 0.75, 5e-4);
    QuadratureGrid grid = build_grid(KernelSpec::beta_exponential(0.75), k, qp.step_h1,
                                     qp.order_q);
    GibbsResult res = prepare_purified_gibbs(l, gamma, grid, 1e-6);
    h.check("gibbs trace distance", res.trace_distance_to_exact <= 1e-3,
            format_double(res.trace_distance_to_exact));
    h.check("gibbs density trace", std::abs(res.density.trace().real() - 1.0) <= 1e-10);
    double expected = std::sqrt(res.partition_z / 4.0);
    h.check("gibbs purified norm", std::abs(res.unnormalized_norm - expected) <= 1e-3);
}

void sampler_checks(Harness& h) {
    OdeProblem p = make_named_problem("scalar-decay", 1, 1, 1.0);
    QuadratureGrid grid = build_grid(KernelSpec::beta_exponential(0.75), 12.0, 1.0 / M_E, 6);
    Matrix obs = Matrix::Identity(1, 1);
    PairContext ctx = build_pair_context(p, grid, obs, 1e-9);
    SamplingPlan plan = build_plan(grid);
    Complex direct = expectation_direct(grid, ctx);
    Complex via_plan = expectation_from_plan(plan, grid, ctx);
    h.check("plan enumeration matches direct sum", std::abs(direct - via_plan) <= 1e-10,
            format_double(std::abs(direct - via_plan)));
    h.check("hermitian observable gives real enumeration",
            std::abs(direct.imag()) <= 1e-8, format_double(direct.imag()));
    h.check("sample_count example", sample_count(0.1, 0.05, 1.0) == 369);
}

void resource_checks(Harness& h) {
    CostInput in;
    in.beta = 0.75;
    ResourceEstimate a = homogeneous_cost(in);
    CostInput tighter = in;
    tighter.eps = in.eps / 10.0;
    ResourceEstimate b = homogeneous_cost(tighter);
    h.check("cost monotone in eps",
            b.matrix_queries >= a.matrix_queries && b.grid_m >= a.grid_m);

    CostInput inh = in;
    inh.b_l1 = 0.0;
    ResourceEstimate c = inhomogeneous_cost(inh);
    h.check("inhomogeneous reduces to homogeneous at b=0",
            std::abs(c.matrix_queries - a.matrix_queries) <= 1e-9 && c.grid_m == a.grid_m &&
                std::abs(c.state_prep_queries - a.state_prep_queries) <= 1e-12);

    // analytic grid size against an actually built grid
    double k = select_truncation_k(in.beta, in.eps / (in.norm_u0 / in.norm_ut));
    QuadratureParams qp = select_quadrature_params(in.horizon_t, in.alpha_l, k, in.beta,
                                                   in.eps);
    QuadratureGrid grid = build_grid(KernelSpec::beta_exponential(in.beta), k, qp.step_h1,
                                     qp.order_q);
    h.check("estimator grid_m matches built grid",
            static_cast<long long>(grid.total_m) == a.grid_m,
            std::to_string(grid.total_m) + " vs " + std::to_string(a.grid_m));
}

}  // namespace

int run_selftest(const std::function<void(const std::string&)>& report) {
    Harness h{report};
    h.run("linalg", linalg_checks);
    h.run("oracles", oracle_checks);
    h.run("kernels", kernel_checks);
    h.run("grid", grid_checks);
    h.run("solver", solver_checks);
    h.run("gibbs", gibbs_checks);
    h.run("sampler", sampler_checks);
    h.run("resource", resource_checks);
    return h.failures;
}

}  // namespace lchs
