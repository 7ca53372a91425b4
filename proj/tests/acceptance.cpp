// Acceptance suite: one check per shipped guarantee, each printing a single
// [PASS]/[FAIL] line. Run with no arguments for everything, or select with
//   acceptance --criterion N [--preset NAME]     (N = 1..9)
#include <Eigen/Eigenvalues>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <memory>
#include <string>
#include <vector>

#include "rcd/config.hpp"
#include "rcd/engine.hpp"
#include "rcd/io.hpp"

using namespace rcd;

namespace {

int report(int criterion, bool pass, const std::string& what, const std::string& detail) {
    std::printf("[%s] criterion %d: %s — %s\n", pass ? "PASS" : "FAIL", criterion, what.c_str(),
                detail.c_str());
    std::fflush(stdout);
    return pass ? 0 : 1;
}

std::vector<const CostFunction*> view_of(const FunctionList& fs) {
    std::vector<const CostFunction*> v;
    v.reserve(fs.size());
    for (const auto& f : fs) v.push_back(f.get());
    return v;
}

double exact_seminorm_expectation(const Network& net, const Spectrum& spec,
                                  const std::vector<const CostFunction*>& fs, const Vector& x,
                                  const Vector& x_star, double h, int d) {
    double acc = 0.0;
    for (int k = 0; k < net.edge_count(); ++k) {
        Vector y = x;
        apply_rcd_update(net, fs, net.edges()[static_cast<std::size_t>(k)], h, y, d);
        acc += net.probabilities()[k] * seminorm_sq(spec, y - x_star, d);
    }
    return acc;
}

struct ContractionInstance {
    Network net;
    Spectrum spec;
    ConvexitySpec fspec;
    FunctionList fs;
    Vector b;
    Vector x;
    Vector x_star;
    double prior;
    int d;
};

// Shared harness of the per-step contraction checks: random connected
// topology, random edge probabilities, random piecewise quadratics, random
// feasible state.
ContractionInstance random_contraction_instance(RngStream& rng, bool homogeneous_uniform) {
    const int n = 2 + static_cast<int>(rng.uniform_index(7));  // [2, 8]
    const int d = 1 + static_cast<int>(rng.uniform_index(2));  // {1, 2}
    Vector a(n);
    for (int i = 0; i < n; ++i) a[i] = homogeneous_uniform ? 1.0 : rng.uniform(0.5, 5.0);
    Network net = Network::erdos_renyi(n, a, rng.uniform(0.3, 1.0), rng);
    if (!homogeneous_uniform) {
        Vector p(net.edge_count());
        for (Eigen::Index e = 0; e < p.size(); ++e) p[e] = rng.uniform(0.1, 1.0);
        p /= p.sum();
        net = net.with_probabilities(p);
    }
    Spectrum spec = build_spectrum(net);

    const double alpha = rng.uniform(0.5, 3.0);
    const ConvexitySpec fspec(alpha, alpha * rng.uniform(1.0, 8.0));
    const double c = rng.uniform(0.5, 2.0);
    FunctionList fs;
    for (int i = 0; i < n; ++i) {
        fs.push_back(std::make_shared<PiecewiseQuadratic>(sample_random_multi(rng, fspec, c, d)));
    }
    Vector b(d);
    for (int k = 0; k < d; ++k) b[k] = rng.uniform(-2.0, 2.0);

    SolveOptions opts;
    opts.tol = 1e-13;
    const Minimizer m = solve(fs, net.weights(), b, opts);

    Vector z(n * d);
    for (Eigen::Index i = 0; i < z.size(); ++i) z[i] = rng.uniform(-2.0, 2.0);
    const Vector x = m.x_star + project_feasible_zero(net.weights(), z, d);

    ContractionInstance inst{std::move(net), std::move(spec), fspec, std::move(fs),
                             std::move(b),   x,               m.x_star, 0.0, d};
    inst.prior = seminorm_sq(inst.spec, inst.x - inst.x_star, d);
    return inst;
}

// ---- criterion 1: the three-agent golden example --------------------------

int criterion1() {
    Vector p(2);
    p << 0.9, 0.1;
    const Network net = Network::line(3, Vector::Ones(3)).with_probabilities(p);
    const ConvexitySpec fspec(2.0, 100.0);
    FunctionList fs;
    fs.push_back(std::make_shared<PiecewiseQuadratic>(50.0, 50.0, 2.0, fspec));
    fs.push_back(std::make_shared<PiecewiseQuadratic>(20.0, 20.0, -2.0, fspec));
    fs.push_back(std::make_shared<PiecewiseQuadratic>(1.0, 1.0, -3.0, fspec));
    Vector b(1);
    b << -3.0;
    const Minimizer m = solve(fs, net.weights(), b);

    Vector x(3);
    x << 10.0, 7.0, -20.0;
    const double prior = (x - m.x_star).squaredNorm();

    double post = 0.0;
    const auto view = view_of(fs);
    for (int k = 0; k < net.edge_count(); ++k) {
        Vector y = x;
        apply_rcd_update(net, view, net.edges()[static_cast<std::size_t>(k)], 0.01, y, 1);
        post += net.probabilities()[k] * (y - m.x_star).squaredNorm();
    }

    char detail[160];
    std::snprintf(detail, sizeof(detail), "prior = %.12g (want 434), E[post] = %.12g (want 437.204 +- 0.005)",
                  prior, post);
    const bool pass = std::abs(prior - 434.0) <= 1e-9 && std::abs(post - 437.204) <= 0.005;
    return report(1, pass, "three-agent golden example, exact expected Euclidean post-error",
                  detail);
}

// ---- criterion 2: general-graph expected contraction -----------------------

int criterion2() {
    RngStream rng(20001);
    int violations = 0;
    double worst_slack = 1e300;
    for (int s = 0; s < 1000; ++s) {
        ContractionInstance inst = random_contraction_instance(rng, false);
        const double h_max = admissible_h_general(inst.spec.lambda2, inst.spec.lambda_n,
                                                  inst.fspec.alpha, inst.fspec.beta);
        const double h = rng.uniform(0.0, 1.0) * h_max;
        const double rate = closed_rate(inst.spec.lambda2, inst.spec.lambda_n, inst.fspec.alpha,
                                        inst.fspec.beta, h);
        const double post = exact_seminorm_expectation(inst.net, inst.spec, view_of(inst.fs),
                                                       inst.x, inst.x_star, h, inst.d);
        const double slack = rate * inst.prior - post;
        worst_slack = std::min(worst_slack, slack);
        if (slack < -1e-10) ++violations;
    }
    char detail[160];
    std::snprintf(detail, sizeof(detail), "violations = %d/1000, worst slack = %.3g", violations,
                  worst_slack);
    return report(2, violations == 0, "expected seminorm contraction on random instances", detail);
}

// ---- criterion 3: resistance-variant contraction (as stated) ---------------

int criterion3() {
    RngStream rng(30001);
    int rate_violations = 0;
    int resistance_violations = 0;
    double worst_slack = 1e300;
    double worst_r_excess = 0.0;
    for (int s = 0; s < 1000; ++s) {
        ContractionInstance inst = random_contraction_instance(rng, true);
        const double p = 1.0 / inst.net.edge_count();
        const double h_max =
            admissible_h_resistance(p, inst.spec.lambda_n, inst.fspec.alpha, inst.fspec.beta);
        const double h = rng.uniform(0.0, 1.0) * h_max;
        const double rate = closed_rate_resistance(p, inst.spec.lambda_n, inst.spec.lambda2,
                                                   inst.fspec.alpha, inst.fspec.beta, h);
        const double post = exact_seminorm_expectation(inst.net, inst.spec, view_of(inst.fs),
                                                       inst.x, inst.x_star, h, inst.d);
        const double slack = rate * inst.prior - post;
        worst_slack = std::min(worst_slack, slack);
        if (slack < -1e-10) ++rate_violations;

        for (const auto& e : inst.net.edges()) {
            const double r = effective_resistance(inst.spec, e);
            worst_r_excess = std::max(worst_r_excess, r * p);
            if (r > 1.0 / p * (1.0 + 1e-12)) ++resistance_violations;
        }
    }
    char detail[220];
    std::snprintf(detail, sizeof(detail),
                  "rate violations = %d/1000 (worst slack %.3g), edges with r > 1/p = %d "
                  "(max r*p = %.3g; r <= 2/p always holds)",
                  rate_violations, worst_slack, resistance_violations, worst_r_excess);
    return report(3, rate_violations == 0 && resistance_violations == 0,
                  "resistance-variant contraction and r <= 1/p on homogeneous-uniform graphs",
                  detail);
}

// ---- criteria 4 and 5: replacement jumps and minimizer containment ---------

struct ReplacementHarnessResult {
    int jump_violations = 0;
    int containment_violations = 0;
    double worst_ratio = 0.0;
};

ReplacementHarnessResult replacement_harness() {
    RngStream rng(40001);
    ReplacementHarnessResult out;
    for (int s = 0; s < 10000; ++s) {
        const int n = 2 + static_cast<int>(rng.uniform_index(5));  // [2, 6]
        Vector a(n);
        const bool homogeneous = rng.uniform01() < 0.5;
        for (int i = 0; i < n; ++i) a[i] = homogeneous ? 1.0 : rng.uniform(0.5, 10.0);
        const double alpha = rng.uniform(0.5, 4.0);
        const ConvexitySpec fspec(alpha, alpha * rng.uniform(1.0, 10.0));
        const double c = rng.uniform(0.5, 2.0);
        Vector b(1);
        b << rng.uniform(-2.0, 2.0);

        FunctionList fs;
        for (int i = 0; i < n; ++i) {
            fs.push_back(std::make_shared<PiecewiseQuadratic>(sample_random(rng, fspec, c)));
        }
        const Minimizer m1 = solve(fs, a, b);
        fs[rng.uniform_index(fs.size())] =
            std::make_shared<PiecewiseQuadratic>(sample_random(rng, fspec, c));
        const Minimizer m2 = solve(fs, a, b);

        const ProblemParams params = make_params(a, b, fspec, c);
        const auto bound = min_change_bound(params);
        const double jump = (m1.x_star - m2.x_star).squaredNorm();
        out.worst_ratio = std::max(out.worst_ratio, jump / bound.m_bar_sq);
        if (jump > bound.m_bar_sq * (1.0 + 1e-9)) ++out.jump_violations;

        const double radius = radius_global(params);
        const double lambda_cap = lambda_star_bound(params);
        for (const Minimizer* m : {&m1, &m2}) {
            if (m->x_star.norm() > radius * (1.0 + 1e-9)) ++out.containment_violations;
            if (m->lambda_star.norm() > lambda_cap * (1.0 + 1e-9)) ++out.containment_violations;
            for (int i = 0; i < n; ++i) {
                if (std::abs(m->x_star[i]) >
                    local_minimizer_bound(params, a[i]) * (1.0 + 1e-9)) {
                    ++out.containment_violations;
                }
            }
        }
    }
    return out;
}

MinChangeBound family_bound(int n, double kappa, bool hetero10) {
    Vector a = Vector::Ones(n);
    if (hetero10) a[0] = 10.0;
    return min_change_bound(
        make_params(a, Vector::Constant(1, 1.0), ConvexitySpec(2.0, 2.0 * kappa), 1.0));
}

int criterion4() {
    const ReplacementHarnessResult h = replacement_harness();

    // The homogeneous kappa = 50 family starts on psi, ends on theta, and
    // switches exactly once in between.
    bool shape_ok = true;
    {
        const auto first = family_bound(2, 50.0, false);
        shape_ok &= first.m_bar_sq == first.psi;
        const auto last = family_bound(200, 50.0, false);
        shape_ok &= last.m_bar_sq == last.theta;
        int crossover = -1;
        for (int n = 2; n <= 200; ++n) {
            const auto bound = family_bound(n, 50.0, false);
            if (bound.m_bar_sq != bound.psi) {
                crossover = n;
                break;
            }
        }
        shape_ok &= crossover > 2;
    }
    // Heterogeneous kappa = 2 with a_1 = 10: chi stays below theta on [2, 50].
    for (int n = 2; n <= 50; ++n) {
        const auto bound = family_bound(n, 2.0, true);
        shape_ok &= bound.chi <= bound.theta;
    }

    char detail[200];
    std::snprintf(detail, sizeof(detail),
                  "jump violations = %d/10000 (max jump/bound = %.3g), size-sweep shape %s",
                  h.jump_violations, h.worst_ratio, shape_ok ? "reproduced" : "broken");
    return report(4, h.jump_violations == 0 && shape_ok,
                  "single-replacement minimizer jumps below min(psi, chi, theta)", detail);
}

int criterion5() {
    const ReplacementHarnessResult h = replacement_harness();
    char detail[120];
    std::snprintf(detail, sizeof(detail), "containment violations = %d (radius, dual, per-agent)",
                  h.containment_violations);
    return report(5, h.containment_violations == 0,
                  "minimizer-location bounds hold on criterion-4 instances", detail);
}

// ---- criterion 6: open-system dominance on the figure presets --------------

int criterion6(const std::string& preset_name) {
    int failures = 0;
    for (const std::string policy : {"random", "adversarial"}) {
        ExperimentConfig cfg = preset(preset_name);
        cfg.policy = policy;
        const ResolvedExperiment r = resolve(cfg);

        const auto trajectories = run_ensemble(r.sys, r.events, r.functions0, r.x0, cfg.horizon,
                                               cfg.realizations, cfg.threads);
        const auto stats = ensemble_stats(trajectories);
        const double c0 = stats.mean_seminorm_sq.front();
        const auto env = envelope_curve(r.opt.a_eta, r.opt.gamma_eta, c0, cfg.horizon);

        std::size_t exceed = 0;
        double worst_ratio = 0.0;
        for (std::size_t k = 0; k < env.size(); ++k) {
            worst_ratio = std::max(worst_ratio, stats.mean_seminorm_sq[k] / env[k]);
            if (stats.mean_seminorm_sq[k] > env[k] * (1.0 + 1e-12) + 1e-12) ++exceed;
        }
        const std::size_t tail_start = env.size() - env.size() / 10;
        double tail = 0.0;
        for (std::size_t k = tail_start; k < env.size(); ++k) tail += stats.mean_seminorm_sq[k];
        tail /= static_cast<double>(env.size() - tail_start);

        const bool pass = exceed == 0 && tail < r.opt.gamma_eta;
        failures += pass ? 0 : 1;
        char detail[220];
        std::snprintf(detail, sizeof(detail),
                      "%s/%s: mean above envelope at %zu/%zu events (max mean/env = %.3g), "
                      "tail mean %.4g vs Gamma %.4g",
                      preset_name.c_str(), policy.c_str(), exceed, env.size(), worst_ratio, tail,
                      r.opt.gamma_eta);
        report(6, pass, "ensemble mean dominated by the theoretical envelope", detail);
    }
    return failures;
}

// ---- criterion 7: seminorm is a norm on the homogeneous feasible set -------

int criterion7() {
    RngStream rng(70001);
    int positivity_violations = 0;
    int kernel_violations = 0;
    int checked = 0;
    while (checked < 10000) {
        const int n = 2 + static_cast<int>(rng.uniform_index(7));
        const int d = 1 + static_cast<int>(rng.uniform_index(3));
        Vector a(n);
        for (int i = 0; i < n; ++i) a[i] = rng.uniform(0.5, 5.0);
        const Network net = Network::erdos_renyi(n, a, rng.uniform(0.4, 1.0), rng);
        const Spectrum spec = build_spectrum(net);
        for (int t = 0; t < 50 && checked < 10000; ++t, ++checked) {
            Vector z(n * d);
            for (Eigen::Index i = 0; i < z.size(); ++i) z[i] = rng.uniform(-1.0, 1.0);
            const Vector zp = project_feasible_zero(a, z, d);
            if (zp.norm() >= 1e-6 && !(seminorm_sq(spec, zp, d) > 0.0)) ++positivity_violations;

            Vector w(d);
            for (int c = 0; c < d; ++c) w[c] = rng.uniform(-2.0, 2.0);
            Vector kernel(n * d);
            for (int i = 0; i < n; ++i) kernel.segment(i * d, d) = a[i] * w;
            if (!(seminorm_sq(spec, kernel, d) < 1e-18)) ++kernel_violations;
        }
    }
    char detail[160];
    std::snprintf(detail, sizeof(detail),
                  "positivity violations = %d/10000, kernel leakage >= 1e-18 in %d/10000",
                  positivity_violations, kernel_violations);
    return report(7, positivity_violations == 0 && kernel_violations == 0,
                  "pseudoinverse seminorm is positive definite on the feasible difference set",
                  detail);
}

// ---- criterion 8: spectral identities ---------------------------------------

int criterion8() {
    bool complete_ok = true;
    for (int n = 2; n <= 20; ++n) {
        const Spectrum spec = build_spectrum(Network::complete(n, Vector::Ones(n)));
        const double target = 1.0 / (n - 1);
        complete_ok &= std::abs(spec.lambda2 - target) <= 1e-10;
        complete_ok &= std::abs(spec.lambda_n - target) <= 1e-10;
    }

    bool kron_ok = true;
    RngStream rng(80001);
    for (int n = 2; n <= 6; ++n) {
        Vector a(n);
        for (int i = 0; i < n; ++i) a[i] = rng.uniform(0.5, 4.0);
        const Network net = Network::erdos_renyi(n, a, 0.8, rng);
        const Spectrum spec = build_spectrum(net);
        for (int d = 1; d <= 3; ++d) {
            Matrix lifted = Matrix::Zero(n * d, n * d);
            for (int i = 0; i < n; ++i) {
                for (int j = 0; j < n; ++j) {
                    for (int c = 0; c < d; ++c) lifted(i * d + c, j * d + c) = spec.lp(i, j);
                }
            }
            const Vector eig = Eigen::SelfAdjointEigenSolver<Matrix>(lifted).eigenvalues();
            for (int i = 0; i < n; ++i) {
                for (int c = 0; c < d; ++c) {
                    kron_ok &= std::abs(eig[i * d + c] - spec.eigenvalues[i]) <= 1e-10;
                }
            }
        }
    }
    char detail[160];
    std::snprintf(detail, sizeof(detail), "complete-graph eigenvalues %s, Kronecker multiplicity %s",
                  complete_ok ? "match 1/(n-1)" : "broken", kron_ok ? "verified" : "broken");
    return report(8, complete_ok && kron_ok, "spectral identities", detail);
}

// ---- criterion 9: optimal eta -----------------------------------------------

int criterion9() {
    RngStream rng(90001);
    int failures = 0;
    for (int s = 0; s < 100; ++s) {
        OpenParams op;
        op.lambda2 = rng.uniform(0.02, 0.8);
        op.lambda_n = rng.uniform(op.lambda2, 1.0);
        op.alpha = rng.uniform(0.5, 3.0);
        const double beta = op.alpha * rng.uniform(1.0, 8.0);
        op.h = rng.uniform(0.2, 1.0) *
               admissible_h_general(op.lambda2, op.lambda_n, op.alpha, beta);
        op.m_bar = rng.uniform(0.1, 20.0);
        op.p_u = rng.uniform(0.5, 0.999);

        const double bar = eta_bar(op);
        const auto opt = eta_star(op);
        if (!(opt.a_eta < 1.0)) ++failures;
        for (int g = 1; g <= 100; ++g) {
            const double eta = bar * (1.0 + 9.0 * g / 100.0);
            const OpenBound ob = open_bound(op, eta);
            if (ob.divergent || ob.gamma_eta < opt.gamma_eta * (1.0 - 1e-10)) ++failures;
        }

        // closed-system limit
        OpenParams closed = op;
        closed.p_u = 1.0;
        const auto copt = eta_star(closed);
        const double closed_rate_value =
            closed_rate(op.lambda2, op.lambda_n, op.alpha, beta, op.h);
        if (copt.gamma_eta != 0.0) ++failures;
        if (std::abs(copt.a_eta - closed_rate_value) > 1e-12) ++failures;
    }
    char detail[80];
    std::snprintf(detail, sizeof(detail), "failures = %d over 100 parameter draws", failures);
    return report(9, failures == 0, "eta* minimizes Gamma and meets the closed-system limit",
                  detail);
}

}  // namespace

int main(int argc, char** argv) {
    int criterion = 0;
    std::string preset_name;
    for (int i = 1; i < argc; ++i) {
        if (std::strcmp(argv[i], "--criterion") == 0 && i + 1 < argc) {
            criterion = std::atoi(argv[++i]);
        } else if (std::strcmp(argv[i], "--preset") == 0 && i + 1 < argc) {
            preset_name = argv[++i];
        } else {
            std::fprintf(stderr, "usage: acceptance [--criterion N] [--preset NAME]\n");
            return 2;
        }
    }

    int failures = 0;
    const auto want = [&](int n) { return criterion == 0 || criterion == n; };
    if (want(1)) failures += criterion1();
    if (want(2)) failures += criterion2();
    if (want(3)) failures += criterion3();
    if (want(4)) failures += criterion4();
    if (want(5)) failures += criterion5();
    if (want(6)) {
        if (!preset_name.empty()) {
            failures += criterion6(preset_name);
        } else {
            for (const char* name : {"fig3-left", "fig3-right", "fig4-ring", "fig4-hetero"}) {
                failures += criterion6(name);
            }
        }
    }
    if (want(7)) failures += criterion7();
    if (want(8)) failures += criterion8();
    if (want(9)) failures += criterion9();
    return failures;
}
