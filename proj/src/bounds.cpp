#include "rcd/bounds.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace rcd {

namespace {
constexpr Scalar kInf = std::numeric_limits<Scalar>::infinity();
constexpr Scalar kHTol = 1e-12;  // slack for range checks at the endpoints
}  // namespace

WeightStats weight_stats(const Vector& a) {
    if (a.size() < 1 || (a.array() <= 0.0).any()) {
        throw std::invalid_argument("weight_stats: weights must be positive");
    }
    WeightStats s;
    s.norm = a.norm();
    s.one_norm = a.lpNorm<1>();
    s.a_plus = a.maxCoeff();
    s.a_minus = a.minCoeff();
    return s;
}

ProblemParams make_params(const Vector& a, const Vector& b, const ConvexitySpec& spec, Scalar c) {
    if (c < 0.0) throw std::invalid_argument("make_params: c must be >= 0");
    ProblemParams p;
    p.n = static_cast<int>(a.size());
    p.d = static_cast<int>(b.size());
    p.alpha = spec.alpha;
    p.beta = spec.beta;
    p.c = c;
    p.b_norm = b.norm();
    p.a = weight_stats(a);
    return p;
}

Scalar radius_global(const ProblemParams& p) {
    const Scalar n = static_cast<Scalar>(p.n);
    const Scalar k = p.kappa();
    return std::sqrt(n * k) * (p.c + p.c / std::sqrt(k) + p.b_norm / (std::sqrt(n) * p.a.norm));
}

Scalar lambda_star_bound(const ProblemParams& p) {
    return p.beta * (p.b_norm + p.c * p.a.one_norm) / (p.a.norm * p.a.norm);
}

Scalar local_minimizer_bound(const ProblemParams& p, Scalar a_i) {
    return a_i * p.kappa() * (p.b_norm + p.c * p.a.one_norm) / (p.a.norm * p.a.norm) + p.c;
}

MinChangeBound min_change_bound(const ProblemParams& p) {
    if (p.n < 2) throw std::invalid_argument("min_change_bound: requires n >= 2");
    const Scalar k = p.kappa();
    const Scalar r = radius_global(p);
    const Scalar x_plus = local_minimizer_bound(p, p.a.a_plus);

    MinChangeBound out;
    out.psi = 4.0 * r * r;  // = 4 n kappa (c + c/sqrt(k) + ||b||/(sqrt(n)||a||))^2
    out.chi = 8.0 * x_plus * x_plus;
    out.theta = 4.0 * (1.0 + (k + 1.0) * (k + 1.0) / (4.0 * k) * p.a.rho_a()) * x_plus * x_plus;
    out.m_bar_sq = std::min(out.psi, std::min(out.chi, out.theta));
    return out;
}

// ---- closed-system rates ---------------------------------------------------

Scalar admissible_h_general(Scalar lambda2, Scalar lambda_n, Scalar alpha, Scalar beta) {
    return (lambda2 / lambda_n) * 2.0 / (alpha + beta);
}

Scalar closed_rate(Scalar lambda2, Scalar lambda_n, Scalar alpha, Scalar beta, Scalar h) {
    const Scalar h_max = admissible_h_general(lambda2, lambda_n, alpha, beta);
    if (h < 0.0 || h > h_max * (1.0 + kHTol)) {
        throw std::domain_error("closed_rate: step-size outside admissible range");
    }
    return 1.0 - 2.0 * h * alpha * lambda2 + h * h * alpha * alpha * lambda_n;
}

OptimalStep optimal_h_general(Scalar lambda2, Scalar lambda_n, Scalar alpha, Scalar beta) {
    OptimalStep s;
    s.h = 2.0 * lambda2 / ((alpha + beta) * lambda_n);
    s.rate = 1.0 - (lambda2 * lambda2 / lambda_n) * (alpha / beta);
    return s;
}

Scalar admissible_h_resistance(Scalar p_uniform, Scalar lambda_n, Scalar alpha, Scalar beta) {
    return (2.0 * p_uniform / lambda_n) * 2.0 / (alpha + beta);
}

Scalar closed_rate_resistance(Scalar p_uniform, Scalar lambda_n, Scalar lambda2, Scalar alpha,
                              Scalar beta, Scalar h) {
    const Scalar h_max = admissible_h_resistance(p_uniform, lambda_n, alpha, beta);
    if (h < 0.0 || h > h_max * (1.0 + kHTol)) {
        throw std::domain_error("closed_rate_resistance: step-size outside admissible range");
    }
    return 1.0 - 2.0 * h * alpha * lambda2 +
           h * h * alpha * alpha * lambda2 * lambda_n / (2.0 * p_uniform);
}

OptimalStep optimal_h_resistance(Scalar p_uniform, Scalar lambda_n, Scalar lambda2, Scalar alpha,
                                 Scalar beta) {
    OptimalStep s;
    s.h = 4.0 * p_uniform / ((alpha + beta) * lambda_n);
    s.rate = 1.0 - (2.0 * p_uniform * lambda2 / lambda_n) * (alpha / beta);
    return s;
}

std::pair<Scalar, Scalar> alt_rate_range(Scalar lambda2, Scalar lambda_n, Scalar alpha,
                                         Scalar beta) {
    const Scalar lo = admissible_h_general(lambda2, lambda_n, alpha, beta);
    const Scalar kappa_inv = alpha / beta;
    const Scalar kappa_l = lambda_n / lambda2;
    const Scalar hi =
        (kappa_inv + kappa_l) / (kappa_inv + 1.0) * lambda2 / (lambda_n * lambda_n * beta);
    return {lo, hi};
}

Scalar alt_rate(Scalar lambda2, Scalar lambda_n, Scalar alpha, Scalar beta, Scalar h) {
    const auto [lo, hi] = alt_rate_range(lambda2, lambda_n, alpha, beta);
    if (h < lo * (1.0 - kHTol) || h > hi * (1.0 + kHTol)) {
        throw std::domain_error("alt_rate: step-size outside admissible range");
    }
    return 1.0 - 2.0 * beta * lambda2 * h + h * h * beta * beta * lambda_n * lambda_n / lambda2;
}

// ---- open-system bounds ------------------------------------------------------

Scalar OpenParams::m() const {
    if (!(lambda2 > 0.0)) throw std::domain_error("OpenParams::m: lambda2 must be positive");
    return m_mode == MMode::paper ? m_bar / lambda2 : m_bar / std::sqrt(lambda2);
}

namespace {

// Shared core of the open-system recursion, parametrized by the per-update
// gain 1 - K.
OpenBound open_bound_core(Scalar gain, Scalar p_u, Scalar m, Scalar eta) {
    if (!(eta > 0.0)) throw std::invalid_argument("open_bound: eta must be positive");
    const Scalar p_r = 1.0 - p_u;

    OpenBound out;
    out.a_eta = 1.0 - p_u * gain + p_r * m / eta;
    const Scalar denom = p_u * eta * gain - p_r * m;
    if (denom <= 0.0) {
        out.divergent = true;
        out.gamma_eta = kInf;
    } else {
        out.gamma_eta = p_r * m * (eta + m) * eta / denom;
    }
    return out;
}

Scalar eta_bar_core(Scalar gain, Scalar p_u, Scalar m) {
    if (!(gain > 0.0)) throw std::domain_error("eta_bar: step-size gives no closed-system gain");
    return (1.0 - p_u) / p_u * m / gain;
}

OptimalEta eta_star_core(Scalar gain, Scalar p_u, Scalar m) {
    OptimalEta out;
    if (p_u >= 1.0) {
        // Closed system: no replacements, zero asymptotic level.
        out.eta = 0.0;
        out.a_eta = 1.0 - gain;
        out.gamma_eta = 0.0;
        return out;
    }
    const Scalar bar = eta_bar_core(gain, p_u, m);
    const Scalar root = std::sqrt(1.0 + m / bar);
    out.eta = bar * (1.0 + root);
    out.a_eta = 1.0 - p_u * gain * root / (1.0 + root);
    out.gamma_eta = out.eta * out.eta;
    return out;
}

}  // namespace

OpenBound open_bound(const OpenParams& op, Scalar eta) {
    return open_bound_core(op.closed_gain(), op.p_u, op.m(), eta);
}

Scalar eta_bar(const OpenParams& op) { return eta_bar_core(op.closed_gain(), op.p_u, op.m()); }

OptimalEta eta_star(const OpenParams& op) {
    return eta_star_core(op.closed_gain(), op.p_u, op.m());
}

OpenBound open_bound_generic(Scalar k_rate, Scalar p_u, Scalar m, Scalar eta) {
    if (k_rate >= 1.0) {
        throw std::domain_error("open_bound_generic: need contraction factor K < 1");
    }
    return open_bound_core(1.0 - k_rate, p_u, m, eta);
}

Scalar eta_bar_generic(Scalar k_rate, Scalar p_u, Scalar m) {
    if (k_rate >= 1.0) {
        throw std::domain_error("eta_bar_generic: need contraction factor K < 1");
    }
    return eta_bar_core(1.0 - k_rate, p_u, m);
}

OptimalEta eta_star_generic(Scalar k_rate, Scalar p_u, Scalar m) {
    if (k_rate >= 1.0) {
        throw std::domain_error("eta_star_generic: need contraction factor K < 1");
    }
    return eta_star_core(1.0 - k_rate, p_u, m);
}

}  // namespace rcd
