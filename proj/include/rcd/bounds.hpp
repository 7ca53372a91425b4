#pragma once

#include <utility>

#include "rcd/types.hpp"

namespace rcd {

/// Weight-vector summary statistics used throughout the bounds.
struct WeightStats {
    Scalar norm{1.0};      // ||a||
    Scalar one_norm{1.0};  // ||a||_1
    Scalar a_plus{1.0};    // max_i a_i
    Scalar a_minus{1.0};   // min_i a_i

    /// a_+^2 / (||a||^2 - a_+^2); defined only for n >= 2.
    [[nodiscard]] Scalar rho_a() const {
        const Scalar denom = norm * norm - a_plus * a_plus;
        if (!(denom > 0.0)) throw std::domain_error("rho_a: requires ||a||^2 > a_+^2 (n >= 2)");
        return a_plus * a_plus / denom;
    }
};

WeightStats weight_stats(const Vector& a);

/// Problem-level parameters feeding the closed-form bounds. All formulas use
/// only ||b||, so the budget enters as its Euclidean norm.
struct ProblemParams {
    int n{2};
    int d{1};
    Scalar alpha{1.0};
    Scalar beta{1.0};
    Scalar c{1.0};       // minimizer ball radius
    Scalar b_norm{0.0};  // ||b||
    WeightStats a;

    [[nodiscard]] Scalar kappa() const { return beta / alpha; }
};

ProblemParams make_params(const Vector& a, const Vector& b, const ConvexitySpec& spec, Scalar c);

/// Ball radius containing the constrained minimizer:
///   R = sqrt(n kappa) (c + c/sqrt(kappa) + ||b|| / (sqrt(n) ||a||)).
Scalar radius_global(const ProblemParams& p);

/// Dual multiplier bound  beta (||b|| + c ||a||_1) / ||a||^2.
Scalar lambda_star_bound(const ProblemParams& p);

/// Per-agent minimizer bound  a_i kappa (||b|| + c ||a||_1) / ||a||^2 + c.
Scalar local_minimizer_bound(const ProblemParams& p, Scalar a_i);

/// The three single-replacement minimizer-change bounds and their minimum,
/// which bounds ||x_before* - x_after*||^2.
struct MinChangeBound {
    Scalar psi{0};
    Scalar chi{0};
    Scalar theta{0};
    Scalar m_bar_sq{0};  // min(psi, chi, theta)
};

MinChangeBound min_change_bound(const ProblemParams& p);

// ---- closed-system contraction rates -------------------------------------

/// Largest admissible step for the general-graph rate: (lambda2/lambda_n) * 2/(alpha+beta).
Scalar admissible_h_general(Scalar lambda2, Scalar lambda_n, Scalar alpha, Scalar beta);

/// Expected one-step contraction factor of the squared pseudoinverse seminorm,
///   1 - 2 h alpha lambda2 + h^2 alpha^2 lambda_n,
/// valid for 0 < h <= admissible_h_general. Throws outside that range.
Scalar closed_rate(Scalar lambda2, Scalar lambda_n, Scalar alpha, Scalar beta, Scalar h);

struct OptimalStep {
    Scalar h{0};
    Scalar rate{0};
};

/// Right-endpoint step h* = 2 lambda2 / ((alpha+beta) lambda_n) and the
/// guaranteed factor 1 - (lambda2^2/lambda_n)/kappa at that step.
OptimalStep optimal_h_general(Scalar lambda2, Scalar lambda_n, Scalar alpha, Scalar beta);

/// Effective-resistance variant for homogeneous weights and uniform edge
/// probability p. Admissible range (2p/lambda_n) * 2/(alpha+beta); factor
///   1 - 2 h alpha lambda2 + h^2 alpha^2 lambda2 lambda_n / (2p).
Scalar admissible_h_resistance(Scalar p_uniform, Scalar lambda_n, Scalar alpha, Scalar beta);
Scalar closed_rate_resistance(Scalar p_uniform, Scalar lambda_n, Scalar lambda2, Scalar alpha,
                              Scalar beta, Scalar h);
/// h* = 4p / ((alpha+beta) lambda_n) with factor 1 - (2 p lambda2 / lambda_n)/kappa.
OptimalStep optimal_h_resistance(Scalar p_uniform, Scalar lambda_n, Scalar lambda2, Scalar alpha,
                                 Scalar beta);

/// Step range of the alternative (large-step) rate. May be empty for
/// well-connected spectra; callers should check lo <= hi.
std::pair<Scalar, Scalar> alt_rate_range(Scalar lambda2, Scalar lambda_n, Scalar alpha,
                                         Scalar beta);

/// Alternative factor 1 - 2 beta lambda2 h + h^2 beta^2 lambda_n^2 / lambda2,
/// valid on alt_rate_range. Throws outside it.
Scalar alt_rate(Scalar lambda2, Scalar lambda_n, Scalar alpha, Scalar beta, Scalar h);

// ---- open-system bounds ---------------------------------------------------

enum class MMode {
    paper,        // M = m_bar / lambda2 (conservative default)
    sqrt_lambda2  // M = m_bar / sqrt(lambda2) (the sharper seminorm-level constant)
};

/// Parameters of the open-system recursion. m() converts the Euclidean
/// minimizer-jump bound m_bar into the seminorm-level constant.
struct OpenParams {
    Scalar p_u{1.0};
    Scalar h{0.0};
    Scalar lambda2{0.0};
    Scalar lambda_n{0.0};
    Scalar alpha{1.0};
    Scalar m_bar{0.0};  // sqrt of min_change_bound().m_bar_sq
    MMode m_mode{MMode::paper};

    [[nodiscard]] Scalar m() const;
    [[nodiscard]] Scalar rho_r() const { return (1.0 - p_u) / p_u; }
    /// alpha h (2 lambda2 - alpha lambda_n h), the closed-system gain.
    [[nodiscard]] Scalar closed_gain() const { return alpha * h * (2.0 * lambda2 - alpha * lambda_n * h); }
};

/// One-step factor A_eta and asymptotic level Gamma_eta of the open-system
/// recursion. For eta <= eta_bar the level is undefined: `divergent` is set
/// and gamma_eta is +inf (a reportable regime, not an error).
struct OpenBound {
    Scalar a_eta{0};
    Scalar gamma_eta{0};
    bool divergent{false};
};

OpenBound open_bound(const OpenParams& op, Scalar eta);

/// Threshold eta_bar = rho_R M / (alpha h (2 lambda2 - lambda_n alpha h));
/// any eta > eta_bar gives A_eta < 1.
Scalar eta_bar(const OpenParams& op);

struct OptimalEta {
    Scalar eta{0};
    Scalar a_eta{0};
    Scalar gamma_eta{0};  // equals eta^2
};

/// The eta minimizing Gamma: eta* = eta_bar (1 + sqrt(1 + M/eta_bar)).
/// In the closed-system limit p_u = 1 this degenerates to eta* = 0,
/// Gamma = 0 and A = closed rate.
OptimalEta eta_star(const OpenParams& op);

/// Generic variant for any algorithm contracting the squared seminorm by K < 1
/// per update (the RCD bound is the special case K = 1 - alpha h (2 lambda2 -
/// alpha lambda_n h)):
///   A_eta = 1 - p_u (1-K) + (1-p_u) M/eta,
///   Gamma_eta = (1-p_u) M (eta+M) eta / (p_u eta (1-K) - (1-p_u) M).
/// Throws for K >= 1 (no contraction).
OpenBound open_bound_generic(Scalar k_rate, Scalar p_u, Scalar m, Scalar eta);
Scalar eta_bar_generic(Scalar k_rate, Scalar p_u, Scalar m);
OptimalEta eta_star_generic(Scalar k_rate, Scalar p_u, Scalar m);

}  // namespace rcd
