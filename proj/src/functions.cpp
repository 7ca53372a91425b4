#include "rcd/functions.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

namespace rcd {

namespace {

// Curvature bounds are checked with a small slack so that values produced by
// sampling exactly at the interval ends round-trip through text.
constexpr Scalar kPhiTol = 1e-12;

std::string format_scalar(Scalar v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

}  // namespace

PiecewiseQuadratic::PiecewiseQuadratic(Scalar phi1, Scalar phi2, Vector nu, ConvexitySpec spec)
    : CostFunction(spec, std::move(nu)), phi1_(phi1), phi2_(phi2) {
    if (dim() < 1) throw std::invalid_argument("PiecewiseQuadratic: d must be >= 1");
    const Scalar lo = spec.alpha / 2.0 - kPhiTol;
    const Scalar hi = spec.beta / 2.0 + kPhiTol;
    if (phi1_ < lo || phi1_ > hi || phi2_ < lo || phi2_ > hi) {
        throw std::invalid_argument("PiecewiseQuadratic: phi outside [alpha/2, beta/2]");
    }
}

std::string PiecewiseQuadratic::serialize() const {
    std::ostringstream os;
    os << "pwq " << format_scalar(phi1_) << ' ' << format_scalar(phi2_) << ' ' << dim();
    for (int c = 0; c < dim(); ++c) os << ' ' << format_scalar(unconstrained_minimizer()[c]);
    os << ' ' << format_scalar(spec().alpha) << ' ' << format_scalar(spec().beta);
    return os.str();
}

PiecewiseQuadratic sample_random(RngStream& rng, const ConvexitySpec& spec, Scalar nu_radius) {
    return sample_random_multi(rng, spec, nu_radius, 1);
}

PiecewiseQuadratic sample_random_multi(RngStream& rng, const ConvexitySpec& spec,
                                       Scalar nu_radius, int d) {
    if (nu_radius < 0.0) throw std::invalid_argument("sample_random: nu_radius must be >= 0");
    if (d < 1) throw std::invalid_argument("sample_random: d must be >= 1");
    const Scalar phi1 = rng.uniform(spec.alpha / 2.0, spec.beta / 2.0);
    const Scalar phi2 = rng.uniform(spec.alpha / 2.0, spec.beta / 2.0);
    const Scalar r = nu_radius / std::sqrt(static_cast<Scalar>(d));
    Vector nu(d);
    for (int c = 0; c < d; ++c) nu[c] = rng.uniform(-r, r);
    return {phi1, phi2, std::move(nu), spec};
}

std::unique_ptr<CostFunction> parse_function(const std::string& line) {
    std::istringstream is(line);
    std::string kind;
    is >> kind;
    if (kind != "pwq") throw std::invalid_argument("parse_function: unknown kind '" + kind + "'");
    Scalar phi1 = 0, phi2 = 0, alpha = 0, beta = 0;
    int d = 0;
    is >> phi1 >> phi2 >> d;
    if (!is || d < 1) throw std::invalid_argument("parse_function: malformed record");
    Vector nu(d);
    for (int c = 0; c < d; ++c) is >> nu[c];
    is >> alpha >> beta;
    if (!is) throw std::invalid_argument("parse_function: malformed record");
    return std::make_unique<PiecewiseQuadratic>(phi1, phi2, std::move(nu),
                                                ConvexitySpec(alpha, beta));
}

}  // namespace rcd
