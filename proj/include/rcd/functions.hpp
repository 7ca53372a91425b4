#pragma once

#include <memory>
#include <string>

#include "rcd/rng.hpp"
#include "rcd/types.hpp"

namespace rcd {

// Local cost function of one agent: continuously differentiable,
// alpha-strongly convex and beta-smooth, normalized so that the value at the
// unconstrained minimizer is zero.
//
// All implemented families are coordinatewise separable, and the scalar
// per-coordinate hooks below are the virtual surface; the vector API wraps
// them. The dual solver relies on this separability.
class CostFunction {
public:
    virtual ~CostFunction() = default;

    [[nodiscard]] int dim() const { return static_cast<int>(minimizer_.size()); }
    [[nodiscard]] const ConvexitySpec& spec() const { return spec_; }
    [[nodiscard]] const Vector& unconstrained_minimizer() const { return minimizer_; }

    [[nodiscard]] virtual Scalar value_coord(int coord, Scalar x) const = 0;
    [[nodiscard]] virtual Scalar gradient_coord(int coord, Scalar x) const = 0;
    /// Unique x with f'(x) = g along one coordinate (exists by strong convexity).
    [[nodiscard]] virtual Scalar gradient_inverse_coord(int coord, Scalar g) const = 0;

    /// One-line plain-text record: kind, parameters, d, minimizer entries.
    [[nodiscard]] virtual std::string serialize() const = 0;
    [[nodiscard]] virtual std::unique_ptr<CostFunction> clone() const = 0;

    [[nodiscard]] Scalar value(const Eigen::Ref<const Vector>& x) const {
        check_dim(x.size());
        Scalar v = 0.0;
        for (int c = 0; c < dim(); ++c) v += value_coord(c, x[c]);
        return v;
    }

    [[nodiscard]] Vector gradient(const Eigen::Ref<const Vector>& x) const {
        check_dim(x.size());
        Vector g(dim());
        for (int c = 0; c < dim(); ++c) g[c] = gradient_coord(c, x[c]);
        return g;
    }

    void gradient_into(const Eigen::Ref<const Vector>& x, Eigen::Ref<Vector> out) const {
        check_dim(x.size());
        for (int c = 0; c < dim(); ++c) out[c] = gradient_coord(c, x[c]);
    }

    [[nodiscard]] Vector gradient_inverse(const Eigen::Ref<const Vector>& g) const {
        check_dim(g.size());
        Vector x(dim());
        for (int c = 0; c < dim(); ++c) x[c] = gradient_inverse_coord(c, g[c]);
        return x;
    }

protected:
    CostFunction(ConvexitySpec spec, Vector minimizer)
        : spec_(spec), minimizer_(std::move(minimizer)) {}

    void check_dim(Eigen::Index n) const {
        if (n != minimizer_.size()) {
            throw std::invalid_argument("CostFunction: dimension mismatch");
        }
    }

private:
    ConvexitySpec spec_;
    Vector minimizer_;
};

// Piecewise quadratic cost with a single curvature pair shared by all
// coordinates:
//   f(x) = sum_c  phi1 (x_c - nu_c)^2   if x_c <  nu_c
//          sum_c  phi2 (x_c - nu_c)^2   if x_c >= nu_c
// with phi1, phi2 in [alpha/2, beta/2]. The gradient is continuous at the
// kink (both one-sided values vanish there) and we evaluate it as 0.
class PiecewiseQuadratic final : public CostFunction {
public:
    PiecewiseQuadratic(Scalar phi1, Scalar phi2, Scalar nu, ConvexitySpec spec)
        : PiecewiseQuadratic(phi1, phi2, Vector::Constant(1, nu), spec) {}

    PiecewiseQuadratic(Scalar phi1, Scalar phi2, Vector nu, ConvexitySpec spec);

    [[nodiscard]] Scalar phi1() const { return phi1_; }
    [[nodiscard]] Scalar phi2() const { return phi2_; }

    [[nodiscard]] Scalar value_coord(int coord, Scalar x) const override {
        const Scalar t = x - unconstrained_minimizer()[coord];
        return (t < 0.0 ? phi1_ : phi2_) * t * t;
    }

    [[nodiscard]] Scalar gradient_coord(int coord, Scalar x) const override {
        const Scalar t = x - unconstrained_minimizer()[coord];
        return 2.0 * (t < 0.0 ? phi1_ : phi2_) * t;
    }

    [[nodiscard]] Scalar gradient_inverse_coord(int coord, Scalar g) const override {
        const Scalar nu = unconstrained_minimizer()[coord];
        return nu + g / (2.0 * (g < 0.0 ? phi1_ : phi2_));
    }

    [[nodiscard]] std::string serialize() const override;
    [[nodiscard]] std::unique_ptr<CostFunction> clone() const override {
        return std::make_unique<PiecewiseQuadratic>(*this);
    }

private:
    Scalar phi1_;
    Scalar phi2_;
};

/// Random member of the replacement family: phi1, phi2 ~ U[alpha/2, beta/2]
/// independently, nu ~ U[-nu_radius, nu_radius]. d = 1.
PiecewiseQuadratic sample_random(RngStream& rng, const ConvexitySpec& spec, Scalar nu_radius);

/// d-dimensional variant for tests and ensembles with d > 1: one (phi1, phi2)
/// pair, nu sampled per coordinate in [-nu_radius/sqrt(d), nu_radius/sqrt(d)]
/// so the minimizer stays in the radius-nu_radius ball.
PiecewiseQuadratic sample_random_multi(RngStream& rng, const ConvexitySpec& spec,
                                       Scalar nu_radius, int d);

/// Parses a record produced by CostFunction::serialize().
std::unique_ptr<CostFunction> parse_function(const std::string& line);

}  // namespace rcd
