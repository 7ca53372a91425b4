#pragma once

#include <Eigen/Dense>
#include <stdexcept>

namespace rcd {

using Scalar = double;
using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

/// Curvature envelope of a cost function: alpha-strong convexity below,
/// beta-smoothness above, with 0 < alpha <= beta.
struct ConvexitySpec {
    Scalar alpha{1.0};
    Scalar beta{1.0};

    ConvexitySpec() = default;
    ConvexitySpec(Scalar a, Scalar b) : alpha(a), beta(b) {
        if (!(alpha > 0.0) || !(alpha <= beta)) {
            throw std::invalid_argument("ConvexitySpec: need 0 < alpha <= beta");
        }
    }

    [[nodiscard]] Scalar kappa() const { return beta / alpha; }
};

}  // namespace rcd
