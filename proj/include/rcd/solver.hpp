#pragma once

#include <vector>

#include "rcd/functions.hpp"
#include "rcd/types.hpp"

namespace rcd {

/// Exact solution of  min sum_i f_i(x_i)  s.t.  sum_i a_i x_i = b,
/// together with the dual multiplier of the optimality condition
/// grad f_i(x_i*) = a_i lambda*.
struct Minimizer {
    Vector x_star;       // stacked, length n*d
    Vector lambda_star;  // length d
    Scalar residual{0};  // max over dimensions of |sum_i a_i x*_i - b|
};

struct SolveOptions {
    Scalar tol{1e-12};    // constraint residual per dimension
    int max_bisect{200};  // bisection iteration cap per dimension
    int max_expand{64};   // geometric bracket expansions before giving up
};

// Dual solve: for each dimension coordinate, lambda* is the root of the
// nondecreasing map
//   g(lambda) = sum_i a_i [grad^{-1} f_i](a_i lambda) - b,
// located by bisection after geometric bracket expansion around the a priori
// half-width beta (|b| + c ||a||_1) / ||a||^2, which always contains the
// root. Dimensions decouple because all implemented function families are
// coordinatewise separable.
//
// Throws std::runtime_error if the root cannot be bracketed (violated
// assumptions) or the tolerance is unreachable within the iteration cap.
Minimizer solve(const std::vector<const CostFunction*>& functions, const Vector& a,
                const Vector& b, const SolveOptions& opts = {});

/// Convenience overload for owning containers.
template <typename Ptr>
Minimizer solve(const std::vector<Ptr>& functions, const Vector& a, const Vector& b,
                const SolveOptions& opts = {}) {
    std::vector<const CostFunction*> view;
    view.reserve(functions.size());
    for (const auto& f : functions) view.push_back(&*f);
    return solve(view, a, b, opts);
}

/// max_i || grad f_i(x*_i) - a_i lambda* ||, the optimality-condition defect.
Scalar optimality_residual(const Minimizer& m, const std::vector<const CostFunction*>& functions,
                           const Vector& a);

template <typename Ptr>
Scalar optimality_residual(const Minimizer& m, const std::vector<Ptr>& functions,
                           const Vector& a) {
    std::vector<const CostFunction*> view;
    view.reserve(functions.size());
    for (const auto& f : functions) view.push_back(&*f);
    return optimality_residual(m, view, a);
}

}  // namespace rcd
