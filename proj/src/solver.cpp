#include "rcd/solver.hpp"

#include <cmath>
#include <stdexcept>

namespace rcd {

namespace {

struct Problem {
    const std::vector<const CostFunction*>& fs;
    const Vector& a;
    int coord;

    [[nodiscard]] Scalar g(Scalar lambda) const {
        Scalar s = 0.0;
        for (std::size_t i = 0; i < fs.size(); ++i) {
            const Scalar ai = a[static_cast<Eigen::Index>(i)];
            s += ai * fs[i]->gradient_inverse_coord(coord, ai * lambda);
        }
        return s;
    }
};

}  // namespace

Minimizer solve(const std::vector<const CostFunction*>& functions, const Vector& a,
                const Vector& b, const SolveOptions& opts) {
    const auto n = static_cast<Eigen::Index>(functions.size());
    if (n == 0) throw std::invalid_argument("solve: empty function list");
    if (a.size() != n) throw std::invalid_argument("solve: weight/function count mismatch");
    if ((a.array() <= 0.0).any()) throw std::invalid_argument("solve: weights must be positive");
    if (!(opts.tol > 0.0)) throw std::invalid_argument("solve: tol must be positive");

    const int d = functions.front()->dim();
    Scalar beta_max = 0.0;
    Scalar c_eff = 0.0;
    for (const auto* f : functions) {
        if (f->dim() != d) throw std::invalid_argument("solve: mixed dimensions");
        if (!(f->spec().alpha > 0.0)) throw std::invalid_argument("solve: need alpha > 0");
        beta_max = std::max(beta_max, f->spec().beta);
        c_eff = std::max(c_eff, f->unconstrained_minimizer().norm());
    }
    if (b.size() != d) throw std::invalid_argument("solve: budget dimension mismatch");

    // A priori dual bound beta (|b| + c |a|_1) / |a|^2 per coordinate; the
    // true root always lies inside, the expansion below is a safety net only.
    const Scalar a_sq = a.squaredNorm();
    const Scalar a_l1 = a.lpNorm<1>();

    Minimizer out;
    out.x_star.resize(n * d);
    out.lambda_star.resize(d);
    out.residual = 0.0;

    for (int c = 0; c < d; ++c) {
        const Problem prob{functions, a, c};
        const Scalar target = b[c];
        Scalar w = beta_max * (std::abs(target) + c_eff * a_l1) / a_sq + 1.0;
        Scalar lo = -w;
        Scalar hi = w;
        Scalar glo = prob.g(lo) - target;
        Scalar ghi = prob.g(hi) - target;
        int expand = 0;
        while (glo > 0.0 || ghi < 0.0) {
            if (++expand > opts.max_expand) {
                throw std::runtime_error("solve: root not bracketed (assumptions violated?)");
            }
            w *= 2.0;
            lo = -w;
            hi = w;
            glo = prob.g(lo) - target;
            ghi = prob.g(hi) - target;
        }

        // g is nondecreasing and continuous (piecewise smooth with kinks), so
        // plain bisection is robust.
        Scalar mid = 0.5 * (lo + hi);
        Scalar gmid = prob.g(mid) - target;
        int it = 0;
        while (std::abs(gmid) > opts.tol) {
            if (++it > opts.max_bisect) {
                throw std::runtime_error("solve: tolerance unreachable in iteration cap");
            }
            if (gmid > 0.0) {
                hi = mid;
            } else {
                lo = mid;
            }
            const Scalar next = 0.5 * (lo + hi);
            if (next == mid) break;  // bracket is machine-tight
            mid = next;
            gmid = prob.g(mid) - target;
        }
        if (std::abs(gmid) > opts.tol) {
            throw std::runtime_error("solve: tolerance unreachable in iteration cap");
        }

        out.lambda_star[c] = mid;
        for (Eigen::Index i = 0; i < n; ++i) {
            out.x_star[i * d + c] =
                functions[static_cast<std::size_t>(i)]->gradient_inverse_coord(c, a[i] * mid);
        }
        out.residual = std::max(out.residual, std::abs(gmid));
    }
    return out;
}

Scalar optimality_residual(const Minimizer& m, const std::vector<const CostFunction*>& functions,
                           const Vector& a) {
    const auto n = static_cast<Eigen::Index>(functions.size());
    const int d = functions.empty() ? 0 : functions.front()->dim();
    Scalar worst = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) {
        const auto* f = functions[static_cast<std::size_t>(i)];
        const Vector xi = m.x_star.segment(i * d, d);
        worst = std::max(worst, (f->gradient(xi) - a[i] * m.lambda_star).norm());
    }
    return worst;
}

}  // namespace rcd
