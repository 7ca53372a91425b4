#pragma once

#include "rcd/network.hpp"
#include "rcd/types.hpp"

namespace rcd {

// Spectral objects of the probability-scaled Laplacian
//   L_p = sum_{(i,j) in E} p_ij Q^ij,
// which is symmetric positive semidefinite with L_p a = 0, and for a
// connected graph has exactly one zero eigenvalue. lp_dagger is the
// Moore-Penrose pseudoinverse formed in the eigenbasis.
struct Spectrum {
    Matrix lp;
    Matrix lp_dagger;
    Vector kernel;        // the weight vector a spanning the nullspace
    Vector eigenvalues;   // ascending
    Matrix eigenvectors;  // columns match eigenvalues
    Scalar lambda2{0.0};  // second-smallest eigenvalue
    Scalar lambda_n{0.0};  // largest eigenvalue

    /// Spectral condition number lambda_n / lambda2.
    [[nodiscard]] Scalar kappa_l() const { return lambda_n / lambda2; }
};

/// The pairwise projection matrix Q^ij: zero except for the 2x2 block
///   [i,i] = a_j^2/(a_i^2+a_j^2), [j,j] = a_i^2/(a_i^2+a_j^2),
///   [i,j] = [j,i] = -a_i a_j/(a_i^2+a_j^2).
/// Symmetric, idempotent, and Q^ij a = 0. Throws if the edge is not in E.
Matrix q_matrix(const Network& net, Edge edge);

/// Assembles L_p, its eigendecomposition, and the pseudoinverse. Eigenvalues
/// below 1e-9 * lambda_max are treated as the kernel.
Spectrum build_spectrum(const Network& net);

/// Squared seminorm z^T (L_p^+ kron I_d) z without materializing the
/// Kronecker product: the n x n operator is applied per dimension slice.
Scalar seminorm_sq(const Spectrum& spec, const Eigen::Ref<const Vector>& z, int d);

/// Effective resistance [L_p^+]_ii + [L_p^+]_jj - 2 [L_p^+]_ij.
Scalar effective_resistance(const Spectrum& spec, Edge edge);

/// Projects z onto the homogeneous feasible subspace S_{a,0} (blockwise
/// removal of the a-direction in each dimension slice).
Vector project_feasible_zero(const Vector& a, const Eigen::Ref<const Vector>& z, int d);

}  // namespace rcd
