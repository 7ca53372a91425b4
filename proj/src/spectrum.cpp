#include "rcd/spectrum.hpp"

#include <Eigen/Eigenvalues>

namespace rcd {

Matrix q_matrix(const Network& net, Edge edge) {
    const int k = net.edge_index(edge.i, edge.j);
    if (k < 0) throw std::invalid_argument("q_matrix: edge not in E");
    const int i = net.edges()[static_cast<std::size_t>(k)].i;
    const int j = net.edges()[static_cast<std::size_t>(k)].j;
    const Scalar ai = net.weights()[i];
    const Scalar aj = net.weights()[j];
    const Scalar denom = ai * ai + aj * aj;
    Matrix q = Matrix::Zero(net.n(), net.n());
    q(i, i) = aj * aj / denom;
    q(j, j) = ai * ai / denom;
    q(i, j) = q(j, i) = -ai * aj / denom;
    return q;
}

Spectrum build_spectrum(const Network& net) {
    const int n = net.n();
    Matrix lp = Matrix::Zero(n, n);
    for (int k = 0; k < net.edge_count(); ++k) {
        lp += net.probabilities()[k] * q_matrix(net, net.edges()[static_cast<std::size_t>(k)]);
    }

    Eigen::SelfAdjointEigenSolver<Matrix> eig(lp);
    if (eig.info() != Eigen::Success) {
        throw std::runtime_error("build_spectrum: eigensolver did not converge");
    }

    Spectrum spec;
    spec.lp = std::move(lp);
    spec.kernel = net.weights();
    spec.eigenvalues = eig.eigenvalues();
    spec.eigenvectors = eig.eigenvectors();

    const Scalar lambda_max = spec.eigenvalues[n - 1];
    const Scalar cutoff = 1e-9 * lambda_max;
    Vector inv = Vector::Zero(n);
    for (int k = 0; k < n; ++k) {
        if (spec.eigenvalues[k] > cutoff) inv[k] = 1.0 / spec.eigenvalues[k];
    }
    Matrix dagger = spec.eigenvectors * inv.asDiagonal() * spec.eigenvectors.transpose();
    // Deflate the known kernel direction a exactly; the eigenvectors carry
    // O(eps) leakage along it that the quadratic form would amplify by 1/lambda2.
    const Vector& a = net.weights();
    const Matrix proj = Matrix::Identity(n, n) - (a * a.transpose()) / a.squaredNorm();
    dagger = proj * dagger * proj;
    spec.lp_dagger = 0.5 * (dagger + dagger.transpose());
    spec.lambda2 = spec.eigenvalues[1];
    spec.lambda_n = lambda_max;
    return spec;
}

Scalar seminorm_sq(const Spectrum& spec, const Eigen::Ref<const Vector>& z, int d) {
    const Eigen::Index n = spec.lp.rows();
    if (d < 1 || z.size() != n * d) throw std::invalid_argument("seminorm_sq: dimension mismatch");
    // Blocks x_i are contiguous d-chunks, so viewing z as a d x n matrix puts
    // one block per column and z^T (L+ kron I_d) z = <Z, Z L+>_F.
    Eigen::Map<const Matrix> blocks(z.data(), d, n);
    // The quadratic form is blind to the kernel component; removing it first
    // keeps roundoff from being amplified by 1/lambda2.
    Matrix reduced = blocks;
    reduced -= ((reduced * spec.kernel) / spec.kernel.squaredNorm()) * spec.kernel.transpose();
    const Scalar v = (reduced * spec.lp_dagger).cwiseProduct(reduced).sum();
    return v < 0.0 ? 0.0 : v;  // clamp the roundoff sign
}

Scalar effective_resistance(const Spectrum& spec, Edge edge) {
    const Eigen::Index n = spec.lp.rows();
    if (edge.i < 0 || edge.j < 0 || edge.i >= n || edge.j >= n || edge.i == edge.j) {
        throw std::invalid_argument("effective_resistance: invalid edge");
    }
    return spec.lp_dagger(edge.i, edge.i) + spec.lp_dagger(edge.j, edge.j) -
           2.0 * spec.lp_dagger(edge.i, edge.j);
}

Vector project_feasible_zero(const Vector& a, const Eigen::Ref<const Vector>& z, int d) {
    const Eigen::Index n = a.size();
    if (d < 1 || z.size() != n * d) {
        throw std::invalid_argument("project_feasible_zero: dimension mismatch");
    }
    Vector out = z;
    Eigen::Map<Matrix> blocks(out.data(), d, n);
    blocks -= ((blocks * a) / a.squaredNorm()) * a.transpose();
    return out;
}

}  // namespace rcd
