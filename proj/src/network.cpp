#include "rcd/network.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace rcd {

namespace {

std::vector<Edge> normalized(std::vector<Edge> edges) {
    for (auto& e : edges) {
        if (e.i > e.j) std::swap(e.i, e.j);
    }
    return edges;
}

Vector uniform_probs(std::size_t m) {
    return Vector::Constant(static_cast<Eigen::Index>(m), 1.0 / static_cast<Scalar>(m));
}

}  // namespace

Network::Network(Vector weights, std::vector<Edge> edges, Vector probabilities)
    : weights_(std::move(weights)),
      edges_(normalized(std::move(edges))),
      probabilities_(std::move(probabilities)) {
    const int n = this->n();
    if (n < 2) throw std::invalid_argument("Network: need at least 2 nodes");
    if ((weights_.array() <= 0.0).any()) {
        throw std::invalid_argument("Network: weights must be positive");
    }
    if (edges_.empty()) throw std::invalid_argument("Network: no edges");
    if (probabilities_.size() != static_cast<Eigen::Index>(edges_.size())) {
        throw std::invalid_argument("Network: probabilities/edges size mismatch");
    }
    for (const auto& e : edges_) {
        if (e.i < 0 || e.j >= n || e.i == e.j) {
            throw std::invalid_argument("Network: invalid edge endpoint");
        }
    }
    for (std::size_t k = 0; k < edges_.size(); ++k) {
        for (std::size_t l = k + 1; l < edges_.size(); ++l) {
            if (edges_[k] == edges_[l]) throw std::invalid_argument("Network: duplicate edge");
        }
    }
    if ((probabilities_.array() <= 0.0).any()) {
        throw std::invalid_argument("Network: edge probabilities must be positive");
    }
    if (std::abs(probabilities_.sum() - 1.0) > 1e-9) {
        throw std::invalid_argument("Network: edge probabilities must sum to 1");
    }
    if (!is_connected(n, edges_)) throw std::invalid_argument("Network: graph not connected");

    edge_cdf_.resize(edges_.size());
    Scalar acc = 0.0;
    for (std::size_t k = 0; k < edges_.size(); ++k) {
        acc += probabilities_[static_cast<Eigen::Index>(k)];
        edge_cdf_[k] = acc;
    }
    edge_cdf_.back() = 1.0;
}

int Network::edge_index(int i, int j) const {
    if (i > j) std::swap(i, j);
    for (std::size_t k = 0; k < edges_.size(); ++k) {
        if (edges_[k].i == i && edges_[k].j == j) return static_cast<int>(k);
    }
    return -1;
}

int Network::sample_edge_index(RngStream& rng) const {
    const Scalar u = rng.uniform01();
    const auto it = std::upper_bound(edge_cdf_.begin(), edge_cdf_.end(), u);
    return static_cast<int>(std::min<std::ptrdiff_t>(it - edge_cdf_.begin(),
                                                     static_cast<std::ptrdiff_t>(edges_.size()) - 1));
}

Network Network::with_probabilities(Vector probabilities) const {
    return {weights_, edges_, std::move(probabilities)};
}

bool Network::uniform_probabilities(Scalar tol) const {
    const Scalar p = 1.0 / static_cast<Scalar>(edges_.size());
    return (probabilities_.array() - p).abs().maxCoeff() <= tol;
}

bool Network::homogeneous_weights(Scalar tol) const {
    return (weights_.array() - 1.0).abs().maxCoeff() <= tol;
}

Network Network::complete(int n, Vector weights) {
    std::vector<Edge> edges;
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) edges.push_back({i, j});
    }
    Vector p = uniform_probs(edges.size());
    return {std::move(weights), std::move(edges), std::move(p)};
}

Network Network::ring(int n, Vector weights) {
    if (n < 3) throw std::invalid_argument("Network::ring: need n >= 3");
    std::vector<Edge> edges;
    for (int i = 0; i < n; ++i) edges.push_back({i, (i + 1) % n});
    Vector p = uniform_probs(edges.size());
    return {std::move(weights), std::move(edges), std::move(p)};
}

Network Network::line(int n, Vector weights) {
    std::vector<Edge> edges;
    for (int i = 0; i + 1 < n; ++i) edges.push_back({i, i + 1});
    Vector p = uniform_probs(edges.size());
    return {std::move(weights), std::move(edges), std::move(p)};
}

Network Network::star(int n, Vector weights) {
    if (n < 3) throw std::invalid_argument("Network::star: need n >= 3");
    std::vector<Edge> edges;
    for (int i = 1; i < n; ++i) edges.push_back({0, i});
    Vector p = uniform_probs(edges.size());
    return {std::move(weights), std::move(edges), std::move(p)};
}

Network Network::erdos_renyi(int n, Vector weights, Scalar edge_prob, RngStream& rng,
                             int max_tries) {
    if (edge_prob <= 0.0 || edge_prob > 1.0) {
        throw std::invalid_argument("Network::erdos_renyi: edge_prob in (0, 1]");
    }
    for (int attempt = 0; attempt < max_tries; ++attempt) {
        std::vector<Edge> edges;
        for (int i = 0; i < n; ++i) {
            for (int j = i + 1; j < n; ++j) {
                if (rng.uniform01() < edge_prob) edges.push_back({i, j});
            }
        }
        if (!edges.empty() && is_connected(n, edges)) {
            Vector p = uniform_probs(edges.size());
            return {std::move(weights), std::move(edges), std::move(p)};
        }
    }
    throw std::runtime_error("Network::erdos_renyi: no connected sample within max_tries");
}

bool Network::is_connected(int n, const std::vector<Edge>& edges) {
    // Union-find over the edge list.
    std::vector<int> parent(static_cast<std::size_t>(n));
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int v) {
        while (parent[static_cast<std::size_t>(v)] != v) {
            parent[static_cast<std::size_t>(v)] =
                parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(v)])];
            v = parent[static_cast<std::size_t>(v)];
        }
        return v;
    };
    int components = n;
    for (const auto& e : edges) {
        const int a = find(e.i);
        const int b = find(e.j);
        if (a != b) {
            parent[static_cast<std::size_t>(a)] = b;
            --components;
        }
    }
    return components == 1;
}

}  // namespace rcd
