#pragma once

#include <vector>

#include "rcd/rng.hpp"
#include "rcd/types.hpp"

namespace rcd {

/// Undirected edge, stored with i < j (0-based node indices).
struct Edge {
    int i{0};
    int j{0};
};

inline bool operator==(Edge a, Edge b) { return a.i == b.i && a.j == b.j; }

// Undirected connected interaction graph with positive node weights a_i and
// per-edge selection probabilities p_ij summing to one.
class Network {
public:
    Network(Vector weights, std::vector<Edge> edges, Vector probabilities);

    [[nodiscard]] int n() const { return static_cast<int>(weights_.size()); }
    [[nodiscard]] const Vector& weights() const { return weights_; }
    [[nodiscard]] const std::vector<Edge>& edges() const { return edges_; }
    [[nodiscard]] const Vector& probabilities() const { return probabilities_; }
    [[nodiscard]] int edge_count() const { return static_cast<int>(edges_.size()); }

    /// Index of (i, j) in edges(), or -1 if absent. Order-insensitive.
    [[nodiscard]] int edge_index(int i, int j) const;
    [[nodiscard]] bool has_edge(int i, int j) const { return edge_index(i, j) >= 0; }

    /// Categorical edge draw with the configured p_ij.
    [[nodiscard]] int sample_edge_index(RngStream& rng) const;

    /// Same topology and weights, different probability vector.
    [[nodiscard]] Network with_probabilities(Vector probabilities) const;

    /// True iff the configured probabilities are uniform over the edges.
    [[nodiscard]] bool uniform_probabilities(Scalar tol = 1e-12) const;
    /// True iff all node weights are equal to one.
    [[nodiscard]] bool homogeneous_weights(Scalar tol = 1e-12) const;

    // Built-in topologies, uniform probabilities by default.
    static Network complete(int n, Vector weights);
    static Network ring(int n, Vector weights);
    static Network line(int n, Vector weights);
    static Network star(int n, Vector weights);
    /// G(n, edge_prob), resampled until connected (throws after max_tries).
    static Network erdos_renyi(int n, Vector weights, Scalar edge_prob, RngStream& rng,
                               int max_tries = 10000);

    static bool is_connected(int n, const std::vector<Edge>& edges);

private:
    Vector weights_;
    std::vector<Edge> edges_;
    Vector probabilities_;
    std::vector<Scalar> edge_cdf_;  // cumulative p for sampling
};

}  // namespace rcd
