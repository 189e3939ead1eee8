#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include <Eigen/Core>

namespace erk {

using Vertex = std::uint32_t;
using Edge = std::pair<Vertex, Vertex>;

/// Immutable simple undirected graph. Edges are stored canonically (first <
/// second) in lexicographic order; a CSR adjacency is built once at
/// construction for the walkers and the iterative solver.
class Graph {
public:
    Graph() = default;

    std::size_t num_vertices() const noexcept { return n_; }
    std::size_t num_edges() const noexcept { return edges_.size(); }
    std::span<const Edge> edges() const noexcept { return edges_; }

    std::span<const Vertex> neighbors(Vertex v) const noexcept {
        return {adjacency_.data() + offsets_[v], adjacency_.data() + offsets_[v + 1]};
    }
    std::size_t degree(Vertex v) const noexcept { return offsets_[v + 1] - offsets_[v]; }

    bool has_edge(Vertex a, Vertex b) const noexcept;

    /// Relabel vertices: vertex v becomes perm[v].
    Graph permuted(std::span<const Vertex> perm) const;

    friend bool operator==(const Graph& lhs, const Graph& rhs) noexcept {
        return lhs.n_ == rhs.n_ && lhs.edges_ == rhs.edges_;
    }

private:
    friend struct GraphBuilder;
    Graph(std::size_t n, std::vector<Edge> canonical_edges);

    std::size_t n_ = 0;
    std::vector<Edge> edges_;
    std::vector<std::size_t> offsets_{0};
    std::vector<Vertex> adjacency_;
};

enum class SelfLoopPolicy { drop, reject };

struct EdgeListOptions {
    SelfLoopPolicy self_loops = SelfLoopPolicy::drop;
};

struct EdgeListResult {
    Graph graph;
    std::size_t dropped_self_loops = 0;
    std::size_t duplicate_edges = 0;
};

/// Build a graph from raw (possibly directed, possibly repeated) pairs.
/// Throws InputError naming the first pair with an endpoint >= n, or the first
/// self-loop when the policy is `reject`.
EdgeListResult from_edge_list(std::size_t n, std::span<const Edge> raw_edges,
                              EdgeListOptions options = {});

/// Convenience wrapper returning only the graph.
Graph make_graph(std::size_t n, std::span<const Edge> raw_edges);
Graph make_graph(std::size_t n, std::initializer_list<Edge> raw_edges);

/// Dense Laplacian L = D - A.
class LaplacianMatrix {
public:
    const Eigen::MatrixXd& matrix() const noexcept { return m_; }
    std::size_t size() const noexcept { return static_cast<std::size_t>(m_.rows()); }
    double operator()(std::size_t i, std::size_t j) const { return m_(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)); }

private:
    friend LaplacianMatrix laplacian(const Graph& g);
    explicit LaplacianMatrix(Eigen::MatrixXd m) : m_(std::move(m)) {}
    Eigen::MatrixXd m_;
};

LaplacianMatrix laplacian(const Graph& g);

struct Components {
    std::vector<std::uint32_t> label;  // label[v] in [0, count)
    std::size_t count = 0;
};

/// Labels are assigned in order of the smallest vertex of each component.
Components connected_components(const Graph& g);

/// Each of the n(n-1)/2 pairs (a < b), enumerated lexicographically, is kept
/// when the next SplitMix64 draw mapped to [0,1) is below p.
Graph erdos_renyi(std::size_t n, double p, std::uint64_t seed);

/// Unweighted BFS distances from `source`; unreachable vertices get SIZE_MAX.
std::vector<std::size_t> bfs_distances(const Graph& g, Vertex source);

}  // namespace erk
