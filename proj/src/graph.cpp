#include "erk/graph.hpp"

#include <algorithm>
#include <deque>
#include <limits>
#include <string>

#include "erk/error.hpp"
#include "erk/rng.hpp"

namespace erk {

struct GraphBuilder {
    static Graph build(std::size_t n, std::vector<Edge> canonical) { return Graph(n, std::move(canonical)); }
};

Graph::Graph(std::size_t n, std::vector<Edge> canonical_edges) : n_(n), edges_(std::move(canonical_edges)) {
    offsets_.assign(n_ + 1, 0);
    for (const auto& [a, b] : edges_) {
        ++offsets_[a + 1];
        ++offsets_[b + 1];
    }
    for (std::size_t v = 0; v < n_; ++v) offsets_[v + 1] += offsets_[v];
    adjacency_.resize(2 * edges_.size());
    std::vector<std::size_t> cursor(offsets_.begin(), offsets_.end() - 1);
    for (const auto& [a, b] : edges_) {
        adjacency_[cursor[a]++] = b;
        adjacency_[cursor[b]++] = a;
    }
    // edges_ is lexicographic, so each neighbor list is already ascending
}

bool Graph::has_edge(Vertex a, Vertex b) const noexcept {
    if (a >= n_ || b >= n_) return false;
    auto nb = neighbors(a);
    return std::binary_search(nb.begin(), nb.end(), b);
}

Graph Graph::permuted(std::span<const Vertex> perm) const {
    if (perm.size() != n_) throw InputError("permutation size does not match vertex count");
    std::vector<Edge> relabeled;
    relabeled.reserve(edges_.size());
    for (const auto& [a, b] : edges_) relabeled.emplace_back(perm[a], perm[b]);
    return make_graph(n_, relabeled);
}

EdgeListResult from_edge_list(std::size_t n, std::span<const Edge> raw_edges, EdgeListOptions options) {
    if (n > std::numeric_limits<Vertex>::max()) throw InputError("vertex count exceeds 32-bit range");
    EdgeListResult result;
    std::vector<Edge> canonical;
    canonical.reserve(raw_edges.size());
    for (const auto& [a, b] : raw_edges) {
        if (a >= n || b >= n) {
            throw InputError("endpoint out of range: edge (" + std::to_string(a) + ", " + std::to_string(b) +
                             ") with vertex count " + std::to_string(n));
        }
        if (a == b) {
            if (options.self_loops == SelfLoopPolicy::reject) {
                throw InputError("self-loop at vertex " + std::to_string(a));
            }
            ++result.dropped_self_loops;
            continue;
        }
        canonical.emplace_back(std::min(a, b), std::max(a, b));
    }
    std::sort(canonical.begin(), canonical.end());
    const auto last = std::unique(canonical.begin(), canonical.end());
    result.duplicate_edges = static_cast<std::size_t>(canonical.end() - last);
    canonical.erase(last, canonical.end());
    result.graph = GraphBuilder::build(n, std::move(canonical));
    return result;
}

Graph make_graph(std::size_t n, std::span<const Edge> raw_edges) { return from_edge_list(n, raw_edges).graph; }

Graph make_graph(std::size_t n, std::initializer_list<Edge> raw_edges) {
    return make_graph(n, std::span<const Edge>(raw_edges.begin(), raw_edges.size()));
}

LaplacianMatrix laplacian(const Graph& g) {
    const auto n = static_cast<Eigen::Index>(g.num_vertices());
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
    for (const auto& [a, b] : g.edges()) {
        m(a, b) = -1.0;
        m(b, a) = -1.0;
        m(a, a) += 1.0;
        m(b, b) += 1.0;
    }
    return LaplacianMatrix(std::move(m));
}

Components connected_components(const Graph& g) {
    constexpr auto unset = std::numeric_limits<std::uint32_t>::max();
    Components out;
    out.label.assign(g.num_vertices(), unset);
    std::vector<Vertex> stack;
    for (Vertex root = 0; root < g.num_vertices(); ++root) {
        if (out.label[root] != unset) continue;
        const auto id = static_cast<std::uint32_t>(out.count++);
        out.label[root] = id;
        stack.push_back(root);
        while (!stack.empty()) {
            const Vertex v = stack.back();
            stack.pop_back();
            for (Vertex w : g.neighbors(v)) {
                if (out.label[w] == unset) {
                    out.label[w] = id;
                    stack.push_back(w);
                }
            }
        }
    }
    return out;
}

Graph erdos_renyi(std::size_t n, double p, std::uint64_t seed) {
    if (!(p >= 0.0 && p <= 1.0)) throw InputError("edge probability must lie in [0, 1], got " + std::to_string(p));
    SplitMix64 rng(seed);
    std::vector<Edge> edges;
    for (std::size_t a = 0; a < n; ++a) {
        for (std::size_t b = a + 1; b < n; ++b) {
            if (rng.uniform() < p) edges.emplace_back(static_cast<Vertex>(a), static_cast<Vertex>(b));
        }
    }
    return GraphBuilder::build(n, std::move(edges));
}

std::vector<std::size_t> bfs_distances(const Graph& g, Vertex source) {
    std::vector<std::size_t> dist(g.num_vertices(), std::numeric_limits<std::size_t>::max());
    std::deque<Vertex> queue{source};
    dist[source] = 0;
    while (!queue.empty()) {
        const Vertex v = queue.front();
        queue.pop_front();
        for (Vertex w : g.neighbors(v)) {
            if (dist[w] == std::numeric_limits<std::size_t>::max()) {
                dist[w] = dist[v] + 1;
                queue.push_back(w);
            }
        }
    }
    return dist;
}

}  // namespace erk
