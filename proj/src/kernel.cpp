#include "erk/kernel.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>
#include <unordered_set>

#include "erk/error.hpp"
#include "erk/parallel.hpp"
#include "erk/resistance.hpp"
#include "erk/rng.hpp"

namespace erk {

std::string_view to_string(FeatureMode mode) noexcept {
    return mode == FeatureMode::full ? "full" : "reduced";
}

FeatureMode parse_feature_mode(std::string_view text) {
    if (text == "full") return FeatureMode::full;
    if (text == "reduced") return FeatureMode::reduced;
    throw InputError("unknown mode '" + std::string(text) + "' (expected full or reduced)");
}

std::size_t reduced_pair_count(std::size_t n) noexcept {
    if (n < 2) return 0;
    auto root = static_cast<std::size_t>(std::sqrt(static_cast<double>(n)));
    while (root * root > n) --root;
    while ((root + 1) * (root + 1) <= n) ++root;
    const std::size_t ceil_root = root * root == n ? root : root + 1;
    return std::min(ceil_root, n * (n - 1) / 2);
}

Edge pair_from_index(std::size_t n, std::size_t index) {
    std::size_t a = 0;
    while (a + 1 < n && index >= n - 1 - a) {
        index -= n - 1 - a;
        ++a;
    }
    if (a + 1 >= n) throw InputError("pair index out of range");
    return {static_cast<Vertex>(a), static_cast<Vertex>(a + 1 + index)};
}

FeatureVector feature_full(const Graph& g, const FeatureOptions& options) {
    const std::size_t n = g.num_vertices();
    if (n > options.exact_threshold) {
        throw InputError("graph with " + std::to_string(n) + " vertices exceeds the exact-backend threshold of " +
                         std::to_string(options.exact_threshold) + "; use reduced mode");
    }
    FeatureVector fv{{}, FeatureMode::full, n};
    if (n < 2) return fv;
    const PseudoinverseMatrix Lp = pseudoinverse(laplacian(g));
    fv.values.reserve(n * (n - 1) / 2);
    for (std::size_t a = 0; a < n; ++a) {
        for (std::size_t b = a + 1; b < n; ++b) fv.values.push_back(resistance_from_pinv(Lp, a, b));
    }
    std::sort(fv.values.begin(), fv.values.end());
    return fv;
}

std::vector<std::size_t> sample_pair_indices(std::size_t n, std::uint64_t seed) {
    const std::size_t total = n * (n - 1) / 2;
    const std::size_t k = reduced_pair_count(n);
    SplitMix64 rng(seed);
    // Floyd: one draw per selected element, exact uniform k-subset
    std::unordered_set<std::size_t> chosen;
    std::vector<std::size_t> picked;
    picked.reserve(k);
    for (std::size_t j = total - k; j < total; ++j) {
        const auto t = static_cast<std::size_t>(rng.below(j + 1));
        const std::size_t take = chosen.contains(t) ? j : t;
        chosen.insert(take);
        picked.push_back(take);
    }
    std::sort(picked.begin(), picked.end());
    return picked;
}

FeatureVector feature_reduced(const Graph& g, std::uint64_t seed, const FeatureOptions& options) {
    const std::size_t n = g.num_vertices();
    if (n < 2) throw InputError("reduced features need at least 2 vertices, got " + std::to_string(n));

    const Components comps = connected_components(g);
    std::optional<PseudoinverseMatrix> Lp;
    FeatureVector fv{{}, FeatureMode::reduced, n};
    for (std::size_t index : sample_pair_indices(n, seed)) {
        const auto [a, b] = pair_from_index(n, index);
        if (comps.label[a] == comps.label[b]) {
            fv.values.push_back(resistance_solve(g, a, b, options.solver_tolerance));
            continue;
        }
        if (!Lp) {
            if (n > options.exact_threshold) throw DisconnectedPairError(a, b);
            Lp = pseudoinverse(laplacian(g));
        }
        fv.values.push_back(resistance_from_pinv(*Lp, a, b));
    }
    std::sort(fv.values.begin(), fv.values.end());
    return fv;
}

double kernel_value(std::span<const double> v1, std::span<const double> v2, double gamma) {
    if (v1.size() < v2.size()) std::swap(v1, v2);
    double sq = 0.0;
    for (std::size_t i = 0; i < v2.size(); ++i) {
        const double d = v1[i] - v2[i];
        sq += d * d;
    }
    for (std::size_t i = v2.size(); i < v1.size(); ++i) sq += v1[i] * v1[i];
    return std::exp(-gamma * sq);
}

double kernel_value(const FeatureVector& v1, const FeatureVector& v2, double gamma) {
    return kernel_value(std::span<const double>(v1.values), std::span<const double>(v2.values), gamma);
}

GramMatrix gram(std::span<const FeatureVector> features, double gamma, std::size_t threads) {
    if (features.empty()) throw InputError("Gram matrix needs at least one feature vector");
    if (!(gamma > 0.0)) throw InputError("gamma must be positive");
    const auto N = static_cast<Eigen::Index>(features.size());
    GramMatrix K{Eigen::MatrixXd(N, N)};
    parallel_for(features.size(), threads, [&](std::size_t i) {
        const auto r = static_cast<Eigen::Index>(i);
        for (Eigen::Index c = r; c < N; ++c) {
            const double k = kernel_value(features[i], features[static_cast<std::size_t>(c)], gamma);
            K.values(r, c) = k;
            K.values(c, r) = k;
        }
    });
    return K;
}

std::vector<FeatureVector> extract_features(std::span<const Graph> graphs, FeatureMode mode,
                                            std::uint64_t master_seed, std::size_t threads,
                                            const FeatureOptions& options) {
    std::vector<FeatureVector> out(graphs.size());
    parallel_for(graphs.size(), threads, [&](std::size_t i) {
        const Graph& g = graphs[i];
        if (mode == FeatureMode::full) {
            out[i] = feature_full(g, options);
        } else if (g.num_vertices() < 2) {
            // single-vertex graphs have no pairs; same empty vector as full mode
            out[i] = FeatureVector{{}, FeatureMode::reduced, g.num_vertices()};
        } else {
            out[i] = feature_reduced(g, derive_seed(master_seed, i), options);
        }
    });
    return out;
}

}  // namespace erk
