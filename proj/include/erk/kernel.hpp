#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include <Eigen/Core>

#include "erk/graph.hpp"

namespace erk {

enum class FeatureMode { full, reduced };

std::string_view to_string(FeatureMode mode) noexcept;
/// Accepts "full" or "reduced"; throws InputError otherwise.
FeatureMode parse_feature_mode(std::string_view text);

/// Sorted (ascending) effective-resistance values describing one graph.
struct FeatureVector {
    std::vector<double> values;
    FeatureMode mode = FeatureMode::full;
    std::size_t source_vertices = 0;
};

struct FeatureOptions {
    /// Graphs larger than this never go through the dense pseudoinverse; full
    /// features are refused and reduced features must avoid cross-component
    /// pairs.
    std::size_t exact_threshold = 2000;
    double solver_tolerance = 1e-10;
};

/// ceil(sqrt(n)) capped at n(n-1)/2.
std::size_t reduced_pair_count(std::size_t n) noexcept;

/// Index in [0, n(n-1)/2) of the lexicographically ordered pairs (a < b)
/// mapped back to the pair.
Edge pair_from_index(std::size_t n, std::size_t index);

/// All n(n-1)/2 pairwise resistances from the pseudoinverse, sorted.
FeatureVector feature_full(const Graph& g, const FeatureOptions& options = {});

/// Resistances of ceil(sqrt(n)) distinct pairs sampled uniformly without
/// replacement (Floyd's algorithm over pair indices), sorted. Connected pairs
/// use the iterative solver; cross-component pairs fall back to the
/// pseudoinverse quadratic form. Requires n >= 2.
FeatureVector feature_reduced(const Graph& g, std::uint64_t seed, const FeatureOptions& options = {});

/// Pair indices drawn by feature_reduced for the given seed, ascending.
std::vector<std::size_t> sample_pair_indices(std::size_t n, std::uint64_t seed);

/// exp(-gamma * ||v1 - v2||^2) after padding the shorter vector with
/// trailing zeros.
double kernel_value(std::span<const double> v1, std::span<const double> v2, double gamma = 1.0);
double kernel_value(const FeatureVector& v1, const FeatureVector& v2, double gamma = 1.0);

struct GramMatrix {
    Eigen::MatrixXd values;
    std::size_t size() const noexcept { return static_cast<std::size_t>(values.rows()); }
};

/// Each unordered pair is evaluated once and mirrored.
GramMatrix gram(std::span<const FeatureVector> features, double gamma = 1.0, std::size_t threads = 1);

/// Features for a collection; graph i in reduced mode uses
/// derive_seed(master_seed, i). In reduced mode graphs with fewer than two
/// vertices get an empty vector.
std::vector<FeatureVector> extract_features(std::span<const Graph> graphs, FeatureMode mode,
                                            std::uint64_t master_seed, std::size_t threads = 1,
                                            const FeatureOptions& options = {});

}  // namespace erk
