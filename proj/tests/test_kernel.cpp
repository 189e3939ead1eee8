#include <doctest.h>

#include <algorithm>
#include <random>

#include <Eigen/Eigenvalues>

#include "erk/error.hpp"
#include "erk/kernel.hpp"
#include "erk/resistance.hpp"
#include "oracles.hpp"

using namespace erk;

namespace {

// Hand-evaluated ||v1 - v2||^2 for the worked kernel examples:
// P3 (1,1,2) vs K3 (2/3,2/3,2/3): 1/9 + 1/9 + 16/9 = 2
// single edge (1) padded to (1,0,0) vs P3 (1,1,2): 0 + 1 + 4 = 5
constexpr double kExpMinus2 = 0.1353352832366127;
constexpr double kExpMinus5 = 0.006737946999085467;

bool close(double a, double b, double tol) { return std::abs(a - b) <= tol; }

}  // namespace

TEST_SUITE("kernel") {

TEST_CASE("feature_full examples") {
    const auto k3 = feature_full(oracle::complete(3));
    REQUIRE(k3.values.size() == 3);
    for (double v : k3.values) CHECK(close(v, 2.0 / 3.0, 1e-12));

    const auto p3 = feature_full(oracle::path(3));
    REQUIRE(p3.values.size() == 3);
    CHECK(close(p3.values[0], 1.0, 1e-12));
    CHECK(close(p3.values[1], 1.0, 1e-12));
    CHECK(close(p3.values[2], 2.0, 1e-12));

    const auto single = feature_full(make_graph(1, {}));
    CHECK(single.values.empty());
    CHECK(single.mode == FeatureMode::full);
}

TEST_CASE("feature_full refuses graphs above the exact threshold") {
    CHECK_THROWS_AS(feature_full(oracle::path(10), FeatureOptions{.exact_threshold = 5}), InputError);
}

TEST_CASE("reduced pair count") {
    CHECK(reduced_pair_count(2) == 1);
    CHECK(reduced_pair_count(3) == 2);
    CHECK(reduced_pair_count(4) == 2);
    CHECK(reduced_pair_count(5) == 3);
    CHECK(reduced_pair_count(100) == 10);
    CHECK(reduced_pair_count(101) == 11);
    CHECK(reduced_pair_count(600) == 25);
}

TEST_CASE("pair_from_index enumerates pairs lexicographically") {
    for (std::size_t n = 2; n <= 12; ++n) {
        std::size_t index = 0;
        for (std::size_t a = 0; a < n; ++a) {
            for (std::size_t b = a + 1; b < n; ++b, ++index) {
                const auto [x, y] = pair_from_index(n, index);
                CHECK(x == a);
                CHECK(y == b);
            }
        }
        CHECK_THROWS_AS(pair_from_index(n, index), InputError);
    }
}

TEST_CASE("feature_reduced examples") {
    const auto k3 = feature_reduced(oracle::complete(3), 1);
    REQUIRE(k3.values.size() == 2);
    for (double v : k3.values) CHECK(close(v, 2.0 / 3.0, 1e-8));

    const auto edge = feature_reduced(make_graph(2, {{0, 1}}), 9);
    REQUIRE(edge.values.size() == 1);
    CHECK(close(edge.values[0], 1.0, 1e-8));

    const auto g = erdos_renyi(100, 0.1, 77);
    const auto a = feature_reduced(g, 5);
    const auto b = feature_reduced(g, 5);
    CHECK(a.values.size() == 10);
    CHECK(a.values == b.values);
    CHECK(std::is_sorted(a.values.begin(), a.values.end()));

    CHECK_THROWS_AS(feature_reduced(make_graph(1, {}), 0), InputError);
}

TEST_CASE("pair sampling is uniform without replacement") {
    // n = 5: 10 pairs, 3 drawn, so each pair is chosen with probability 0.3
    constexpr int trials = 30000;
    std::vector<int> hits(10, 0);
    for (int s = 0; s < trials; ++s) {
        const auto picked = sample_pair_indices(5, static_cast<std::uint64_t>(s) * 7919 + 1);
        REQUIRE(picked.size() == 3);
        CHECK(std::adjacent_find(picked.begin(), picked.end()) == picked.end());
        for (auto i : picked) ++hits.at(i);
    }
    const double sd = std::sqrt(trials * 0.3 * 0.7);
    for (int h : hits) CHECK(std::abs(h - trials * 0.3) <= 4.5 * sd);
}

TEST_CASE("kernel_value examples") {
    const std::vector<double> p3{1, 1, 2};
    const std::vector<double> k3{2.0 / 3, 2.0 / 3, 2.0 / 3};
    const std::vector<double> edge{1};
    CHECK(kernel_value(p3, p3) == 1.0);
    CHECK(close(kernel_value(p3, k3, 1.0), kExpMinus2, 1e-15));
    CHECK(close(kernel_value(edge, p3, 1.0), kExpMinus5, 1e-16));
    CHECK(kernel_value(edge, p3) == kernel_value(p3, edge));
    CHECK(close(kernel_value(p3, k3, 0.5), std::exp(-1.0), 1e-15));
    CHECK(kernel_value(std::vector<double>{}, std::vector<double>{}) == 1.0);
}

TEST_CASE("kernel_value is exactly symmetric") {
    std::mt19937_64 rng(1);
    std::uniform_real_distribution<double> u(0.0, 3.0);
    for (int t = 0; t < 200; ++t) {
        std::vector<double> a(rng() % 12), b(rng() % 12);
        for (auto& x : a) x = u(rng);
        for (auto& x : b) x = u(rng);
        std::sort(a.begin(), a.end());
        std::sort(b.begin(), b.end());
        CHECK(kernel_value(a, b) == kernel_value(b, a));
    }
}

TEST_CASE("gram examples") {
    const auto p3 = feature_full(oracle::path(3));
    const auto k3 = feature_full(oracle::complete(3));
    const std::vector<FeatureVector> twice{p3, p3};
    const auto K2 = gram(twice);
    CHECK(K2.values == Eigen::MatrixXd::Ones(2, 2));

    const std::vector<FeatureVector> mixed{p3, k3};
    const auto K = gram(mixed, 1.0, 2);
    CHECK(K.values(0, 0) == 1.0);
    CHECK(K.values(1, 1) == 1.0);
    CHECK(close(K.values(0, 1), kExpMinus2, 1e-12));
    CHECK(K.values(0, 1) == K.values(1, 0));
    CHECK_THROWS_AS(gram(std::vector<FeatureVector>{}), InputError);
}

TEST_CASE("feature_full is invariant under relabeling; isomorphic graphs have kernel 1") {
    std::mt19937_64 rng(8);
    for (int t = 0; t < 30; ++t) {
        const std::size_t n = 2 + rng() % 19;
        const auto g = t % 3 == 0 ? erdos_renyi(n, 0.3, rng()) : oracle::random_connected(n, 0.2, rng);
        const auto h = g.permuted(oracle::random_permutation(n, rng));
        const auto fg = feature_full(g);
        const auto fh = feature_full(h);
        REQUIRE(fg.values.size() == fh.values.size());
        for (std::size_t i = 0; i < fg.values.size(); ++i) CHECK(close(fg.values[i], fh.values[i], 1e-9));
        CHECK(close(kernel_value(fg, fh), 1.0, 1e-9));
    }
}

TEST_CASE("Gram matrices are positive semi-definite") {
    std::mt19937_64 rng(21);
    for (int collection = 0; collection < 50; ++collection) {
        std::vector<Graph> graphs;
        const std::size_t count = 3 + rng() % 10;
        for (std::size_t i = 0; i < count; ++i) graphs.push_back(erdos_renyi(2 + rng() % 14, 0.35, rng()));
        const auto mode = collection % 2 ? FeatureMode::reduced : FeatureMode::full;
        const auto features = extract_features(graphs, mode, rng());
        const auto K = gram(features);
        CHECK(K.values == K.values.transpose());
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(K.values, Eigen::EigenvaluesOnly);
        CHECK(eig.eigenvalues().minCoeff() >= -1e-8 * eig.eigenvalues().maxCoeff());
        CHECK(K.values.minCoeff() >= 0.0);
        CHECK(K.values.maxCoeff() <= 1.0);
        if (mode == FeatureMode::full) CHECK(K.values.diagonal() == Eigen::VectorXd::Ones(K.values.rows()));
    }
}

TEST_CASE("reduced entries appear among full entries") {
    std::mt19937_64 rng(4);
    for (int t = 0; t < 20; ++t) {
        const std::size_t n = 2 + rng() % 40;
        const auto g = oracle::random_connected(n, 0.1, rng);
        const auto full = feature_full(g);
        const auto reduced = feature_reduced(g, rng());
        CHECK(reduced.values.size() == reduced_pair_count(n));
        for (double r : reduced.values) {
            const bool found = std::any_of(full.values.begin(), full.values.end(),
                                           [&](double f) { return std::abs(f - r) <= 1e-8; });
            CHECK(found);
        }
    }
}

TEST_CASE("reduced features on disconnected graphs use the quadratic form for cross pairs") {
    // two triangles; every sampled pair has a defined non-negative value
    const auto g = make_graph(6, {{0, 1}, {1, 2}, {0, 2}, {3, 4}, {4, 5}, {3, 5}});
    const auto P = pseudoinverse(laplacian(g));
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const auto fv = feature_reduced(g, seed);
        CHECK(fv.values.size() == 3);
        const auto picked = sample_pair_indices(6, seed);
        std::vector<double> expected;
        for (auto idx : picked) {
            const auto [a, b] = pair_from_index(6, idx);
            expected.push_back(resistance_from_pinv(P, a, b));
        }
        std::sort(expected.begin(), expected.end());
        for (std::size_t i = 0; i < 3; ++i) CHECK(close(fv.values[i], expected[i], 1e-8));
    }
}

TEST_CASE("extract_features is independent of thread count") {
    std::vector<Graph> graphs;
    for (std::uint64_t i = 0; i < 12; ++i) graphs.push_back(erdos_renyi(30 + i, 0.2, i));
    const auto one = extract_features(graphs, FeatureMode::reduced, 99, 1);
    const auto four = extract_features(graphs, FeatureMode::reduced, 99, 4);
    for (std::size_t i = 0; i < graphs.size(); ++i) CHECK(one[i].values == four[i].values);
    CHECK(extract_features(std::vector<Graph>{make_graph(1, {})}, FeatureMode::reduced, 1)[0].values.empty());
}

TEST_CASE("mode parsing") {
    CHECK(parse_feature_mode("full") == FeatureMode::full);
    CHECK(parse_feature_mode("reduced") == FeatureMode::reduced);
    CHECK_THROWS_AS(parse_feature_mode("half"), InputError);
}

}
