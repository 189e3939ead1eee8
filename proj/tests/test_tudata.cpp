#include <doctest.h>

#include <cstdlib>
#include <random>
#include <set>

#include "erk/error.hpp"
#include "erk/tudata.hpp"
#include "oracles.hpp"
#include "test_support.hpp"

using namespace erk;
using testing_support::TempDir;
using testing_support::write_file;

namespace {

void write_fixture(const std::filesystem::path& dir, const std::string& a, const std::string& indicator,
                   const std::string& labels) {
    write_file(dir / "FIX_A.txt", a);
    write_file(dir / "FIX_graph_indicator.txt", indicator);
    write_file(dir / "FIX_graph_labels.txt", labels);
}

}  // namespace

TEST_SUITE("tudata") {

TEST_CASE("two-graph fixture: dedup and reindex") {
    TempDir tmp;
    write_fixture(tmp.path(), "1, 2\n2, 1\n3, 4\n", "1\n1\n2\n2\n", "1\n-1\n");
    LoadReport report;
    const Dataset ds = load_tu(tmp.path(), "FIX", &report);
    REQUIRE(ds.size() == 2);
    CHECK(ds.graphs[0].num_edges() == 1);
    CHECK(ds.graphs[1].num_edges() == 1);
    CHECK(ds.graphs[1].has_edge(0, 1));
    CHECK(ds.original_labels == std::vector<int>{1, -1});
    CHECK(ds.labels == std::vector<int>{1, -1});
    CHECK(report.directed_edges == 3);
    CHECK(report.asymmetric_edges == 1);  // "3, 4" has no reverse
}

TEST_CASE("binary labels map by ascending original value") {
    TempDir tmp;
    write_fixture(tmp.path(), "1, 2\n", "1\n1\n2\n3\n", "2\n7\n2\n");
    const Dataset ds = load_tu(tmp.path(), "FIX");
    CHECK(ds.labels == std::vector<int>{-1, 1, -1});
}

TEST_CASE("isolated nodes are kept") {
    TempDir tmp;
    write_fixture(tmp.path(), "1, 2\n2, 1\n", "1\n1\n1\n", "0\n");
    LoadReport report;
    const Dataset ds = load_tu(tmp.path(), "FIX", &report);
    CHECK(ds.graphs[0].num_vertices() == 3);
    CHECK(report.isolated_vertices == 1);
}

TEST_CASE("loader errors") {
    SUBCASE("missing edge file") {
        TempDir tmp;
        write_file(tmp.path() / "FIX_graph_indicator.txt", "1\n");
        write_file(tmp.path() / "FIX_graph_labels.txt", "1\n");
        CHECK_THROWS_WITH_AS(load_tu(tmp.path(), "FIX"), doctest::Contains("missing file FIX_A.txt"), InputError);
    }
    SUBCASE("edge across graphs names the line") {
        TempDir tmp;
        write_fixture(tmp.path(), "1, 2\n2, 3\n", "1\n1\n2\n", "0\n1\n");
        CHECK_THROWS_WITH_AS(load_tu(tmp.path(), "FIX"), doctest::Contains("FIX_A.txt:2"), InputError);
    }
    SUBCASE("gap in graph ids") {
        TempDir tmp;
        write_fixture(tmp.path(), "1, 2\n", "1\n1\n3\n", "0\n1\n0\n");
        CHECK_THROWS_WITH_AS(load_tu(tmp.path(), "FIX"), doctest::Contains("gap"), InputError);
    }
    SUBCASE("label count mismatch") {
        TempDir tmp;
        write_fixture(tmp.path(), "1, 2\n", "1\n1\n2\n", "0\n");
        CHECK_THROWS_AS(load_tu(tmp.path(), "FIX"), InputError);
    }
    SUBCASE("garbage number") {
        TempDir tmp;
        write_fixture(tmp.path(), "1, x\n", "1\n1\n", "0\n");
        CHECK_THROWS_WITH_AS(load_tu(tmp.path(), "FIX"), doctest::Contains("FIX_A.txt:1"), InputError);
    }
    SUBCASE("missing directory") {
        CHECK_THROWS_AS(load_tu("/nonexistent/erk", "FIX"), InputError);
    }
}

TEST_CASE("write then load reproduces the dataset") {
    std::mt19937_64 rng(17);
    for (int trial = 0; trial < 10; ++trial) {
        std::vector<Graph> graphs;
        std::vector<int> labels;
        const std::size_t count = 1 + rng() % 12;
        for (std::size_t i = 0; i < count; ++i) {
            graphs.push_back(erdos_renyi(1 + rng() % 15, 0.25, rng()));
            labels.push_back(static_cast<int>(rng() % 2) * 5 - 1);
        }
        const Dataset ds = make_dataset("RT", std::move(graphs), std::move(labels));
        TempDir tmp;
        write_tu(ds, tmp.path());
        LoadReport report;
        const Dataset back = load_tu(tmp.path(), "RT", &report);
        CHECK(back.graphs == ds.graphs);
        CHECK(back.original_labels == ds.original_labels);
        CHECK(back.labels == ds.labels);
        CHECK(report.asymmetric_edges == 0);
    }
}

TEST_CASE("MUTAG graph count when the dataset is available") {
    const char* root = std::getenv("ERK_TU_DIR");
    if (root == nullptr || !std::filesystem::exists(std::filesystem::path(root) / "MUTAG")) {
        MESSAGE("ERK_TU_DIR/MUTAG not present; skipping");
        return;
    }
    const auto dir = std::filesystem::path(root) / "MUTAG";
    LoadReport report;
    const Dataset ds = load_tu(dir, "MUTAG", &report);
    // independent count: distinct ids in the indicator file
    std::ifstream in(dir / "MUTAG_graph_indicator.txt");
    std::set<long> ids;
    for (long id; in >> id;) ids.insert(id);
    CHECK(ds.size() == ids.size());
    CHECK(ds.size() == 188);
    CHECK(report.asymmetric_edges == 0);
}

}
