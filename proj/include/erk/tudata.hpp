#pragma once

#include <cstddef>
#include <filesystem>
#include <string>
#include <vector>

#include "erk/graph.hpp"

namespace erk {

/// Labelled graph collection. For two-class data `labels` holds -1/+1 (the
/// smaller original value maps to -1); otherwise it equals `original_labels`.
struct Dataset {
    std::string name;
    std::vector<Graph> graphs;
    std::vector<int> labels;
    std::vector<int> original_labels;

    std::size_t size() const noexcept { return graphs.size(); }
};

struct LoadReport {
    std::size_t directed_edges = 0;
    /// Directed edges (i, j) whose reverse (j, i) is absent from the file.
    std::size_t asymmetric_edges = 0;
    std::size_t self_loops = 0;
    std::size_t isolated_vertices = 0;
};

/// Reads <dir>/<name>_A.txt, <name>_graph_indicator.txt and
/// <name>_graph_labels.txt. Any other files in the directory are ignored.
Dataset load_tu(const std::filesystem::path& dir, const std::string& name, LoadReport* report = nullptr);

/// Writes the three structural files; each undirected edge is emitted in both
/// directions, the way published TU files are.
void write_tu(const Dataset& dataset, const std::filesystem::path& dir);

/// Two-class dataset from arbitrary integer labels (ascending value order
/// decides which class becomes -1).
Dataset make_dataset(std::string name, std::vector<Graph> graphs, std::vector<int> original_labels);

}  // namespace erk
