#include "erk/tudata.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <set>
#include <string_view>
#include <unordered_set>

#include "erk/error.hpp"

namespace erk {

namespace fs = std::filesystem;

namespace {

std::ifstream open_required(const fs::path& path) {
    std::ifstream in(path);
    if (!in) throw InputError("missing file " + path.filename().string() + " (looked in " + path.parent_path().string() + ")");
    return in;
}

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

long long parse_integer(std::string_view token, const std::string& file, std::size_t line) {
    token = trim(token);
    long long value = 0;
    const auto* end = token.data() + token.size();
    auto [ptr, ec] = std::from_chars(token.data(), end, value);
    if (token.empty() || ec != std::errc{} || ptr != end) {
        throw InputError(file + ":" + std::to_string(line) + ": expected an integer, got '" + std::string(token) + "'");
    }
    return value;
}

// One integer per non-blank line.
std::vector<long long> read_column(const fs::path& path) {
    auto in = open_required(path);
    const std::string file = path.filename().string();
    std::vector<long long> values;
    std::string line;
    for (std::size_t number = 1; std::getline(in, line); ++number) {
        if (trim(line).empty()) continue;
        values.push_back(parse_integer(line, file, number));
    }
    return values;
}

}  // namespace

Dataset make_dataset(std::string name, std::vector<Graph> graphs, std::vector<int> original_labels) {
    if (graphs.size() != original_labels.size()) throw InputError("graph and label counts differ");
    Dataset ds;
    ds.name = std::move(name);
    ds.graphs = std::move(graphs);
    ds.original_labels = std::move(original_labels);
    const std::set<int> classes(ds.original_labels.begin(), ds.original_labels.end());
    if (classes.size() == 2) {
        const int low = *classes.begin();
        ds.labels.reserve(ds.original_labels.size());
        for (int v : ds.original_labels) ds.labels.push_back(v == low ? -1 : 1);
    } else {
        ds.labels = ds.original_labels;
    }
    return ds;
}

Dataset load_tu(const fs::path& dir, const std::string& name, LoadReport* report) {
    if (!fs::is_directory(dir)) throw InputError("dataset directory not found: " + dir.string());
    const fs::path a_path = dir / (name + "_A.txt");
    const fs::path indicator_path = dir / (name + "_graph_indicator.txt");
    const fs::path labels_path = dir / (name + "_graph_labels.txt");
    for (const auto& p : {a_path, indicator_path, labels_path}) {
        if (!fs::exists(p)) throw InputError("missing file " + p.filename().string());
    }

    const std::string indicator_file = indicator_path.filename().string();
    const auto indicator = read_column(indicator_path);
    std::size_t num_graphs = 0;
    for (std::size_t i = 0; i < indicator.size(); ++i) {
        if (indicator[i] < 1) {
            throw InputError(indicator_file + ": node " + std::to_string(i + 1) + " has invalid graph id " +
                             std::to_string(indicator[i]));
        }
        num_graphs = std::max<std::size_t>(num_graphs, static_cast<std::size_t>(indicator[i]));
    }

    // graph ids must cover 1..G; nodes renumbered 0-based in file order within each graph
    std::vector<std::size_t> graph_sizes(num_graphs, 0);
    std::vector<Vertex> local_id(indicator.size());
    for (std::size_t i = 0; i < indicator.size(); ++i) {
        auto& count = graph_sizes[static_cast<std::size_t>(indicator[i] - 1)];
        local_id[i] = static_cast<Vertex>(count++);
    }
    for (std::size_t g = 0; g < num_graphs; ++g) {
        if (graph_sizes[g] == 0) {
            throw InputError(indicator_file + ": gap in graph ids, graph " + std::to_string(g + 1) + " has no nodes");
        }
    }

    const auto raw_labels = read_column(labels_path);
    if (raw_labels.size() != num_graphs) {
        throw InputError(labels_path.filename().string() + " has " + std::to_string(raw_labels.size()) +
                         " labels but the indicator file defines " + std::to_string(num_graphs) + " graphs");
    }

    std::vector<std::vector<Edge>> edges(num_graphs);
    std::unordered_set<std::uint64_t> directed;
    LoadReport local_report;
    {
        auto in = open_required(a_path);
        const std::string file = a_path.filename().string();
        std::string line;
        for (std::size_t number = 1; std::getline(in, line); ++number) {
            if (trim(line).empty()) continue;
            const auto comma = line.find(',');
            if (comma == std::string::npos) throw InputError(file + ":" + std::to_string(number) + ": expected 'i, j'");
            const long long u = parse_integer(std::string_view(line).substr(0, comma), file, number);
            const long long v = parse_integer(std::string_view(line).substr(comma + 1), file, number);
            for (long long node : {u, v}) {
                if (node < 1 || static_cast<std::size_t>(node) > indicator.size()) {
                    throw InputError(file + ":" + std::to_string(number) + ": node id " + std::to_string(node) +
                                     " out of range 1.." + std::to_string(indicator.size()));
                }
            }
            const auto gu = indicator[static_cast<std::size_t>(u - 1)];
            const auto gv = indicator[static_cast<std::size_t>(v - 1)];
            if (gu != gv) {
                throw InputError(file + ":" + std::to_string(number) + ": edge " + std::to_string(u) + ", " +
                                 std::to_string(v) + " crosses graphs " + std::to_string(gu) + " and " +
                                 std::to_string(gv));
            }
            ++local_report.directed_edges;
            directed.insert(static_cast<std::uint64_t>(u) << 32 | static_cast<std::uint64_t>(v));
            edges[static_cast<std::size_t>(gu - 1)].emplace_back(local_id[static_cast<std::size_t>(u - 1)],
                                                                  local_id[static_cast<std::size_t>(v - 1)]);
        }
    }
    for (std::uint64_t key : directed) {
        const std::uint64_t reversed = (key << 32) | (key >> 32);
        if (!directed.contains(reversed)) ++local_report.asymmetric_edges;
    }

    std::vector<Graph> graphs;
    graphs.reserve(num_graphs);
    for (std::size_t g = 0; g < num_graphs; ++g) {
        auto built = from_edge_list(graph_sizes[g], edges[g]);
        local_report.self_loops += built.dropped_self_loops;
        for (Vertex v = 0; v < built.graph.num_vertices(); ++v) {
            if (built.graph.degree(v) == 0) ++local_report.isolated_vertices;
        }
        graphs.push_back(std::move(built.graph));
    }
    if (report) *report = local_report;

    std::vector<int> labels(raw_labels.begin(), raw_labels.end());
    return make_dataset(name, std::move(graphs), std::move(labels));
}

void write_tu(const Dataset& dataset, const fs::path& dir) {
    fs::create_directories(dir);
    std::ofstream a_out(dir / (dataset.name + "_A.txt"));
    std::ofstream ind_out(dir / (dataset.name + "_graph_indicator.txt"));
    std::ofstream lab_out(dir / (dataset.name + "_graph_labels.txt"));
    if (!a_out || !ind_out || !lab_out) throw InputError("cannot write dataset files in " + dir.string());

    std::size_t offset = 1;
    for (std::size_t g = 0; g < dataset.graphs.size(); ++g) {
        const Graph& graph = dataset.graphs[g];
        for (std::size_t v = 0; v < graph.num_vertices(); ++v) ind_out << (g + 1) << '\n';
        for (const auto& [a, b] : graph.edges()) {
            a_out << (offset + a) << ", " << (offset + b) << '\n';
            a_out << (offset + b) << ", " << (offset + a) << '\n';
        }
        offset += graph.num_vertices();
        lab_out << dataset.original_labels[g] << '\n';
    }
}

}  // namespace erk
