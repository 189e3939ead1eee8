#include "erk/io.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "erk/error.hpp"

namespace erk {

namespace {

std::string format_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> cells;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    if (!line.empty() && line.back() == ',') cells.emplace_back();
    return cells;
}

}  // namespace

nlohmann::json to_json(const RunConfig& c) {
    return {
        {"command", c.command},
        {"dataset", c.dataset},
        {"dir", c.dir},
        {"mode", std::string(to_string(c.mode))},
        {"gamma", c.gamma},
        {"seed", c.seed},
        {"threads", c.threads},
        {"out", c.out},
        {"c_grid", c.c_grid},
        {"count_per_class", c.count_per_class},
        {"n", c.n},
        {"p1", c.p1},
        {"p2", c.p2},
    };
}

void write_gram_csv(std::ostream& out, const GramMatrix& K, std::span<const std::string> ids) {
    if (ids.size() != K.size()) throw InputError("id count does not match Gram size");
    out << "id";
    for (const auto& id : ids) out << ',' << id;
    out << '\n';
    for (std::size_t i = 0; i < K.size(); ++i) {
        out << ids[i];
        for (std::size_t j = 0; j < K.size(); ++j) {
            out << ',' << format_double(K.values(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)));
        }
        out << '\n';
    }
}

GramCsv read_gram_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) throw InputError("empty Gram CSV");
    auto header = split_csv_line(line);
    if (header.empty() || header.front() != "id") throw InputError("Gram CSV header must start with 'id'");
    GramCsv result;
    result.ids.assign(header.begin() + 1, header.end());
    const auto n = static_cast<Eigen::Index>(result.ids.size());
    result.gram.values.resize(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        if (!std::getline(in, line)) throw InputError("Gram CSV truncated at row " + std::to_string(i));
        const auto cells = split_csv_line(line);
        if (static_cast<Eigen::Index>(cells.size()) != n + 1) {
            throw InputError("Gram CSV row " + std::to_string(i) + " has " + std::to_string(cells.size()) + " cells");
        }
        for (Eigen::Index j = 0; j < n; ++j) {
            try {
                result.gram.values(i, j) = std::stod(cells[static_cast<std::size_t>(j + 1)]);
            } catch (const std::exception&) {
                throw InputError("Gram CSV row " + std::to_string(i) + ": bad number '" +
                                 cells[static_cast<std::size_t>(j + 1)] + "'");
            }
        }
    }
    return result;
}

nlohmann::json gram_json(const GramMatrix& K, std::span<const std::string> ids,
                         std::span<const FeatureVector> features, const RunConfig& config) {
    nlohmann::json matrix = nlohmann::json::array();
    for (Eigen::Index i = 0; i < K.values.rows(); ++i) {
        std::vector<double> row(K.values.cols());
        for (Eigen::Index j = 0; j < K.values.cols(); ++j) row[static_cast<std::size_t>(j)] = K.values(i, j);
        matrix.push_back(std::move(row));
    }
    std::vector<std::size_t> lengths;
    for (const auto& f : features) lengths.push_back(f.values.size());
    return {
        {"gamma", config.gamma},
        {"mode", std::string(to_string(config.mode))},
        {"seed", config.seed},
        {"dataset", config.dataset},
        {"ids", std::vector<std::string>(ids.begin(), ids.end())},
        {"vector_lengths", lengths},
        {"matrix", std::move(matrix)},
        {"config", to_json(config)},
        {"version", kToolVersion},
    };
}

nlohmann::json report_json(const BenchmarkReport& report, const std::optional<RunConfig>& config) {
    nlohmann::json grid = nlohmann::json::array();
    for (const auto& row : report.grid) {
        grid.push_back({{"C", row.C}, {"mean", row.mean}, {"std", row.std}, {"splits", row.splits}});
    }
    const auto& best = report.best_row();
    nlohmann::json j = {
        {"dataset", report.dataset},
        {"mode", std::string(to_string(report.mode))},
        {"gamma", report.gamma},
        {"seed", report.seed},
        {"grid", std::move(grid)},
        {"best", {{"C", best.C}, {"mean", best.mean}, {"std", best.std}}},
        {"train_sizes", report.train_sizes},
        {"version", kToolVersion},
        {"timings",
         {{"features_seconds", report.timings.features_seconds},
          {"gram_seconds", report.timings.gram_seconds},
          {"training_seconds", report.timings.training_seconds}}},
    };
    if (config) j["config"] = to_json(*config);
    return j;
}

std::string report_fingerprint(const nlohmann::json& report) {
    nlohmann::json copy = report;
    copy.erase("timings");
    return copy.dump();
}

std::string format_report_table(std::span<const BenchmarkReport> reports) {
    std::ostringstream out;
    char line[160];
    std::snprintf(line, sizeof line, "%-12s %-8s %-14s %s\n", "dataset", "mode", "accuracy (%)", "best C");
    out << line;
    for (const auto& r : reports) {
        const auto& best = r.best_row();
        char acc[32];
        std::snprintf(acc, sizeof acc, "%.1f±%.1f", best.mean, best.std);
        // the ± sign is two bytes in UTF-8; pad by hand so columns line up
        std::snprintf(line, sizeof line, "%-12s %-8s %-15s %g\n", r.dataset.c_str(),
                      std::string(to_string(r.mode)).c_str(), acc, best.C);
        out << line;
    }
    return out.str();
}

void write_heatmap_pgm(const std::filesystem::path& path, const GramMatrix& K) {
    const auto n = K.values.rows();
    const double lo = n ? K.values.minCoeff() : 0.0;
    const double hi = n ? K.values.maxCoeff() : 1.0;
    const double span = hi > lo ? hi - lo : 1.0;
    std::ofstream out(path, std::ios::binary);
    if (!out) throw InputError("cannot write " + path.string());
    out << "P5\n" << n << ' ' << n << "\n255\n";
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = 0; j < n; ++j) {
            const double t = (K.values(i, j) - lo) / span;
            out.put(static_cast<char>(static_cast<unsigned char>(std::clamp(t, 0.0, 1.0) * 255.0 + 0.5)));
        }
    }
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary);
    if (!out) throw InputError("cannot write " + path.string());
    out << text;
    if (!out) throw InputError("write failed for " + path.string());
}

}  // namespace erk
