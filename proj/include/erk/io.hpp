#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "erk/kernel.hpp"
#include "erk/svm.hpp"

namespace erk {

inline constexpr const char* kToolVersion = "1.0.0";

/// Everything needed to re-run a command; echoed into each JSON artifact.
struct RunConfig {
    std::string command;
    std::string dataset;
    std::string dir;
    FeatureMode mode = FeatureMode::full;
    double gamma = 1.0;
    std::uint64_t seed = 0;
    std::size_t threads = 1;
    std::string out;
    std::vector<double> c_grid = default_c_grid();
    std::size_t count_per_class = 4;
    std::size_t n = 200;
    double p1 = 0.85;
    double p2 = 0.9;
};

nlohmann::json to_json(const RunConfig& config);

/// Header row "id,<id_0>,...", then one row per graph: "<id_i>,K_i0,...".
/// Values are printed with 17 significant digits.
void write_gram_csv(std::ostream& out, const GramMatrix& K, std::span<const std::string> ids);

struct GramCsv {
    std::vector<std::string> ids;
    GramMatrix gram;
};
GramCsv read_gram_csv(std::istream& in);

/// {gamma, mode, seed, dataset, matrix, ids, vector_lengths, config, version}.
nlohmann::json gram_json(const GramMatrix& K, std::span<const std::string> ids,
                         std::span<const FeatureVector> features, const RunConfig& config);

/// {dataset, mode, gamma, seed, grid, best, train_sizes, config, version, timings}.
nlohmann::json report_json(const BenchmarkReport& report, const std::optional<RunConfig>& config = std::nullopt);

/// Serialized report with the timing block removed; equal for equal inputs.
std::string report_fingerprint(const nlohmann::json& report);

/// "NAME  MODE  mean±std  (best C = ...)" lines in the layout of a results table.
std::string format_report_table(std::span<const BenchmarkReport> reports);

/// Binary PGM (P5) grayscale rendering: 255 at the largest entry, 0 at the smallest.
void write_heatmap_pgm(const std::filesystem::path& path, const GramMatrix& K);

/// Writes `text` to `path`, creating parent directories.
void write_text_file(const std::filesystem::path& path, const std::string& text);

}  // namespace erk
