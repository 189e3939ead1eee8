#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "erk/io.hpp"
#include "erk/kernel.hpp"
#include "erk/svm.hpp"
#include "erk/tudata.hpp"

namespace erk {

/// Exit codes shared by every subcommand.
enum ExitCode : int { kExitOk = 0, kExitComputeError = 1, kExitUsageError = 2 };

struct GramResult {
    std::vector<std::string> ids;
    std::vector<FeatureVector> features;
    GramMatrix gram;
    double feature_seconds = 0.0;
    double gram_seconds = 0.0;
};

/// Features and Gram matrix for a dataset under `config.mode` / `config.gamma`.
GramResult compute_gram(const Dataset& dataset, const RunConfig& config);

/// Writes <out>/<dataset>_<mode>_gram.csv and .json; returns the JSON written.
nlohmann::json cmd_gram(const RunConfig& config, std::ostream& log);
nlohmann::json write_gram_outputs(const GramResult& result, const RunConfig& config);

/// Writes <out>/<dataset>_<mode>_report.json and prints the accuracy table.
nlohmann::json cmd_benchmark(const RunConfig& config, std::ostream& log);

struct Separation {
    double within_mean = 0.0;   // off-diagonal entries inside each class
    double between_mean = 0.0;  // entries across the two classes
    double ratio = 0.0;         // within / between
};

/// Two-class Gram statistics; classes are given as a label per row.
Separation class_separation(const GramMatrix& K, std::span<const int> labels);

/// Graphs 0..count-1 drawn at p1, the next count at p2.
Dataset er_two_class(std::size_t n, double p1, double p2, std::size_t count_per_class, std::uint64_t seed);

/// Writes <out>/er_<n>_<p1>_<p2>_<mode>.csv, .pgm and .json summary.
nlohmann::json cmd_er_discriminate(const RunConfig& config, std::ostream& log);

/// Gram + separation only, without touching the filesystem.
struct ErDiscrimination {
    GramResult gram;
    Separation separation;
};
ErDiscrimination er_discriminate(const RunConfig& config);

struct FetchConfig {
    std::string name;
    std::filesystem::path dir;
    std::string url;     // empty: registry URL
    std::string sha256;  // empty: registry pin
};
std::filesystem::path cmd_fetch(const FetchConfig& config, std::ostream& log);

/// Parses argv and dispatches; returns the process exit code.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace erk
