#include "erk/commands.hpp"

#include <chrono>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "erk/error.hpp"
#include "erk/fetch.hpp"
#include "erk/parallel.hpp"
#include "erk/rng.hpp"

namespace erk {

namespace fs = std::filesystem;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

constexpr std::uint64_t kGraphStream = 0x6572677261706873ULL;  // "ergraphs"

std::string short_number(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%g", v);
    return buf;
}

fs::path output_dir(const RunConfig& config) { return config.out.empty() ? fs::path(".") : fs::path(config.out); }

std::string artifact_stem(const RunConfig& config) {
    return config.dataset + "_" + std::string(to_string(config.mode));
}

Dataset load_configured(const RunConfig& config, std::ostream& log) {
    if (config.dir.empty()) throw InputError("--dir is required");
    if (config.dataset.empty()) throw InputError("--dataset is required");
    fs::path dir = config.dir;
    // accept either the dataset folder itself or its parent
    if (!fs::exists(dir / (config.dataset + "_A.txt")) && fs::is_directory(dir / config.dataset)) {
        dir /= config.dataset;
    }
    if (!fs::is_directory(dir)) throw InputError("dataset path does not exist: " + config.dir);
    LoadReport report;
    Dataset ds = load_tu(dir, config.dataset, &report);
    if (report.asymmetric_edges) {
        log << "warning: " << report.asymmetric_edges << " of " << report.directed_edges
            << " directed edges have no reverse entry; treated as undirected\n";
    }
    if (report.self_loops) log << "warning: dropped " << report.self_loops << " self-loops\n";
    return ds;
}

}  // namespace

GramResult compute_gram(const Dataset& dataset, const RunConfig& config) {
    GramResult result;
    for (std::size_t i = 0; i < dataset.size(); ++i) result.ids.push_back("G" + std::to_string(i + 1));
    auto start = Clock::now();
    result.features = extract_features(dataset.graphs, config.mode, config.seed, config.threads);
    result.feature_seconds = seconds_since(start);
    start = Clock::now();
    result.gram = gram(result.features, config.gamma, config.threads);
    result.gram_seconds = seconds_since(start);
    return result;
}

nlohmann::json write_gram_outputs(const GramResult& result, const RunConfig& config) {
    const fs::path dir = output_dir(config);
    fs::create_directories(dir);
    std::ostringstream csv;
    write_gram_csv(csv, result.gram, result.ids);
    write_text_file(dir / (artifact_stem(config) + "_gram.csv"), csv.str());

    nlohmann::json j = gram_json(result.gram, result.ids, result.features, config);
    j["timings"] = {{"features_seconds", result.feature_seconds}, {"gram_seconds", result.gram_seconds}};
    write_text_file(dir / (artifact_stem(config) + "_gram.json"), j.dump(2) + "\n");
    return j;
}

nlohmann::json cmd_gram(const RunConfig& config, std::ostream& log) {
    const Dataset ds = load_configured(config, log);
    const GramResult result = compute_gram(ds, config);
    log << "gram: " << ds.size() << " graphs, mode " << to_string(config.mode) << ", features "
        << short_number(result.feature_seconds) << " s, gram " << short_number(result.gram_seconds) << " s\n";
    return write_gram_outputs(result, config);
}

nlohmann::json cmd_benchmark(const RunConfig& config, std::ostream& log) {
    const Dataset ds = load_configured(config, log);
    ProtocolOptions options;
    options.mode = config.mode;
    options.gamma = config.gamma;
    options.master_seed = config.seed;
    options.c_grid = config.c_grid;
    options.threads = config.threads;
    const BenchmarkReport report = run_protocol(ds, options);

    nlohmann::json j = report_json(report, config);
    write_text_file(output_dir(config) / (artifact_stem(config) + "_report.json"), j.dump(2) + "\n");

    log << format_report_table(std::span<const BenchmarkReport>(&report, 1));
    for (const auto& row : report.grid) {
        char line[96];
        std::snprintf(line, sizeof line, "  C=%-8g %6.2f ± %5.2f\n", row.C, row.mean, row.std);
        log << line;
    }
    return j;
}

Separation class_separation(const GramMatrix& K, std::span<const int> labels) {
    if (labels.size() != K.size()) throw InputError("label count does not match Gram size");
    double within = 0.0;
    double between = 0.0;
    std::size_t n_within = 0;
    std::size_t n_between = 0;
    for (std::size_t i = 0; i < K.size(); ++i) {
        for (std::size_t j = i + 1; j < K.size(); ++j) {
            const double k = K.values(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
            if (labels[i] == labels[j]) {
                within += k;
                ++n_within;
            } else {
                between += k;
                ++n_between;
            }
        }
    }
    Separation s;
    s.within_mean = n_within ? within / static_cast<double>(n_within) : 0.0;
    s.between_mean = n_between ? between / static_cast<double>(n_between) : 0.0;
    s.ratio = s.between_mean > 0.0 ? s.within_mean / s.between_mean : 0.0;
    return s;
}

Dataset er_two_class(std::size_t n, double p1, double p2, std::size_t count_per_class, std::uint64_t seed) {
    for (double p : {p1, p2}) {
        if (!(p >= 0.0 && p <= 1.0)) throw InputError("edge probability must lie in [0, 1], got " + short_number(p));
    }
    std::vector<Graph> graphs;
    std::vector<int> labels;
    for (std::size_t i = 0; i < 2 * count_per_class; ++i) {
        const bool first = i < count_per_class;
        graphs.push_back(erdos_renyi(n, first ? p1 : p2, derive_seed(seed ^ kGraphStream, i)));
        labels.push_back(first ? 0 : 1);
    }
    return make_dataset("er", std::move(graphs), std::move(labels));
}

ErDiscrimination er_discriminate(const RunConfig& config) {
    const Dataset ds = er_two_class(config.n, config.p1, config.p2, config.count_per_class, config.seed);
    ErDiscrimination out;
    out.gram = compute_gram(ds, config);
    out.separation = class_separation(out.gram.gram, ds.original_labels);
    return out;
}

nlohmann::json cmd_er_discriminate(const RunConfig& config, std::ostream& log) {
    if (config.count_per_class == 0) throw InputError("--count-per-class must be positive");
    const ErDiscrimination result = er_discriminate(config);
    const fs::path dir = output_dir(config);
    fs::create_directories(dir);
    const std::string stem = "er_" + std::to_string(config.n) + "_" + short_number(config.p1) + "_" +
                             short_number(config.p2) + "_" + std::string(to_string(config.mode));

    std::ostringstream csv;
    write_gram_csv(csv, result.gram.gram, result.gram.ids);
    write_text_file(dir / (stem + ".csv"), csv.str());
    write_heatmap_pgm(dir / (stem + ".pgm"), result.gram.gram);

    nlohmann::json j = gram_json(result.gram.gram, result.gram.ids, result.gram.features, config);
    j["separation"] = {{"within_mean", result.separation.within_mean},
                       {"between_mean", result.separation.between_mean},
                       {"ratio", result.separation.ratio}};
    j["timings"] = {{"features_seconds", result.gram.feature_seconds}, {"gram_seconds", result.gram.gram_seconds}};
    write_text_file(dir / (stem + ".json"), j.dump(2) + "\n");

    char line[160];
    std::snprintf(line, sizeof line, "within-class mean %.12g, between-class mean %.12g, ratio %.12g\n",
                  result.separation.within_mean, result.separation.between_mean, result.separation.ratio);
    log << line;
    return j;
}

fs::path cmd_fetch(const FetchConfig& config, std::ostream& log) {
    FetchOptions options;
    if (!config.url.empty()) options.url = config.url;
    if (!config.sha256.empty()) options.sha256 = config.sha256;
    const fs::path dir = fetch_dataset(config.name, config.dir.empty() ? fs::path("data") : config.dir, options);
    const TuArchive& entry = find_archive(config.name);
    const Dataset ds = load_tu(dir, entry.name);
    log << "fetched " << entry.name << " into " << dir.string() << " (" << ds.size() << " graphs)\n";
    return dir;
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Effective-resistance graph kernels: Gram matrices, SVM benchmarks, Erdos-Renyi discrimination"};
    app.set_version_flag("--version", kToolVersion);
    app.require_subcommand(1);

    RunConfig config;
    config.threads = default_thread_count();
    std::string mode = "full";
    FetchConfig fetch;

    const auto add_common = [&](CLI::App* sub) {
        sub->add_option("--mode", mode, "feature mode")->check(CLI::IsMember({"full", "reduced"}));
        sub->add_option("--gamma", config.gamma, "RBF width")->check(CLI::PositiveNumber);
        sub->add_option("--seed", config.seed, "master seed");
        sub->add_option("--threads", config.threads, "worker threads")->check(CLI::PositiveNumber);
        sub->add_option("--out", config.out, "output directory");
    };

    auto* gram_cmd = app.add_subcommand("gram", "Gram matrix of a TU dataset (CSV + JSON)");
    gram_cmd->add_option("--dataset", config.dataset, "dataset name, e.g. MUTAG")->required();
    gram_cmd->add_option("--dir", config.dir, "directory holding the TU files")->required();
    add_common(gram_cmd);

    auto* bench_cmd = app.add_subcommand("benchmark", "repeated 80/20 SVM protocol over the C grid");
    bench_cmd->add_option("--dataset", config.dataset, "dataset name")->required();
    bench_cmd->add_option("--dir", config.dir, "directory holding the TU files")->required();
    bench_cmd->add_option("--c-grid", config.c_grid, "C values (default 1e-3 1e-2 1e-1 1 1e2 1e3)")->expected(1, -1);
    add_common(bench_cmd);

    auto* er_cmd = app.add_subcommand("er-discriminate", "two-class Erdos-Renyi Gram heatmap");
    er_cmd->add_option("--n", config.n, "vertices per graph")->check(CLI::PositiveNumber);
    er_cmd->add_option("--p1", config.p1, "edge probability of class 1");
    er_cmd->add_option("--p2", config.p2, "edge probability of class 2");
    er_cmd->add_option("--count-per-class", config.count_per_class, "graphs per class");
    add_common(er_cmd);

    auto* fetch_cmd = app.add_subcommand("fetch", "download and verify a TU archive");
    fetch_cmd->add_option("--dataset", fetch.name, "AIDS, NCI1, PTC_MR, MUTAG or PROTEINS")->required();
    fetch_cmd->add_option("--dir", fetch.dir, "target directory (default ./data)");
    fetch_cmd->add_option("--url", fetch.url, "override the archive URL");
    fetch_cmd->add_option("--sha256", fetch.sha256, "expected archive digest");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e, out, err);
        return rc == 0 ? kExitOk : kExitUsageError;
    }

    try {
        config.mode = parse_feature_mode(mode);
        if (gram_cmd->parsed()) {
            config.command = "gram";
            cmd_gram(config, out);
        } else if (bench_cmd->parsed()) {
            config.command = "benchmark";
            cmd_benchmark(config, out);
        } else if (er_cmd->parsed()) {
            config.command = "er-discriminate";
            config.dataset = "er";
            cmd_er_discriminate(config, out);
        } else if (fetch_cmd->parsed()) {
            cmd_fetch(fetch, out);
        }
    } catch (const InputError& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsageError;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitComputeError;
    }
    return kExitOk;
}

}  // namespace erk
