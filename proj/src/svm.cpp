#include "erk/svm.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <numeric>
#include <set>
#include <string>

#include "erk/error.hpp"
#include "erk/parallel.hpp"
#include "erk/rng.hpp"

namespace erk {

double SvmModel::decision(std::span<const double> k_row) const {
    if (k_row.size() != alpha.size()) {
        throw InputError("kernel row has " + std::to_string(k_row.size()) + " entries, model expects " +
                         std::to_string(alpha.size()));
    }
    double f = bias;
    for (std::size_t i : support) f += alpha[i] * labels[i] * k_row[i];
    return f;
}

int predict(const SvmModel& model, std::span<const double> k_row) {
    return model.decision(k_row) >= 0.0 ? 1 : -1;
}

std::vector<double> default_c_grid() { return {1e-3, 1e-2, 1e-1, 1.0, 1e2, 1e3}; }

SvmModel train(const Eigen::MatrixXd& K, std::span<const int> y, double C, const SvmOptions& options) {
    const std::size_t n = y.size();
    if (static_cast<std::size_t>(K.rows()) != n || static_cast<std::size_t>(K.cols()) != n) {
        throw InputError("Gram matrix is " + std::to_string(K.rows()) + "x" + std::to_string(K.cols()) + " but " +
                         std::to_string(n) + " labels were given");
    }
    if (!(C > 0.0)) throw InputError("C must be positive");
    bool has_pos = false;
    bool has_neg = false;
    for (int label : y) {
        if (label == 1) has_pos = true;
        else if (label == -1) has_neg = true;
        else throw InputError("labels must be -1 or +1, got " + std::to_string(label));
    }
    if (!(has_pos && has_neg)) throw InputError("single-class labels: training needs both -1 and +1");

    constexpr double tau = 1e-12;
    const auto k = [&](std::size_t i, std::size_t j) {
        return K(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
    };
    const auto at_upper = [&](double a) { return a >= C; };
    const auto at_lower = [&](double a) { return a <= 0.0; };

    std::vector<double> alpha(n, 0.0);
    std::vector<double> grad(n, -1.0);  // gradient of 1/2 a'Qa - e'a, Q_ij = y_i y_j K_ij
    const std::size_t cap = options.max_iterations ? options.max_iterations : std::max<std::size_t>(10'000'000, 100 * n);

    SvmModel model;
    model.C = C;
    model.labels.assign(y.begin(), y.end());

    std::size_t iter = 0;
    for (; iter < cap; ++iter) {
        // i: maximal violator in I_up
        double gmax = -std::numeric_limits<double>::infinity();
        std::size_t i = n;
        for (std::size_t t = 0; t < n; ++t) {
            const bool in_up = y[t] == 1 ? !at_upper(alpha[t]) : !at_lower(alpha[t]);
            if (in_up && -y[t] * grad[t] >= gmax) {
                gmax = -y[t] * grad[t];
                i = t;
            }
        }
        // j: second-order choice in I_low
        double gmax2 = -std::numeric_limits<double>::infinity();
        double best_obj = std::numeric_limits<double>::infinity();
        std::size_t j = n;
        for (std::size_t t = 0; t < n; ++t) {
            const bool in_low = y[t] == 1 ? !at_lower(alpha[t]) : !at_upper(alpha[t]);
            if (!in_low) continue;
            const double yg = y[t] * grad[t];
            gmax2 = std::max(gmax2, yg);
            if (i == n) continue;
            const double b = gmax + yg;
            if (b > 0.0) {
                double a = k(i, i) + k(t, t) - 2.0 * k(i, t);
                if (a <= 0.0) a = tau;
                const double obj = -(b * b) / a;
                if (obj <= best_obj) {
                    best_obj = obj;
                    j = t;
                }
            }
        }
        if (i == n || j == n || gmax + gmax2 < options.tolerance) {
            model.converged = true;
            break;
        }

        const double old_ai = alpha[i];
        const double old_aj = alpha[j];
        double quad = k(i, i) + k(j, j) - 2.0 * k(i, j);
        if (quad <= 0.0) quad = tau;
        if (y[i] != y[j]) {
            const double delta = (-grad[i] - grad[j]) / quad;
            const double diff = alpha[i] - alpha[j];
            alpha[i] += delta;
            alpha[j] += delta;
            if (diff > 0.0) {
                if (alpha[j] < 0.0) { alpha[j] = 0.0; alpha[i] = diff; }
            } else {
                if (alpha[i] < 0.0) { alpha[i] = 0.0; alpha[j] = -diff; }
            }
            if (diff > 0.0) {
                if (alpha[i] > C) { alpha[i] = C; alpha[j] = C - diff; }
            } else {
                if (alpha[j] > C) { alpha[j] = C; alpha[i] = C + diff; }
            }
        } else {
            const double delta = (grad[i] - grad[j]) / quad;
            const double sum = alpha[i] + alpha[j];
            alpha[i] -= delta;
            alpha[j] += delta;
            if (sum > C) {
                if (alpha[i] > C) { alpha[i] = C; alpha[j] = sum - C; }
            } else {
                if (alpha[j] < 0.0) { alpha[j] = 0.0; alpha[i] = sum; }
            }
            if (sum > C) {
                if (alpha[j] > C) { alpha[j] = C; alpha[i] = sum - C; }
            } else {
                if (alpha[i] < 0.0) { alpha[i] = 0.0; alpha[j] = sum; }
            }
        }

        const double dai = alpha[i] - old_ai;
        const double daj = alpha[j] - old_aj;
        for (std::size_t t = 0; t < n; ++t) {
            grad[t] += y[t] * (y[i] * k(t, i) * dai + y[j] * k(t, j) * daj);
        }
    }
    model.iterations = iter;

    // rho: average y_t G_t over free vectors, else midpoint of the feasible interval
    double ub = std::numeric_limits<double>::infinity();
    double lb = -std::numeric_limits<double>::infinity();
    double free_sum = 0.0;
    std::size_t free_count = 0;
    for (std::size_t t = 0; t < n; ++t) {
        const double yg = y[t] * grad[t];
        if (at_upper(alpha[t])) {
            if (y[t] == -1) ub = std::min(ub, yg);
            else lb = std::max(lb, yg);
        } else if (at_lower(alpha[t])) {
            if (y[t] == 1) ub = std::min(ub, yg);
            else lb = std::max(lb, yg);
        } else {
            free_sum += yg;
            ++free_count;
        }
    }
    const double rho = free_count > 0 ? free_sum / static_cast<double>(free_count) : 0.5 * (ub + lb);
    model.bias = -rho;
    model.alpha = std::move(alpha);
    for (std::size_t t = 0; t < n; ++t) {
        if (model.alpha[t] > 0.0) model.support.push_back(t);
    }
    return model;
}

Split stratified_split(std::span<const int> labels, std::uint64_t seed, double train_fraction) {
    std::set<int> classes(labels.begin(), labels.end());
    SplitMix64 rng(seed);
    Split split;
    for (int cls : classes) {
        std::vector<std::size_t> members;
        for (std::size_t i = 0; i < labels.size(); ++i) {
            if (labels[i] == cls) members.push_back(i);
        }
        for (std::size_t i = members.size(); i > 1; --i) {
            std::swap(members[i - 1], members[rng.below(i)]);
        }
        auto n_train = static_cast<std::size_t>(std::floor(train_fraction * static_cast<double>(members.size())));
        n_train = std::max<std::size_t>(n_train, 1);
        if (members.size() >= 2) n_train = std::min(n_train, members.size() - 1);
        split.train.insert(split.train.end(), members.begin(), members.begin() + static_cast<std::ptrdiff_t>(n_train));
        split.test.insert(split.test.end(), members.begin() + static_cast<std::ptrdiff_t>(n_train), members.end());
    }
    std::sort(split.train.begin(), split.train.end());
    std::sort(split.test.begin(), split.test.end());
    return split;
}

std::pair<double, double> mean_std(std::span<const double> values) {
    if (values.empty()) return {0.0, 0.0};
    const double mean = std::accumulate(values.begin(), values.end(), 0.0) / static_cast<double>(values.size());
    double ss = 0.0;
    for (double v : values) ss += (v - mean) * (v - mean);
    return {mean, std::sqrt(ss / static_cast<double>(values.size()))};
}

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

constexpr std::uint64_t kSplitStream = 0x73706c6974730000ULL;  // "splits"

void check_binary(std::span<const int> labels) {
    bool pos = false;
    bool neg = false;
    for (int label : labels) {
        if (label == 1) pos = true;
        else if (label == -1) neg = true;
        else throw InputError("non-binary labels: expected -1/+1, found " + std::to_string(label));
    }
    if (!(pos && neg)) throw InputError("non-binary labels: only one class present");
}

}  // namespace

BenchmarkReport run_protocol(const std::string& name, std::span<const FeatureVector> features,
                             std::span<const int> labels, const ProtocolOptions& options) {
    if (features.size() != labels.size()) throw InputError("feature and label counts differ");
    if (features.size() < 10) throw InputError("benchmark protocol needs at least 10 graphs");
    if (options.c_grid.empty()) throw InputError("empty C grid");
    if (options.repeats == 0) throw InputError("repeat count must be positive");
    check_binary(labels);

    BenchmarkReport report;
    report.dataset = name;
    report.mode = options.mode;
    report.gamma = options.gamma;
    report.seed = options.master_seed;

    auto start = Clock::now();
    const GramMatrix K = gram(features, options.gamma, options.threads);
    report.timings.gram_seconds = seconds_since(start);

    std::vector<Split> splits;
    for (std::size_t r = 0; r < options.repeats; ++r) {
        splits.push_back(stratified_split(labels, derive_seed(options.master_seed ^ kSplitStream, r),
                                          options.train_fraction));
        report.train_sizes.push_back(splits.back().train.size());
    }

    const std::size_t n_c = options.c_grid.size();
    std::vector<double> accuracy(n_c * options.repeats, 0.0);
    start = Clock::now();
    parallel_for(n_c * options.repeats, options.threads, [&](std::size_t task) {
        const std::size_t c_index = task / options.repeats;
        const Split& split = splits[task % options.repeats];
        const auto n_train = static_cast<Eigen::Index>(split.train.size());

        Eigen::MatrixXd K_train(n_train, n_train);
        std::vector<int> y_train(split.train.size());
        for (Eigen::Index a = 0; a < n_train; ++a) {
            y_train[static_cast<std::size_t>(a)] = labels[split.train[static_cast<std::size_t>(a)]];
            for (Eigen::Index b = 0; b < n_train; ++b) {
                K_train(a, b) = K.values(static_cast<Eigen::Index>(split.train[static_cast<std::size_t>(a)]),
                                         static_cast<Eigen::Index>(split.train[static_cast<std::size_t>(b)]));
            }
        }
        const SvmModel model = train(K_train, y_train, options.c_grid[c_index], options.svm);

        std::size_t correct = 0;
        std::vector<double> row(split.train.size());
        for (std::size_t t : split.test) {
            for (std::size_t a = 0; a < split.train.size(); ++a) {
                row[a] = K.values(static_cast<Eigen::Index>(t), static_cast<Eigen::Index>(split.train[a]));
            }
            if (predict(model, row) == labels[t]) ++correct;
        }
        accuracy[task] = 100.0 * static_cast<double>(correct) / static_cast<double>(split.test.size());
    });
    report.timings.training_seconds = seconds_since(start);

    for (std::size_t c = 0; c < n_c; ++c) {
        GridRow row;
        row.C = options.c_grid[c];
        row.splits.assign(accuracy.begin() + static_cast<std::ptrdiff_t>(c * options.repeats),
                          accuracy.begin() + static_cast<std::ptrdiff_t>((c + 1) * options.repeats));
        std::tie(row.mean, row.std) = mean_std(row.splits);
        report.grid.push_back(std::move(row));
    }
    for (std::size_t c = 1; c < n_c; ++c) {
        const auto& cand = report.grid[c];
        const auto& cur = report.grid[report.best];
        if (cand.mean > cur.mean || (cand.mean == cur.mean && cand.C < cur.C)) report.best = c;
    }
    return report;
}

BenchmarkReport run_protocol(const Dataset& dataset, const ProtocolOptions& options) {
    check_binary(dataset.labels);
    const auto start = Clock::now();
    const auto features = extract_features(dataset.graphs, options.mode, options.master_seed, options.threads,
                                           options.features);
    const double feature_seconds = seconds_since(start);
    BenchmarkReport report = run_protocol(dataset.name, features, dataset.labels, options);
    report.timings.features_seconds = feature_seconds;
    return report;
}

}  // namespace erk
