#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "erk/kernel.hpp"
#include "erk/tudata.hpp"

namespace erk {

/// Soft-margin dual SVM over a precomputed kernel.
struct SvmModel {
    std::vector<double> alpha;        // one per training point, in [0, C]
    std::vector<int> labels;          // training labels in {-1, +1}
    std::vector<std::size_t> support;  // indices with alpha > 0
    double bias = 0.0;
    double C = 1.0;
    std::size_t iterations = 0;
    bool converged = false;

    /// sum_i alpha_i y_i k_row[i] + bias
    double decision(std::span<const double> k_row) const;
};

struct SvmOptions {
    double tolerance = 1e-3;  // maximal KKT violation m(alpha) - M(alpha)
    /// Hard cap on SMO pair updates; 0 means max(10^7, 100 N).
    std::size_t max_iterations = 0;
};

/// SMO with second-order working-set selection (Fan, Chen & Lin 2005) on
/// the dual. K is the training Gram, y the labels in {-1,+1}.
SvmModel train(const Eigen::MatrixXd& K, std::span<const int> y, double C, const SvmOptions& options = {});

/// Sign of the decision value; an exact zero maps to +1.
int predict(const SvmModel& model, std::span<const double> k_row);

/// The C grid as printed for the benchmark protocol (10^1 is absent).
std::vector<double> default_c_grid();

struct Split {
    std::vector<std::size_t> train;
    std::vector<std::size_t> test;
};

/// Stratified 80/20 split: each class contributes floor(0.8 * class size)
/// training items (at least one, and at most size - 1 when the class has two
/// or more members), so the training total is floor(0.8 N) or one below.
Split stratified_split(std::span<const int> labels, std::uint64_t seed, double train_fraction = 0.8);

struct ProtocolOptions {
    FeatureMode mode = FeatureMode::full;
    double gamma = 1.0;
    std::uint64_t master_seed = 0;
    std::size_t repeats = 10;
    double train_fraction = 0.8;
    std::vector<double> c_grid = default_c_grid();
    std::size_t threads = 1;
    SvmOptions svm;
    FeatureOptions features;
};

struct GridRow {
    double C = 0.0;
    double mean = 0.0;  // percent
    double std = 0.0;   // population standard deviation, percent
    std::vector<double> splits;
};

struct BenchmarkReport {
    std::string dataset;
    FeatureMode mode = FeatureMode::full;
    double gamma = 1.0;
    std::uint64_t seed = 0;
    std::vector<GridRow> grid;
    std::size_t best = 0;  // index into grid; ties go to the smaller C
    std::vector<std::size_t> train_sizes;
    struct Timings {
        double features_seconds = 0.0;
        double gram_seconds = 0.0;
        double training_seconds = 0.0;
    } timings;

    const GridRow& best_row() const { return grid.at(best); }
};

/// Mean and population standard deviation.
std::pair<double, double> mean_std(std::span<const double> values);

/// Features are computed once, the full Gram once; each repeat draws one
/// stratified split which is reused for every C in the grid.
BenchmarkReport run_protocol(const Dataset& dataset, const ProtocolOptions& options);

/// Same protocol over already-extracted features.
BenchmarkReport run_protocol(const std::string& name, std::span<const FeatureVector> features,
                             std::span<const int> labels, const ProtocolOptions& options);

}  // namespace erk
