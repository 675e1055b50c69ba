#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ancr/dataset.hpp"

namespace ancr {

struct ExperimentConfig {
    std::string train_path;
    std::string test_path;              // empty -> train file provides the test pool too
    std::vector<Method> methods = {Method::ancr};
    std::vector<double> lambdas = {1e-3};
    double rho = 1.0;
    double tol = 1e-6;
    int max_iters = 200;
    std::vector<std::size_t> per_class_train = {50};
    std::optional<Eigen::Index> pca_dim;
    std::uint64_t seed = 0;
    std::size_t repetitions = 1;
    std::string out_dir = ".";
    unsigned jobs = 0;                  // 0 -> hardware concurrency
    bool rescale_signed = true;         // map [-1,1] feature files onto [0,1]

    void validate() const;
};

// Reads flat "key = value" lines; '#' comments; lists are comma-separated.
ExperimentConfig load_config(const std::string& path);

struct RunRow {
    Method method;
    std::size_t n_per_class;
    double lambda;
    std::size_t rep;
    double accuracy;            // percent
    double mean_iters;
    std::size_t nonconverged;
    double seconds;
};

struct RunReport {
    std::vector<RunRow> rows;
    bool rescaled_from_signed = false;

    // Mean/std of accuracy over repetitions for one (method, N, lambda) cell.
    struct Summary {
        Method method;
        std::size_t n_per_class;
        double lambda;
        double mean;
        double stddev;
    };
    std::vector<Summary> summaries() const;

    // One line per row; `with_timings` controls the seconds column so that
    // seeded runs can be compared byte for byte.
    std::string to_csv(bool with_timings = true) const;
    std::string to_json() const;
};

// Full protocol: for every (N, repetition) draw a seeded per-class split,
// preprocess, then classify the whole test pool with each (method, lambda).
RunReport run_benchmark(const ExperimentConfig& cfg);

// run_benchmark restricted to one N per row but sweeping the lambda list;
// identical output schema.
RunReport run_lambda_sweep(const ExperimentConfig& cfg);

// Per-iteration trace (t, objective, primal_residual) of one test query,
// coded with the first configured method at the first N / lambda, rep 0.
std::string emit_convergence(const ExperimentConfig& cfg, std::size_t query_index);

void write_file(const std::string& path, const std::string& content);

}  // namespace ancr
