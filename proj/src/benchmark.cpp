#include "ancr/benchmark.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <thread>

#include <nlohmann/json.hpp>

namespace ancr {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split_list(const std::string& s) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        tok = trim(tok);
        if (!tok.empty()) out.push_back(tok);
    }
    return out;
}

std::string fmt(const char* format, double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), format, v);
    return buf;
}

struct QueryStats {
    double accuracy = 0.0;
    double mean_iters = 0.0;
    std::size_t nonconverged = 0;
};

// Classifies every test column against a shared read-only dictionary,
// distributing queries across `jobs` threads. Per-query results land in
// index order, so parallel and serial runs agree exactly.
QueryStats classify_all(const PreparedDictionary& dict, const ClassIndex& idx, const Matrix& test,
                        const std::vector<int>& labels, const SolverConfig& cfg, Method method,
                        unsigned jobs) {
    const Eigen::Index m = test.cols();
    std::vector<int> predicted(static_cast<std::size_t>(m));
    std::vector<int> iters(static_cast<std::size_t>(m), 0);
    std::vector<char> converged(static_cast<std::size_t>(m), 1);

    if (jobs == 0) jobs = std::max(1u, std::thread::hardware_concurrency());
    jobs = std::min<unsigned>(jobs, static_cast<unsigned>(std::max<Eigen::Index>(m, 1)));

    std::atomic<Eigen::Index> next{0};
    auto worker = [&]() {
        for (Eigen::Index q = next.fetch_add(1); q < m; q = next.fetch_add(1)) {
            const SolveResult sol = solve(dict, test.col(q), cfg, method);
            const Vector residuals = class_residuals(dict, idx, test.col(q), sol.c);
            predicted[static_cast<std::size_t>(q)] = argmin_label(residuals);
            iters[static_cast<std::size_t>(q)] = sol.iterations;
            converged[static_cast<std::size_t>(q)] = sol.converged ? 1 : 0;
        }
    };
    std::vector<std::thread> pool;
    for (unsigned t = 1; t < jobs; ++t) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();

    QueryStats stats;
    std::size_t correct = 0;
    long iter_sum = 0;
    for (Eigen::Index q = 0; q < m; ++q) {
        if (predicted[static_cast<std::size_t>(q)] == labels[static_cast<std::size_t>(q)])
            ++correct;
        iter_sum += iters[static_cast<std::size_t>(q)];
        if (!converged[static_cast<std::size_t>(q)]) ++stats.nonconverged;
    }
    stats.accuracy = 100.0 * static_cast<double>(correct) / static_cast<double>(m);
    stats.mean_iters = static_cast<double>(iter_sum) / static_cast<double>(m);
    return stats;
}

struct LoadedPools {
    LabeledDataset train;
    LabeledDataset test;
};

LoadedPools load_pools(const ExperimentConfig& cfg) {
    LoadedPools pools;
    pools.train = load_auto(cfg.train_path, cfg.rescale_signed);
    pools.test = cfg.test_path.empty()
                     ? pools.train
                     : load_auto(cfg.test_path, cfg.rescale_signed,
                                 pools.train.dim());
    if (pools.train.dim() != pools.test.dim())
        throw DataError("train/test dimensions differ");
    return pools;
}

}  // namespace

void ExperimentConfig::validate() const {
    if (train_path.empty()) throw ConfigError("train dataset path required");
    if (methods.empty()) throw ConfigError("at least one method required");
    if (lambdas.empty()) throw ConfigError("lambda list must be non-empty");
    if (per_class_train.empty()) throw ConfigError("per_class_train list must be non-empty");
    if (repetitions < 1) throw ConfigError("repetitions must be >= 1");
    for (double l : lambdas)
        if (!(l > 0.0)) throw ConfigError("lambda values must be > 0");
}

ExperimentConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config " + path);

    ExperimentConfig cfg;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        line = trim(line);
        if (line.empty() || line[0] == '#') continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError(path + ":" + std::to_string(lineno) + ": expected key = value");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        try {
            if (key == "train") cfg.train_path = value;
            else if (key == "test") cfg.test_path = value;
            else if (key == "methods") {
                cfg.methods.clear();
                for (const auto& m : split_list(value)) cfg.methods.push_back(parse_method(m));
            } else if (key == "lambda" || key == "lambdas") {
                cfg.lambdas.clear();
                for (const auto& l : split_list(value)) cfg.lambdas.push_back(std::stod(l));
            } else if (key == "rho") cfg.rho = std::stod(value);
            else if (key == "tol") cfg.tol = std::stod(value);
            else if (key == "max_iters") cfg.max_iters = std::stoi(value);
            else if (key == "per_class_train") {
                cfg.per_class_train.clear();
                for (const auto& n : split_list(value))
                    cfg.per_class_train.push_back(static_cast<std::size_t>(std::stoul(n)));
            } else if (key == "pca_dim") cfg.pca_dim = static_cast<Eigen::Index>(std::stol(value));
            else if (key == "seed") cfg.seed = std::stoull(value);
            else if (key == "repetitions") cfg.repetitions = std::stoul(value);
            else if (key == "out") cfg.out_dir = value;
            else if (key == "jobs") cfg.jobs = static_cast<unsigned>(std::stoul(value));
            else if (key == "rescale_signed") cfg.rescale_signed = (value == "true" || value == "1");
            else throw ConfigError("unknown key '" + key + "'");
        } catch (const ConfigError&) {
            throw;
        } catch (const std::exception& e) {
            throw ConfigError(path + ":" + std::to_string(lineno) + ": " + e.what());
        }
    }
    cfg.validate();
    return cfg;
}

std::vector<RunReport::Summary> RunReport::summaries() const {
    std::vector<Summary> out;
    for (const auto& row : rows) {
        auto it = std::find_if(out.begin(), out.end(), [&](const Summary& s) {
            return s.method == row.method && s.n_per_class == row.n_per_class &&
                   s.lambda == row.lambda;
        });
        if (it == out.end())
            out.push_back({row.method, row.n_per_class, row.lambda, 0.0, 0.0});
    }
    for (auto& s : out) {
        std::vector<double> acc;
        for (const auto& row : rows)
            if (row.method == s.method && row.n_per_class == s.n_per_class &&
                row.lambda == s.lambda)
                acc.push_back(row.accuracy);
        double mean = 0.0;
        for (double a : acc) mean += a;
        mean /= static_cast<double>(acc.size());
        double var = 0.0;
        for (double a : acc) var += (a - mean) * (a - mean);
        s.mean = mean;
        s.stddev = acc.size() > 1 ? std::sqrt(var / static_cast<double>(acc.size() - 1)) : 0.0;
    }
    return out;
}

std::string RunReport::to_csv(bool with_timings) const {
    std::string out = "method,N,lambda,rep,accuracy,mean_iters,nonconverged_count";
    if (with_timings) out += ",seconds";
    out += "\n";
    for (const auto& r : rows) {
        out += method_name(r.method);
        out += "," + std::to_string(r.n_per_class);
        out += "," + fmt("%g", r.lambda);
        out += "," + std::to_string(r.rep);
        out += "," + fmt("%.6f", r.accuracy);
        out += "," + fmt("%.4f", r.mean_iters);
        out += "," + std::to_string(r.nonconverged);
        if (with_timings) out += "," + fmt("%.3f", r.seconds);
        out += "\n";
    }
    return out;
}

std::string RunReport::to_json() const {
    nlohmann::json j;
    j["rescaled_from_signed"] = rescaled_from_signed;
    j["rows"] = nlohmann::json::array();
    for (const auto& r : rows) {
        j["rows"].push_back({{"method", method_name(r.method)},
                             {"N", r.n_per_class},
                             {"lambda", r.lambda},
                             {"rep", r.rep},
                             {"accuracy", r.accuracy},
                             {"mean_iters", r.mean_iters},
                             {"nonconverged_count", r.nonconverged},
                             {"seconds", r.seconds}});
    }
    j["summary"] = nlohmann::json::array();
    for (const auto& s : summaries()) {
        j["summary"].push_back({{"method", method_name(s.method)},
                                {"N", s.n_per_class},
                                {"lambda", s.lambda},
                                {"mean_accuracy", s.mean},
                                {"std_accuracy", s.stddev}});
    }
    return j.dump(2);
}

RunReport run_benchmark(const ExperimentConfig& cfg) {
    cfg.validate();
    const LoadedPools pools = load_pools(cfg);

    RunReport report;
    report.rescaled_from_signed =
        pools.train.rescaled_from_signed || pools.test.rescaled_from_signed;

    for (std::size_t n : cfg.per_class_train) {
        for (std::size_t rep = 0; rep < cfg.repetitions; ++rep) {
            const SplitSpec spec{n, cfg.seed, cfg.repetitions};
            const DatasetSplit split =
                preprocess(sample_split(pools.train, pools.test, spec, rep), cfg.pca_dim);

            for (double lambda : cfg.lambdas) {
                SolverConfig scfg{lambda, cfg.rho, cfg.tol, cfg.max_iters};
                const PreparedDictionary dict = prepare_dictionary(split.train, scfg);
                for (Method method : cfg.methods) {
                    const auto t0 = std::chrono::steady_clock::now();
                    const QueryStats stats = classify_all(dict, split.index, split.test,
                                                          split.test_labels, scfg, method,
                                                          cfg.jobs);
                    const double secs =
                        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
                            .count();
                    report.rows.push_back({method, n, lambda, rep, stats.accuracy,
                                           stats.mean_iters, stats.nonconverged, secs});
                }
            }
        }
    }
    return report;
}

RunReport run_lambda_sweep(const ExperimentConfig& cfg) {
    if (cfg.lambdas.empty()) throw ConfigError("lambda sweep needs a lambda list");
    return run_benchmark(cfg);
}

std::string emit_convergence(const ExperimentConfig& cfg, std::size_t query_index) {
    cfg.validate();
    const LoadedPools pools = load_pools(cfg);

    const SplitSpec spec{cfg.per_class_train.front(), cfg.seed, cfg.repetitions};
    const DatasetSplit split =
        preprocess(sample_split(pools.train, pools.test, spec, 0), cfg.pca_dim);
    if (query_index >= static_cast<std::size_t>(split.test.cols()))
        throw IndexOutOfRange("query " + std::to_string(query_index) + " of " +
                              std::to_string(split.test.cols()));

    SolverConfig scfg{cfg.lambdas.front(), cfg.rho, cfg.tol, cfg.max_iters};
    const PreparedDictionary dict = prepare_dictionary(split.train, scfg);
    const SolveResult sol =
        solve(dict, split.test.col(static_cast<Eigen::Index>(query_index)), scfg,
              cfg.methods.front());

    std::string csv = "t,objective,primal_residual\n";
    for (std::size_t t = 0; t < sol.objective_history.size(); ++t) {
        csv += std::to_string(t);
        csv += "," + fmt("%.12g", sol.objective_history[t]);
        csv += "," + fmt("%.12g",
                         t < sol.primal_residual_history.size() ? sol.primal_residual_history[t]
                                                                : 0.0);
        csv += "\n";
    }
    return csv;
}

void write_file(const std::string& path, const std::string& content) {
    const std::filesystem::path p(path);
    if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
    std::ofstream out(p, std::ios::binary);
    if (!out) throw DataError("cannot write " + path);
    out << content;
}

}  // namespace ancr
