#include <cstdio>
#include <iostream>
#include <random>
#include <string>

#include <CLI11.hpp>

#include "ancr/benchmark.hpp"
#include "ancr/oracle.hpp"

namespace {

struct CommonFlags {
    std::string config_path;
    std::string out_dir;
    std::string method;
    double lambda = -1.0;
    std::uint64_t seed = 0;
    bool seed_set = false;
    unsigned jobs = 0;
    bool jobs_set = false;
};

void add_common(CLI::App* cmd, CommonFlags& f) {
    cmd->add_option("--config", f.config_path, "experiment config file (key = value lines)");
    cmd->add_option("--out", f.out_dir, "output directory for reports");
    cmd->add_option("--method", f.method, "override method list with a single method");
    cmd->add_option("--lambda", f.lambda, "override the lambda list with a single value");
    cmd->add_option("--seed", f.seed, "override the sampling seed")
        ->each([&](const std::string&) { f.seed_set = true; });
    cmd->add_option("--jobs", f.jobs, "worker threads (0 = all cores)")
        ->each([&](const std::string&) { f.jobs_set = true; });
}

ancr::ExperimentConfig build_config(const CommonFlags& f) {
    ancr::ExperimentConfig cfg;
    if (!f.config_path.empty()) cfg = ancr::load_config(f.config_path);
    if (!f.out_dir.empty()) cfg.out_dir = f.out_dir;
    if (!f.method.empty()) cfg.methods = {ancr::parse_method(f.method)};
    if (f.lambda > 0.0) cfg.lambdas = {f.lambda};
    if (f.seed_set) cfg.seed = f.seed;
    if (f.jobs_set) cfg.jobs = f.jobs;
    return cfg;
}

void write_report(const ancr::ExperimentConfig& cfg, const ancr::RunReport& report,
                  const std::string& stem) {
    const std::string base = cfg.out_dir + "/" + stem;
    ancr::write_file(base + ".csv", report.to_csv(true));
    ancr::write_file(base + ".accuracy.csv", report.to_csv(false));
    ancr::write_file(base + ".json", report.to_json());
    for (const auto& s : report.summaries()) {
        std::printf("%-5s N=%-4zu lambda=%-8g mean=%.2f%% std=%.2f\n", ancr::method_name(s.method),
                    s.n_per_class, s.lambda, s.mean, s.stddev);
    }
    std::printf("reports: %s.{csv,accuracy.csv,json}\n", base.c_str());
}

int run_oracle_check(std::uint64_t seed, int instances) {
    std::mt19937_64 eng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    double worst_gap = 0.0;
    double worst_kkt = 0.0;
    for (int i = 0; i < instances; ++i) {
        const Eigen::Index d = 2 + static_cast<Eigen::Index>(eng() % 7);
        ancr::Matrix x(d, 3);
        for (Eigen::Index r = 0; r < d; ++r)
            for (Eigen::Index c = 0; c < 3; ++c) x(r, c) = gauss(eng);
        ancr::Vector y(d);
        for (Eigen::Index r = 0; r < d; ++r) y(r) = gauss(eng);
        y.normalize();

        const ancr::SolverConfig cfg{1e-3, 1.0, 1e-8, 2000};
        const auto dict = ancr::prepare_dictionary(ancr::normalize_columns(x), cfg);
        const auto sol = ancr::solve_ancr(dict, y, cfg);
        const auto grid = ancr::oracle::grid_qp_simplex(dict, y, cfg.lambda, 1e-3);
        const double gap = dict.objective(y, sol.z, cfg.lambda) - grid.objective;
        worst_gap = std::max(worst_gap, gap);
        worst_kkt = std::max(worst_kkt,
                             ancr::oracle::kkt_certificate_ancr(dict, y, cfg.lambda, sol.z));
    }
    std::printf("oracle-check: %d instances, worst objective gap vs grid %.3e, worst KKT "
                "residual %.3e\n",
                instances, worst_gap, worst_kkt);
    return (worst_gap <= 1e-4 && worst_kkt <= 1e-4) ? 0 : 3;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Affine non-negative collaborative representation benchmark"};
    app.require_subcommand(1);

    CommonFlags bench_f, sweep_f, conv_f;
    auto* bench = app.add_subcommand("bench", "run the benchmark protocol from a config");
    add_common(bench, bench_f);

    auto* sweep = app.add_subcommand("sweep", "run a lambda sweep");
    add_common(sweep, sweep_f);

    auto* conv = app.add_subcommand("converge", "emit one query's per-iteration trace");
    std::size_t query_index = 0;
    add_common(conv, conv_f);
    conv->add_option("--query", query_index, "test query index")->required();

    auto* one = app.add_subcommand("solve-one", "code one query and print the result");
    std::string dict_file, query_file, one_method = "ancr";
    double one_lambda = 1e-3;
    one->add_option("--dict", dict_file, "labeled dataset used as the dictionary")->required();
    one->add_option("--query", query_file, "dataset file whose first sample is the query")
        ->required();
    one->add_option("--method", one_method, "ancr|ncr|crc|acr");
    one->add_option("--lambda", one_lambda, "regularization weight");

    auto* oracle_cmd = app.add_subcommand("oracle-check", "audit the solver against the grid oracle");
    std::uint64_t oracle_seed = 7;
    int oracle_instances = 25;
    oracle_cmd->add_option("--seed", oracle_seed, "instance generator seed");
    oracle_cmd->add_option("--instances", oracle_instances, "number of random instances");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*bench) {
            const auto cfg = build_config(bench_f);
            write_report(cfg, ancr::run_benchmark(cfg), "bench");
        } else if (*sweep) {
            const auto cfg = build_config(sweep_f);
            write_report(cfg, ancr::run_lambda_sweep(cfg), "sweep");
        } else if (*conv) {
            const auto cfg = build_config(conv_f);
            const std::string csv = ancr::emit_convergence(cfg, query_index);
            const std::string path =
                cfg.out_dir + "/convergence_q" + std::to_string(query_index) + ".csv";
            ancr::write_file(path, csv);
            std::printf("%s", csv.c_str());
            std::printf("wrote %s\n", path.c_str());
        } else if (*one) {
            const auto ds = ancr::load_auto(dict_file, true);
            const auto query_ds = ancr::load_auto(query_file, true, ds.dim());
            if (query_ds.dim() != ds.dim()) throw ancr::DataError("query dimension mismatch");

            // Sort dictionary columns class-contiguously.
            const auto by_class = ds.columns_by_class();
            ancr::Matrix x(ds.dim(), ds.size());
            std::vector<Eigen::Index> starts;
            Eigen::Index col = 0;
            for (const auto& cols : by_class) {
                starts.push_back(col);
                for (Eigen::Index src : cols) x.col(col++) = ds.features.col(src);
            }
            const ancr::ClassIndex idx(starts, ds.size());

            const ancr::SolverConfig cfg{one_lambda, 1.0, 1e-6, 200};
            const auto dict = ancr::prepare_dictionary(ancr::normalize_columns(x), cfg);
            const ancr::Vector y = query_ds.features.col(0).normalized();
            const auto method = ancr::parse_method(one_method);
            const auto sol = ancr::solve(dict, y, cfg, method);
            const ancr::Vector residuals = ancr::class_residuals(dict, idx, y, sol.c);
            const int label = ancr::argmin_label(residuals);

            std::printf("coding vector (c):");
            for (Eigen::Index i = 0; i < sol.c.size(); ++i) std::printf(" %.6g", sol.c(i));
            std::printf("\nper-class residual / nonzeros (|c_i| > 1e-6):\n");
            for (int i = 0; i < idx.class_count(); ++i) {
                int nnz = 0;
                for (Eigen::Index j = idx.start(i); j < idx.start(i) + idx.size(i); ++j)
                    if (std::abs(sol.c(j)) > 1e-6) ++nnz;
                std::printf("  class %-10s r=%.6f nnz=%d\n",
                            ds.label_names[static_cast<std::size_t>(i)].c_str(), residuals(i),
                            nnz);
            }
            std::printf("predicted: %s (iterations=%d converged=%s)\n",
                        ds.label_names[static_cast<std::size_t>(label)].c_str(), sol.iterations,
                        sol.converged ? "yes" : "no");
        } else if (*oracle_cmd) {
            return run_oracle_check(oracle_seed, oracle_instances);
        }
    } catch (const ancr::ConfigError& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return 1;
    } catch (const ancr::DataError& e) {
        std::fprintf(stderr, "data error: %s\n", e.what());
        return 2;
    } catch (const ancr::ParseError& e) {
        std::fprintf(stderr, "data error: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 3;
    }
    return 0;
}
