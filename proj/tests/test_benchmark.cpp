#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>

#include "ancr/benchmark.hpp"
#include "support/oracles.hpp"

using namespace ancr;
using testsupport::gaussian_blobs;

namespace {

struct TempDir {
    std::filesystem::path path;
    TempDir() {
        path = std::filesystem::temp_directory_path() /
               ("ancr_bench_" + std::to_string(std::random_device{}()));
        std::filesystem::create_directories(path);
    }
    ~TempDir() { std::filesystem::remove_all(path); }
    std::string file(const std::string& name, const std::string& content) const {
        const auto p = path / name;
        std::ofstream out(p);
        out << content;
        return p.string();
    }
};

std::string blobs_csv(const testsupport::Blobs& blobs) {
    std::string out;
    for (Eigen::Index j = 0; j < blobs.features.cols(); ++j) {
        out += std::to_string(blobs.labels[static_cast<std::size_t>(j)]);
        for (Eigen::Index i = 0; i < blobs.features.rows(); ++i) {
            char buf[32];
            std::snprintf(buf, sizeof(buf), ",%.9g", blobs.features(i, j));
            out += buf;
        }
        out += "\n";
    }
    return out;
}

// Separable two-class pools shared by the harness tests.
struct Fixture {
    TempDir tmp;
    std::string train_path;
    std::string test_path;

    Fixture() {
        std::mt19937_64 eng(191);
        train_path = tmp.file("train.csv", blobs_csv(gaussian_blobs(eng, 10, 30, 2, 6.0)));
        test_path = tmp.file("test.csv", blobs_csv(gaussian_blobs(eng, 10, 40, 2, 6.0)));
    }

    ExperimentConfig config() const {
        ExperimentConfig cfg;
        cfg.train_path = train_path;
        cfg.test_path = test_path;
        cfg.per_class_train = {10};
        cfg.repetitions = 2;
        cfg.seed = 99;
        cfg.max_iters = 2000;
        return cfg;
    }
};

}  // namespace

TEST_CASE("config file parsing with overrides") {
    TempDir tmp;
    const auto p = tmp.file("exp.conf",
                            "# experiment\n"
                            "train = train.csv\n"
                            "test = test.csv\n"
                            "methods = ancr, crc\n"
                            "lambda = 0.001, 0.01\n"
                            "rho = 0.5\n"
                            "tol = 1e-7\n"
                            "max_iters = 150\n"
                            "per_class_train = 50, 100\n"
                            "seed = 7\n"
                            "repetitions = 3\n"
                            "jobs = 2\n");
    const auto cfg = load_config(p);
    CHECK(cfg.train_path == "train.csv");
    CHECK(cfg.methods.size() == 2);
    CHECK(cfg.methods[1] == Method::crc);
    CHECK(cfg.lambdas == std::vector<double>{0.001, 0.01});
    CHECK(cfg.rho == 0.5);
    CHECK(cfg.tol == 1e-7);
    CHECK(cfg.max_iters == 150);
    CHECK(cfg.per_class_train == std::vector<std::size_t>{50, 100});
    CHECK(cfg.seed == 7);
    CHECK(cfg.repetitions == 3);
    CHECK(cfg.jobs == 2);

    CHECK_THROWS_AS(load_config(tmp.file("bad.conf", "train = x\nnope = 1\n")), ConfigError);
    CHECK_THROWS_AS(load_config(tmp.file("noeq.conf", "just words\n")), ConfigError);
    CHECK_THROWS_AS(load_config((tmp.path / "missing.conf").string()), ConfigError);
}

TEST_CASE("config validation") {
    ExperimentConfig cfg;
    cfg.train_path = "";
    CHECK_THROWS_AS(cfg.validate(), ConfigError);
    cfg.train_path = "x";
    cfg.methods.clear();
    CHECK_THROWS_AS(cfg.validate(), ConfigError);
    cfg.methods = {Method::ancr};
    cfg.lambdas = {-1.0};
    CHECK_THROWS_AS(cfg.validate(), ConfigError);
}

TEST_CASE("separable data benches at 100% with the expected row count") {
    Fixture fx;
    auto cfg = fx.config();
    cfg.methods = {Method::ancr};
    const auto report = run_benchmark(cfg);
    CHECK(report.rows.size() == cfg.repetitions * cfg.per_class_train.size());
    for (const auto& row : report.rows) {
        CHECK(row.accuracy == doctest::Approx(100.0));
        CHECK(row.nonconverged == 0);
    }
    const auto summaries = report.summaries();
    REQUIRE(summaries.size() == 1);
    CHECK(summaries[0].mean == doctest::Approx(100.0));
    CHECK(summaries[0].stddev == doctest::Approx(0.0));
}

TEST_CASE("same seed gives byte-identical accuracy csv, different seed may differ") {
    Fixture fx;
    auto cfg = fx.config();
    const auto a = run_benchmark(cfg);
    const auto b = run_benchmark(cfg);
    CHECK(a.to_csv(false) == b.to_csv(false));
}

TEST_CASE("parallel and serial runs agree") {
    Fixture fx;
    auto cfg = fx.config();
    cfg.methods = {Method::ancr, Method::crc};
    cfg.jobs = 1;
    const auto serial = run_benchmark(cfg);
    cfg.jobs = 4;
    const auto parallel = run_benchmark(cfg);
    CHECK(serial.to_csv(false) == parallel.to_csv(false));
}

TEST_CASE("mean and std are consistent with per-repetition rows") {
    Fixture fx;
    auto cfg = fx.config();
    cfg.repetitions = 3;
    const auto report = run_benchmark(cfg);
    for (const auto& s : report.summaries()) {
        double mean = 0.0;
        int count = 0;
        for (const auto& r : report.rows)
            if (r.method == s.method && r.n_per_class == s.n_per_class && r.lambda == s.lambda) {
                mean += r.accuracy;
                ++count;
            }
        mean /= count;
        CHECK(std::abs(s.mean - mean) <= 1e-9);
        CHECK(s.mean >= 0.0);
        CHECK(s.mean <= 100.0);
    }
}

TEST_CASE("lambda sweep: degenerate single value equals bench, spread is small") {
    Fixture fx;
    auto cfg = fx.config();
    cfg.repetitions = 1;

    cfg.lambdas = {1e-3};
    const auto bench = run_benchmark(cfg);
    const auto sweep1 = run_lambda_sweep(cfg);
    CHECK(bench.to_csv(false) == sweep1.to_csv(false));

    cfg.lambdas = {1e-4, 1e-3, 1e-2};
    const auto sweep = run_lambda_sweep(cfg);
    REQUIRE(sweep.rows.size() == 3);
    double lo = 100.0, hi = 0.0;
    for (const auto& r : sweep.rows) {
        lo = std::min(lo, r.accuracy);
        hi = std::max(hi, r.accuracy);
    }
    CHECK(hi - lo <= 2.0);

    // Crushing regularization cannot beat a sensible one.
    cfg.lambdas = {1e-3, 1e8};
    const auto extremes = run_lambda_sweep(cfg);
    CHECK(extremes.rows[1].accuracy <= extremes.rows[0].accuracy + 1e-9);
}

TEST_CASE("convergence trace schema") {
    Fixture fx;
    auto cfg = fx.config();
    cfg.repetitions = 1;
    const std::string csv = emit_convergence(cfg, 0);

    std::vector<std::string> lines;
    std::stringstream ss(csv);
    std::string line;
    while (std::getline(ss, line))
        if (!line.empty()) lines.push_back(line);
    REQUIRE(lines.size() >= 3);
    CHECK(lines[0] == "t,objective,primal_residual");

    // Parse back: last residual below tol, final objective below the first
    // post-start objective.
    std::vector<double> obj, res;
    for (std::size_t i = 1; i < lines.size(); ++i) {
        double t, o, r;
        REQUIRE(std::sscanf(lines[i].c_str(), "%lf,%lf,%lf", &t, &o, &r) == 3);
        obj.push_back(o);
        res.push_back(r);
    }
    CHECK(res.back() <= cfg.tol);
    CHECK(obj.back() <= obj[1] + 1e-12);

    CHECK_THROWS_AS(emit_convergence(cfg, 100000), IndexOutOfRange);
}

TEST_CASE("rescale metadata propagates into the report") {
    TempDir tmp;
    const auto train = tmp.file("signed.csv", "0,-1,0.2\n0,-0.5,0.1\n1,0.5,-1\n1,0.25,-0.5\n");
    ExperimentConfig cfg;
    cfg.train_path = train;
    cfg.per_class_train = {2};
    const auto report = run_benchmark(cfg);
    CHECK(report.rescaled_from_signed);
    CHECK(report.to_json().find("\"rescaled_from_signed\": true") != std::string::npos);
}
