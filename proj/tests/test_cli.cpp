#include <doctest.h>

#include "support/test_util.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <sys/wait.h>
#include <unistd.h>

namespace {

namespace fs = std::filesystem;

struct CliRun {
    int exit_code = -1;
    std::string stdout_text;
    std::string stderr_text;
};

std::string slurp(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

// Runs the CLI binary with stdout/stderr captured to files.
CliRun run_cli(const std::string& args, const fs::path& dir) {
    const fs::path out = dir / "stdout.txt";
    const fs::path err = dir / "stderr.txt";
    const std::string command = std::string(MODSEL_CLI_PATH) + " " + args + " >" + out.string() +
                                " 2>" + err.string();
    const int status = std::system(command.c_str());
    CliRun run;
    run.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    run.stdout_text = slurp(out);
    run.stderr_text = slurp(err);
    return run;
}

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() /
               ("modsel_cli_test_" + std::to_string(::getpid()) + "_" +
                std::to_string(counter()));
        fs::create_directories(path);
    }
    ~TempDir() {
        std::error_code ec;
        fs::remove_all(path, ec);
    }
    static int counter() {
        static int n = 0;
        return n++;
    }
};

}  // namespace

TEST_CASE("cli: validate reports the record count") {
    TempDir dir;
    const auto run = run_cli("validate " + testutil::fixture_path("table1.csv"), dir.path);
    CHECK(run.exit_code == 0);
    CHECK(run.stdout_text.find("OK: 16 records") != std::string::npos);
    CHECK(run.stdout_text.find("16 candidates") != std::string::npos);
}

TEST_CASE("cli: validation failures exit 1 with a message") {
    TempDir dir;
    const fs::path bad = dir.path / "bad.csv";
    std::ofstream(bad) << "model_id,dataset_id,time_ms,mspd,mssd,vsd,add,refined\n"
                       << "m,lmo,-3,50,50,,,\n";
    const auto run = run_cli("validate " + bad.string(), dir.path);
    CHECK(run.exit_code == 1);
    CHECK(run.stderr_text.find("time_ms") != std::string::npos);
}

TEST_CASE("cli: usage errors exit 2") {
    TempDir dir;
    CHECK(run_cli("frobnicate", dir.path).exit_code == 2);
    CHECK(run_cli("select", dir.path).exit_code == 2);  // missing input
    CHECK(run_cli("validate a.csv --no-such-flag", dir.path).exit_code == 2);
}

TEST_CASE("cli: --help exits 0 everywhere") {
    TempDir dir;
    CHECK(run_cli("--help", dir.path).exit_code == 0);
    for (const char* sub :
         {"validate", "pareto", "select", "budget", "cluster", "sha", "metrics", "report"}) {
        const auto run = run_cli(std::string(sub) + " --help", dir.path);
        CHECK(run.exit_code == 0);
        CHECK_FALSE(run.stdout_text.empty());
    }
}

TEST_CASE("cli: pareto writes the SVG and lists the frontier") {
    TempDir dir;
    const fs::path svg = dir.path / "out.svg";
    const auto run = run_cli("pareto " + testutil::fixture_path("table1.csv") +
                                 " --dataset lmo --svg " + svg.string(),
                             dir.path);
    CHECK(run.exit_code == 0);
    CHECK(run.stdout_text.find("wrap line") != std::string::npos);
    CHECK(fs::exists(svg));
    const std::string content = slurp(svg);
    CHECK(content.find("<svg") != std::string::npos);
    CHECK(content.find("inference time (ms)") != std::string::npos);
}

TEST_CASE("cli: select then budget then report round trip") {
    TempDir dir;
    const fs::path selection = dir.path / "selection.csv";
    const fs::path rounds = dir.path / "rounds.csv";
    const fs::path factors = dir.path / "factors.csv";
    const std::string input = testutil::fixture_path("bench_synth.csv");

    const auto select_run = run_cli("select " + input + " --count 3 --selection-out " +
                                        selection.string() + " --rounds-out " + rounds.string() +
                                        " --factors-out " + factors.string(),
                                    dir.path);
    CHECK(select_run.exit_code == 0);
    CHECK(select_run.stdout_text.find("selected 3 of 10") != std::string::npos);
    REQUIRE(fs::exists(selection));
    CHECK(slurp(selection).rfind("rank,model_id,refined,points", 0) == 0);
    CHECK(slurp(rounds).rfind("round,model_id,refined", 0) == 0);
    CHECK(slurp(factors).rfind("round,factor,contributed", 0) == 0);

    const auto budget_run = run_cli(
        "budget " + input + " --budget-ms 40 --selection " + selection.string(), dir.path);
    CHECK(budget_run.exit_code == 0);
    CHECK(budget_run.stdout_text.find("best within 40 ms:") != std::string::npos);

    const auto no_fit = run_cli(
        "budget " + input + " --budget-ms 1 --selection " + selection.string(), dir.path);
    CHECK(no_fit.exit_code == 1);
    CHECK(no_fit.stderr_text.find("no feasible model") != std::string::npos);

    const fs::path table = dir.path / "table.csv";
    const auto report_run =
        run_cli("report " + input + " --baseline cand_e --selection " + selection.string() +
                    " --csv " + table.string(),
                dir.path);
    CHECK(report_run.exit_code == 0);
    CHECK(report_run.stdout_text.find("vs cand_e") != std::string::npos);
    CHECK(fs::exists(table));
}

TEST_CASE("cli: select on the bundled table matches the reference oracle") {
    TempDir dir;
    const fs::path selection = dir.path / "selection.csv";
    const auto run = run_cli("select " + testutil::fixture_path("table1.csv") +
                                 " --count 3 --selection-out " + selection.string(),
                             dir.path);
    REQUIRE(run.exit_code == 0);

    // independently recompute the expected order from the same fixture
    std::ifstream fixture(testutil::fixture_path("table1.csv"));
    const auto records = modsel::ingest::parse_benchmark_table(fixture);
    amisref::RefPool pool;
    pool.datasets = {"lmo"};
    for (const auto& r : records) {
        pool.labels.push_back(r.candidate.model_id);
        const double accuracy = (r.mspd + r.mssd + *r.vsd) / 3.0;
        pool.measurements[r.candidate.model_id]["lmo"] = {r.time_ms, accuracy};
    }
    amisref::RefConfig config;
    config.k = 3;
    const auto expected = amisref::reference_select(pool, config);

    std::istringstream lines(slurp(selection));
    std::string line;
    std::getline(lines, line);  // header
    for (int rank = 0; rank < 3; ++rank) {
        REQUIRE(std::getline(lines, line));
        const auto first_comma = line.find(',');
        const auto second_comma = line.find(',', first_comma + 1);
        const std::string model = line.substr(first_comma + 1, second_comma - first_comma - 1);
        CHECK(model == expected[static_cast<std::size_t>(rank)]);
    }
}

TEST_CASE("cli: config file drives selection, flags override it") {
    TempDir dir;
    const fs::path cfg = dir.path / "run.cfg";
    std::ofstream(cfg) << "metric = mssd\n"
                       << "amis.selection_count = 2\n"
                       << "weight.lmo = 1\n"
                       << "weight.ycbv = 3\n";
    const std::string input = testutil::fixture_path("bench_synth.csv");
    const auto run = run_cli("select " + input + " --config " + cfg.string(), dir.path);
    CHECK(run.exit_code == 0);
    CHECK(run.stdout_text.find("selected 2 of 10") != std::string::npos);

    const auto overridden =
        run_cli("select " + input + " --config " + cfg.string() + " --count 4", dir.path);
    CHECK(overridden.exit_code == 0);
    CHECK(overridden.stdout_text.find("selected 4 of 10") != std::string::npos);

    std::ofstream(cfg) << "bogus = 1\n";
    CHECK(run_cli("select " + input + " --config " + cfg.string(), dir.path).exit_code == 1);
}

TEST_CASE("cli: cluster and sha run end to end") {
    TempDir dir;
    const auto cluster_run =
        run_cli("cluster " + testutil::fixture_path("bench_synth.csv") + " --k 3", dir.path);
    CHECK(cluster_run.exit_code == 0);
    CHECK(cluster_run.stdout_text.find("centers:") != std::string::npos);

    const fs::path log = dir.path / "sha.csv";
    const auto sha_run =
        run_cli("sha --synthetic 8 --seed 11 --log-out " + log.string(), dir.path);
    CHECK(sha_run.exit_code == 0);
    CHECK(sha_run.stdout_text.find("survivor:") != std::string::npos);
    CHECK(slurp(log).rfind("rung,budget_epochs,model_id,score,kept", 0) == 0);

    // identical seeds replay identically
    const auto sha_again = run_cli("sha --synthetic 8 --seed 11", dir.path);
    CHECK(sha_again.stdout_text == sha_run.stdout_text);
}

TEST_CASE("cli: sha accepts a precomputed scores file") {
    TempDir dir;
    const fs::path scores = dir.path / "scores.csv";
    std::ofstream(scores) << "model_id,budget_epochs,score\n"
                          << "alpha,2,40\nalpha,6,55\n"
                          << "beta,2,50\nbeta,6,45\n"
                          << "gamma,2,30\ngamma,6,35\n";
    const auto run =
        run_cli("sha --scores " + scores.string() + " --plan 2:2,6:1", dir.path);
    CHECK(run.exit_code == 0);
    // beta leads at 2 epochs but alpha overtakes at 6
    CHECK(run.stdout_text.find("survivor: alpha") != std::string::npos);

    // a missing (candidate, budget) entry is a data error
    const auto missing = run_cli("sha --scores " + scores.string() + " --plan 2:2,9:1", dir.path);
    CHECK(missing.exit_code == 1);
}

TEST_CASE("cli: metrics computes pose errors from files") {
    TempDir dir;
    const fs::path model = dir.path / "model.txt";
    std::ofstream(model) << "0.05 0 0\n0 0.05 0\n0 0 0.05\n-0.05 0 0\n";
    const fs::path truth = dir.path / "truth.txt";
    std::ofstream(truth) << "1 0 0 0 1 0 0 0 1 0 0 1\n";
    const fs::path est = dir.path / "est.txt";
    std::ofstream(est) << "1 0 0 0 1 0 0 0 1 0.01 0 1\n";

    const auto run = run_cli("metrics --model " + model.string() + " --est " + est.string() +
                                 " --truth " + truth.string() +
                                 " --fx 500 --fy 500 --thresholds 0.005 --thresholds 0.02",
                             dir.path);
    CHECK(run.exit_code == 0);
    CHECK(run.stdout_text.find("index,add,mssd,mspd") != std::string::npos);
    CHECK(run.stdout_text.find("recall(add) = 50") != std::string::npos);
}
