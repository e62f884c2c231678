// End-to-end tests of the tipsim binary: spawn the real executable and
// check exit codes, file outputs and error messages.
// Usage: cli_tests <path-to-tipsim> <path-to-configs-dir>

#define DOCTEST_CONFIG_IMPLEMENT
#include "doctest.h"

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <sys/wait.h>

#include "json.hpp"

namespace fs = std::filesystem;

namespace {

std::string g_binary;
std::string g_configs;

struct CliResult {
    int exit_code = -1;
    std::string out;
    std::string err;
};

std::string slurp(const fs::path& path) {
    std::ifstream in(path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

CliResult run_cli(const std::string& args) {
    const fs::path tmp = fs::temp_directory_path();
    const fs::path out_file = tmp / "tipsim_cli_stdout.txt";
    const fs::path err_file = tmp / "tipsim_cli_stderr.txt";
    const std::string command =
        g_binary + " " + args + " > " + out_file.string() + " 2> " + err_file.string();
    const int status = std::system(command.c_str());
    CliResult result;
    result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    result.out = slurp(out_file);
    result.err = slurp(err_file);
    return result;
}

fs::path fresh_dir(const std::string& name) {
    const fs::path dir = fs::temp_directory_path() / name;
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

std::size_t count_lines(const fs::path& path) {
    std::ifstream in(path);
    std::size_t lines = 0;
    std::string line;
    while (std::getline(in, line)) {
        ++lines;
    }
    return lines;
}

}  // namespace

TEST_CASE("simulate + analyze on the small regeneration scenario") {
    const fs::path out = fresh_dir("tipsim_cli_regen");
    const CliResult sim =
        run_cli("simulate --config " + g_configs + "/small-regeneration.json --out " +
                out.string());
    CHECK(sim.exit_code == 0);
    REQUIRE(fs::exists(out / "trace.csv"));
    REQUIRE(fs::exists(out / "events.jsonl"));
    REQUIRE(fs::exists(out / "manifest.json"));
    REQUIRE(fs::exists(out / "observer.csv"));
    REQUIRE(fs::exists(out / "sync.csv"));
    CHECK(!fs::exists(out / "topology.txt"));  // direct kind has none
    CHECK(count_lines(out / "trace.csv") == 12002);  // header + 600s/50ms + 1

    const CliResult ana = run_cli("analyze --trace " + out.string());
    CHECK(ana.exit_code == 0);
    REQUIRE(fs::exists(out / "report.json"));
    std::ifstream report_in(out / "report.json");
    const nlohmann::json report = nlohmann::json::parse(report_in);
    CHECK(report.at("lemma_violations").get<int>() == 0);
    CHECK(report.at("regeneration").at("count").get<int>() >= 100);
    CHECK(report.at("ergodic").at("diagnostic").get<double>() < 0.5);
}

TEST_CASE("a manifest reproduces its run byte-identically") {
    const fs::path a = fresh_dir("tipsim_cli_repro_a");
    const fs::path b = fresh_dir("tipsim_cli_repro_b");
    const std::string config = g_configs + "/small-tail.json";
    CHECK(run_cli("simulate --config " + config + " --out " + a.string() + " --seed 99")
              .exit_code == 0);

    // Re-run from the seed recorded in the manifest.
    std::ifstream manifest_in(a / "manifest.json");
    const nlohmann::json manifest = nlohmann::json::parse(manifest_in);
    const auto seed = manifest.at("config").at("seed").get<std::uint64_t>();
    CHECK(seed == 99);
    CHECK(run_cli("simulate --config " + config + " --out " + b.string() + " --seed " +
                  std::to_string(seed))
              .exit_code == 0);

    CHECK(slurp(a / "trace.csv") == slurp(b / "trace.csv"));
    CHECK(slurp(a / "events.jsonl") == slurp(b / "events.jsonl"));
    CHECK(slurp(a / "observer.csv") == slurp(b / "observer.csv"));
}

TEST_CASE("gossip runs export their topology") {
    const fs::path out = fresh_dir("tipsim_cli_topo");
    nlohmann::json cfg{
        {"seed", 5},
        {"nodes", 12},
        {"zipf_s", 0.0},
        {"total_rate", 30.0},
        {"k_refs", 2},
        {"horizon", 2.0},
        {"sample_interval", 0.1},
        {"delay", {{"kind", "gossip"}, {"delta_min", 0.02}, {"delta_max", 0.18}}},
        {"topology", {{"mean_degree", 4}, {"beta", 1.0}}},
    };
    const fs::path cfg_path = out / "config.json";
    std::ofstream(cfg_path) << cfg.dump();
    const CliResult sim =
        run_cli("simulate --config " + cfg_path.string() + " --out " + out.string());
    CHECK(sim.exit_code == 0);
    REQUIRE(fs::exists(out / "topology.txt"));
    CHECK(count_lines(out / "topology.txt") == 24);  // n * degree / 2 edges
}

TEST_CASE("horizon zero produces a single genesis sample") {
    const fs::path out = fresh_dir("tipsim_cli_h0");
    nlohmann::json cfg{
        {"seed", 1},
        {"nodes", 4},
        {"zipf_s", 0.0},
        {"total_rate", 10.0},
        {"k_refs", 2},
        {"horizon", 0.0},
        {"sample_interval", 0.05},
        {"delay", {{"kind", "constant"}, {"constant_delay", 0.1}}},
    };
    const fs::path cfg_path = out / "config.json";
    std::ofstream(cfg_path) << cfg.dump();
    const CliResult sim =
        run_cli("simulate --config " + cfg_path.string() + " --out " + out.string());
    CHECK(sim.exit_code == 0);
    CHECK(count_lines(out / "trace.csv") == 2);  // header + genesis sample
}

TEST_CASE("config errors exit with code 2 and a field-level message") {
    const fs::path out = fresh_dir("tipsim_cli_bad");
    nlohmann::json cfg{
        {"seed", 1},
        {"nodes", 4},
        {"zipf_s", 0.0},
        {"k_refs", 2},
        {"horizon", 1.0},
        {"sample_interval", 0.05},
        {"delay", {{"kind", "constant"}, {"constant_delay", 0.1}}},
    };  // total_rate missing
    const fs::path cfg_path = out / "config.json";
    std::ofstream(cfg_path) << cfg.dump();
    const CliResult sim =
        run_cli("simulate --config " + cfg_path.string() + " --out " + out.string());
    CHECK(sim.exit_code == 2);
    CHECK(sim.err.find("total_rate") != std::string::npos);

    CHECK(run_cli("simulate --config /nonexistent.json --out " + out.string()).exit_code == 2);
}

TEST_CASE("analyze reports corrupt traces with the offending line") {
    const fs::path out = fresh_dir("tipsim_cli_corrupt");
    const CliResult sim = run_cli("simulate --config " + g_configs + "/small-tail.json --out " +
                                  out.string() + " --seed 7");
    REQUIRE(sim.exit_code == 0);

    // Damage one field on line 4 of the trace.
    std::ifstream in(out / "trace.csv");
    std::ostringstream patched;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line_no == 4) {
            const std::size_t comma = line.find(',');
            patched << "oops" << line.substr(comma) << '\n';
        } else {
            patched << line << '\n';
        }
    }
    in.close();
    std::ofstream(out / "trace.csv") << patched.str();

    const CliResult ana = run_cli("analyze --trace " + out.string());
    CHECK(ana.exit_code == 2);
    CHECK(ana.err.find("line 4") != std::string::npos);

    const CliResult missing = run_cli("analyze --trace " + out.string() + "_nope");
    CHECK(missing.exit_code == 2);
}

TEST_CASE("verify passes on a clean build") {
    const CliResult verify = run_cli("verify");
    CHECK(verify.exit_code == 0);
    CHECK(verify.out.find("FAIL") == std::string::npos);
    // One pass line per built-in check.
    CHECK(std::count(verify.out.begin(), verify.out.end(), '\n') == 4);
}

TEST_CASE("sweep writes deterministic aggregates and handles bad axes") {
    const fs::path out = fresh_dir("tipsim_cli_sweep");
    nlohmann::json cfg{
        {"seed", 11},
        {"nodes", 6},
        {"zipf_s", 0.0},
        {"total_rate", 20.0},
        {"k_refs", 2},
        {"horizon", 8.0},
        {"sample_interval", 0.1},
        {"delay", {{"kind", "direct"}, {"delta_min", 0.02}, {"delta_max", 0.18}}},
        {"burn_in", 2.0},
    };
    const fs::path cfg_path = out / "config.json";
    std::ofstream(cfg_path) << cfg.dump();

    const CliResult sweep = run_cli("sweep --config " + cfg_path.string() + " --out " +
                                    out.string() + " --axis zipf_s=0,1 --replications 2");
    CHECK(sweep.exit_code == 0);
    CHECK(count_lines(out / "means.csv") == 3);
    CHECK(count_lines(out / "cells.csv") == 5);

    const fs::path out2 = fresh_dir("tipsim_cli_sweep2");
    const CliResult delay_sweep =
        run_cli("sweep --config " + cfg_path.string() + " --out " + out2.string() +
                " --axis delay=constant:0.05,direct:0.02:0.18 --replications 1");
    CHECK(delay_sweep.exit_code == 0);
    CHECK(count_lines(out2 / "means.csv") == 3);

    CHECK(run_cli("sweep --config " + cfg_path.string() + " --out " + out.string() +
                  " --axis bogus=1,2")
              .exit_code == 2);
}

int main(int argc, char** argv) {
    if (argc < 3) {
        std::fprintf(stderr, "usage: cli_tests <tipsim-binary> <configs-dir>\n");
        return 1;
    }
    g_binary = argv[1];
    g_configs = argv[2];
    doctest::Context context;
    context.applyCommandLine(1, argv);
    return context.run();
}
