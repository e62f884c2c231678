#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "tipsim/analysis.hpp"
#include "tipsim/config.hpp"
#include "tipsim/oracle.hpp"
#include "tipsim/report.hpp"
#include "tipsim/simulator.hpp"
#include "tipsim/stats.hpp"
#include "tipsim/sweep.hpp"
#include "tipsim/trace_io.hpp"
#include "tipsim/version.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInvariant = 1;
constexpr int kExitUsage = 2;

std::ofstream open_output(const fs::path& path) {
    std::ofstream out(path);
    if (!out) {
        throw tipsim::ConfigError("cannot write to " + path.string());
    }
    return out;
}

int cmd_simulate(const fs::path& config_path, const fs::path& out_dir,
                 std::optional<std::uint64_t> seed_override) {
    tipsim::RunConfig config = tipsim::load_run_config(config_path);
    if (seed_override) {
        config.seed = *seed_override;
    }
    std::error_code ec;
    fs::create_directories(out_dir, ec);
    if (ec) {
        throw tipsim::ConfigError("cannot create output directory " + out_dir.string());
    }

    const auto t0 = std::chrono::steady_clock::now();
    tipsim::SimParams params = tipsim::build_sim_params(config);
    const tipsim::RunResult result = tipsim::run_simulation(params);
    const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

    {
        auto out = open_output(out_dir / "trace.csv");
        tipsim::write_trace_csv(result.trace, out);
    }
    {
        auto out = open_output(out_dir / "events.jsonl");
        tipsim::write_events_jsonl(result.events, result.blocks, out);
    }
    if (config.probes.per_event_observer) {
        auto out = open_output(out_dir / "observer.csv");
        tipsim::write_observer_csv(result.observer_series, out);
    }
    if (config.probes.sync_detection) {
        auto out = open_output(out_dir / "sync.csv");
        tipsim::write_sync_csv(result.sync_probes, out);
    }
    json manifest{{"config", tipsim::run_config_to_json(config)},
                  {"delta_bound", result.delta_bound},
                  {"event_count", result.event_count},
                  {"trace_samples", result.trace.size()},
                  {"wall_time_seconds", wall},
                  {"version", tipsim::kVersion}};
    if (config.delay.kind == tipsim::DelayKind::gossip) {
        manifest["topology_diameter"] = tipsim::graph_diameter(params.delay.topology);
        auto out = open_output(out_dir / "topology.txt");
        tipsim::write_edge_list(params.delay.topology, out);
    }
    {
        auto out = open_output(out_dir / "manifest.json");
        out << manifest.dump(2) << '\n';
    }
    std::cout << "simulated " << result.event_count << " blocks over " << config.horizon
              << "s into " << out_dir.string() << " (" << wall << "s)\n";
    return kExitOk;
}

int cmd_analyze(const fs::path& trace_dir, std::optional<fs::path> out_path) {
    std::ifstream manifest_in(trace_dir / "manifest.json");
    if (!manifest_in) {
        throw tipsim::ConfigError("missing manifest.json in " + trace_dir.string());
    }
    json manifest = json::parse(manifest_in, nullptr, false);
    if (manifest.is_discarded()) {
        throw tipsim::ConfigError("manifest.json is not valid JSON");
    }
    const tipsim::RunConfig config = tipsim::parse_run_config(manifest.at("config"));

    tipsim::AnalysisInputs inputs;
    inputs.k_refs = config.k_refs;
    inputs.burn_in = config.burn_in;
    try {
        std::ifstream in(trace_dir / "trace.csv");
        if (!in) {
            throw tipsim::ConfigError("missing trace.csv in " + trace_dir.string());
        }
        inputs.trace = tipsim::read_trace_csv(in);
        if (std::ifstream obs(trace_dir / "observer.csv"); obs) {
            inputs.observer_series = tipsim::read_observer_csv(obs);
        }
        if (std::ifstream sync(trace_dir / "sync.csv"); sync) {
            inputs.sync_probes = tipsim::read_sync_csv(sync);
        }
    } catch (const tipsim::ConfigError&) {
        throw;
    } catch (const std::exception& ex) {
        throw tipsim::ConfigError(ex.what());
    }

    const json report = tipsim::build_analysis_report(inputs);
    const fs::path report_path = out_path ? *out_path : trace_dir / "report.json";
    {
        auto out = open_output(report_path);
        out << report.dump(2) << '\n';
    }
    const auto violations = report.at("lemma_violations").get<std::uint64_t>();
    std::cout << "report written to " << report_path.string() << " (lemma violations: "
              << violations << ")\n";
    return violations == 0 ? kExitOk : kExitInvariant;
}

bool check(bool ok, const std::string& name) {
    std::cout << (ok ? "PASS" : "FAIL") << "  " << name << '\n';
    return ok;
}

// One-shot verification over bundled scenarios: zero-delay degeneracy,
// oracle equivalence, Hajek series agreement and the sandwich bounds on the
// default configuration.
int cmd_verify() {
    bool all_ok = true;

    {
        tipsim::SimParams params;
        params.nodes = tipsim::zipf_node_set(16, 0.0, 1000.0);
        params.k_refs = 4;
        params.horizon = 11.0;
        params.sample_interval = 0.05;
        params.delay = tipsim::make_constant_delay(0.0);
        params.seed = 2024;
        params.probe_observer = true;
        params.keep_events = false;
        const tipsim::RunResult run = tipsim::run_simulation(params);
        bool one_tip = run.event_count >= 10000;
        for (std::uint32_t x : run.observer_series) {
            one_tip = one_tip && x == 1;
        }
        all_ok &= check(one_tip, "zero-delay run keeps a single observer tip");
    }

    {
        tipsim::SimParams params;
        params.nodes = tipsim::zipf_node_set(10, 1.0, 50.0);
        params.k_refs = 4;
        params.horizon = 10.0;
        params.sample_interval = 0.05;
        params.delay = tipsim::make_direct_delay(0.02, 0.18);
        params.seed = 7;
        params.capture_pool_snapshots = true;
        const tipsim::RunResult run = tipsim::run_simulation(params);
        bool equal = true;
        for (const tipsim::PoolSnapshot& snap : run.pool_snapshots) {
            const tipsim::OraclePools oracle = tipsim::recompute_pools(
                run.events, run.blocks, params.nodes.count(), snap.time, snap.n);
            equal = equal && oracle.local == snap.local && oracle.observer == snap.observer &&
                    oracle.common == snap.common;
        }
        all_ok &= check(equal && run.event_count <= 600,
                        "incremental pools equal set-definition recomputation");
    }

    {
        bool series_ok = true;
        for (double theta : {0.01, 0.1, 0.5}) {
            for (int z : {2, 8}) {
                const tipsim::HajekConstants hc = tipsim::hajek_constants(theta, 0.5, 10, z);
                const double series = tipsim::hajek_series_c(theta, z, 40);
                series_ok = series_ok && std::abs(hc.c - series) <= 1e-9 * series;
            }
        }
        all_ok &= check(series_ok, "Hajek constants match 40-term series");
    }

    {
        tipsim::RunConfig config;
        config.seed = 42;
        config.nodes = 100;
        config.zipf_s = 1.0;
        config.total_rate = 500.0;
        config.k_refs = 8;
        config.horizon = 60.0;
        config.sample_interval = 0.05;
        config.delay.kind = tipsim::DelayKind::gossip;
        config.delay.delta_min = 0.02;
        config.delay.delta_max = 0.18;
        config.topology.mean_degree = 10;
        config.topology.beta = 1.0;
        tipsim::SimParams params = tipsim::build_sim_params(config);
        params.keep_events = false;
        const tipsim::RunResult run = tipsim::run_simulation(params);
        const tipsim::LemmaReport lemma = tipsim::lemma_bounds_check(run.trace, config.k_refs);
        all_ok &= check(lemma.violations == 0 && lemma.samples == 1201,
                        "sandwich bounds hold on the default configuration");
    }

    return all_ok ? kExitOk : kExitInvariant;
}

int cmd_sweep(const fs::path& config_path, const fs::path& out_dir, const std::string& axis_spec,
              int replications, std::optional<std::uint64_t> seed_override) {
    const std::size_t eq = axis_spec.find('=');
    if (eq == std::string::npos || eq == 0 || eq + 1 >= axis_spec.size()) {
        throw tipsim::ConfigError("axis must look like name=v1,v2,...");
    }
    const std::string axis = axis_spec.substr(0, eq);
    std::vector<std::string> values;
    std::string rest = axis_spec.substr(eq + 1);
    std::size_t start = 0;
    while (true) {
        const std::size_t comma = rest.find(',', start);
        if (comma == std::string::npos) {
            values.push_back(rest.substr(start));
            break;
        }
        values.push_back(rest.substr(start, comma - start));
        start = comma + 1;
    }

    tipsim::RunConfig base = tipsim::load_run_config(config_path);
    if (seed_override) {
        base.seed = *seed_override;
    }
    std::error_code ec;
    fs::create_directories(out_dir, ec);
    if (ec) {
        throw tipsim::ConfigError("cannot create output directory " + out_dir.string());
    }

    const tipsim::SweepResult sweep = tipsim::run_sweep(base, axis, values, replications);
    {
        auto out = open_output(out_dir / "means.csv");
        tipsim::write_means_csv(sweep, out);
    }
    {
        auto out = open_output(out_dir / "cells.csv");
        tipsim::write_cells_csv(sweep, out);
    }
    int failed = 0;
    for (const tipsim::SweepCell& cell : sweep.cells) {
        if (!cell.ok) {
            ++failed;
            std::cerr << "cell " << cell.axis_value << " rep " << cell.replication
                      << " failed: " << cell.error << '\n';
        }
    }
    std::cout << "swept " << sweep.cells.size() << " cells (" << failed << " failed) into "
              << out_dir.string() << '\n';
    return failed == 0 ? kExitOk : kExitInvariant;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Local tip-pool dynamics simulator for DAG-based ledgers"};
    app.set_version_flag("--version", tipsim::kVersion);
    app.require_subcommand(1);

    std::string config_path, out_dir = "out", trace_dir, axis_spec;
    std::optional<std::uint64_t> seed_override;
    int replications = 1;
    std::optional<std::string> report_path;

    auto* simulate = app.add_subcommand("simulate", "Run one scenario and write its outputs");
    simulate->add_option("--config", config_path, "Scenario config JSON")->required();
    simulate->add_option("--out", out_dir, "Output directory");
    simulate->add_option("--seed", seed_override, "Override the config seed");

    auto* analyze = app.add_subcommand("analyze", "Analyze a simulate output directory");
    analyze->add_option("--trace", trace_dir, "Directory produced by simulate")->required();
    analyze->add_option("--out", report_path, "Report path (default: <trace>/report.json)");

    app.add_subcommand("verify", "Run the built-in verification suite");

    auto* sweep = app.add_subcommand("sweep", "Run a parameter sweep with replications");
    sweep->add_option("--config", config_path, "Base scenario config JSON")->required();
    sweep->add_option("--out", out_dir, "Output directory");
    sweep->add_option("--axis", axis_spec, "Axis spec, e.g. zipf_s=0,1")->required();
    sweep->add_option("--replications", replications, "Replications per axis value");
    sweep->add_option("--seed", seed_override, "Override the config seed");

    CLI11_PARSE(app, argc, argv);

    try {
        if (app.got_subcommand("simulate")) {
            return cmd_simulate(config_path, out_dir, seed_override);
        }
        if (app.got_subcommand("analyze")) {
            return cmd_analyze(trace_dir, report_path ? std::optional<fs::path>(*report_path)
                                                      : std::nullopt);
        }
        if (app.got_subcommand("verify")) {
            return cmd_verify();
        }
        if (app.got_subcommand("sweep")) {
            return cmd_sweep(config_path, out_dir, axis_spec, replications, seed_override);
        }
    } catch (const tipsim::ConfigError& ex) {
        std::cerr << "config error: " << ex.what() << '\n';
        return kExitUsage;
    } catch (const std::exception& ex) {
        std::cerr << "error: " << ex.what() << '\n';
        return kExitInvariant;
    }
    return kExitUsage;
}
