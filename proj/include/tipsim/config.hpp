#pragma once

#include <cstdint>
#include <filesystem>
#include <string>

#include "json.hpp"
#include "tipsim/simulator.hpp"

namespace tipsim {

struct DelayConfig {
    DelayKind kind = DelayKind::constant;
    double delta_min = 0.0;
    double delta_max = 0.0;
    double constant_delay = 0.0;
};

struct TopologyConfig {
    int mean_degree = 0;
    double beta = 0.0;
};

struct ProbeConfig {
    bool sync_detection = false;
    bool per_event_observer = false;
};

// One simulation scenario. Physical parameters have no defaults: a config
// file must state all of them, only probes and burn_in are optional.
struct RunConfig {
    std::uint64_t seed = 0;
    int nodes = 0;
    double zipf_s = 0.0;
    double total_rate = 0.0;
    int k_refs = 0;
    double horizon = 0.0;
    double sample_interval = 0.0;
    DelayConfig delay;
    TopologyConfig topology;  // gossip only
    ProbeConfig probes;
    double burn_in = 10.0;
};

// Thrown with a field-level message ("field 'delay.kind': ..."); the CLI
// maps it to exit code 2.
class ConfigError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

RunConfig parse_run_config(const nlohmann::json& j);
RunConfig load_run_config(const std::filesystem::path& path);
nlohmann::json run_config_to_json(const RunConfig& config);

// NodeSet, topology and delay model resolved from the config. The topology
// draw uses its own named stream of the run seed.
SimParams build_sim_params(const RunConfig& config);

std::string delay_kind_name(DelayKind kind);

}  // namespace tipsim
