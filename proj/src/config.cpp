#include "tipsim/config.hpp"

#include <fstream>
#include <set>

namespace tipsim {

namespace {

[[noreturn]] void fail(const std::string& field, const std::string& what) {
    throw ConfigError("field '" + field + "': " + what);
}

void reject_unknown_keys(const nlohmann::json& j, const std::string& scope,
                         const std::set<std::string>& allowed) {
    for (const auto& [key, value] : j.items()) {
        (void)value;
        if (allowed.count(key) == 0) {
            fail(scope.empty() ? key : scope + "." + key, "unknown key");
        }
    }
}

const nlohmann::json& require(const nlohmann::json& j, const std::string& scope,
                              const std::string& key) {
    auto it = j.find(key);
    if (it == j.end()) {
        fail(scope.empty() ? key : scope + "." + key, "missing required field");
    }
    return *it;
}

double require_number(const nlohmann::json& j, const std::string& scope, const std::string& key) {
    const nlohmann::json& v = require(j, scope, key);
    if (!v.is_number()) {
        fail(scope.empty() ? key : scope + "." + key, "expected a number");
    }
    return v.get<double>();
}

std::int64_t require_integer(const nlohmann::json& j, const std::string& scope,
                             const std::string& key) {
    const nlohmann::json& v = require(j, scope, key);
    if (!v.is_number_integer()) {
        fail(scope.empty() ? key : scope + "." + key, "expected an integer");
    }
    return v.get<std::int64_t>();
}

}  // namespace

std::string delay_kind_name(DelayKind kind) {
    switch (kind) {
        case DelayKind::direct:
            return "direct";
        case DelayKind::gossip:
            return "gossip";
        case DelayKind::constant:
            return "constant";
    }
    return "?";
}

RunConfig parse_run_config(const nlohmann::json& j) {
    if (!j.is_object()) {
        throw ConfigError("config root must be a JSON object");
    }
    reject_unknown_keys(j, "", {"seed", "nodes", "zipf_s", "total_rate", "k_refs", "horizon",
                                "sample_interval", "delay", "topology", "probes", "burn_in"});
    RunConfig cfg;
    const nlohmann::json& seed = require(j, "", "seed");
    if (seed.is_number_unsigned()) {
        cfg.seed = seed.get<std::uint64_t>();
    } else if (seed.is_number_integer() && seed.get<std::int64_t>() >= 0) {
        cfg.seed = static_cast<std::uint64_t>(seed.get<std::int64_t>());
    } else {
        fail("seed", "must be a nonnegative integer");
    }
    const std::int64_t nodes = require_integer(j, "", "nodes");
    if (nodes < 1) {
        fail("nodes", "must be >= 1");
    }
    cfg.nodes = static_cast<int>(nodes);
    cfg.zipf_s = require_number(j, "", "zipf_s");
    if (cfg.zipf_s < 0.0) {
        fail("zipf_s", "must be >= 0");
    }
    cfg.total_rate = require_number(j, "", "total_rate");
    if (cfg.total_rate <= 0.0) {
        fail("total_rate", "must be > 0");
    }
    const std::int64_t k = require_integer(j, "", "k_refs");
    if (k < 1) {
        fail("k_refs", "must be >= 1");
    }
    cfg.k_refs = static_cast<int>(k);
    cfg.horizon = require_number(j, "", "horizon");
    if (cfg.horizon < 0.0) {
        fail("horizon", "must be >= 0");
    }
    cfg.sample_interval = require_number(j, "", "sample_interval");
    if (cfg.sample_interval <= 0.0) {
        fail("sample_interval", "must be > 0");
    }

    const nlohmann::json& delay = require(j, "", "delay");
    if (!delay.is_object()) {
        fail("delay", "expected an object");
    }
    const nlohmann::json& kind = require(delay, "delay", "kind");
    if (!kind.is_string()) {
        fail("delay.kind", "expected a string");
    }
    const std::string kind_name = kind.get<std::string>();
    if (kind_name == "direct" || kind_name == "gossip") {
        cfg.delay.kind = kind_name == "direct" ? DelayKind::direct : DelayKind::gossip;
        reject_unknown_keys(delay, "delay", {"kind", "delta_min", "delta_max"});
        cfg.delay.delta_min = require_number(delay, "delay", "delta_min");
        cfg.delay.delta_max = require_number(delay, "delay", "delta_max");
        if (cfg.delay.delta_min < 0.0 || cfg.delay.delta_max < cfg.delay.delta_min) {
            fail("delay.delta_min", "need 0 <= delta_min <= delta_max");
        }
    } else if (kind_name == "constant") {
        cfg.delay.kind = DelayKind::constant;
        reject_unknown_keys(delay, "delay", {"kind", "constant_delay"});
        cfg.delay.constant_delay = require_number(delay, "delay", "constant_delay");
        if (cfg.delay.constant_delay < 0.0) {
            fail("delay.constant_delay", "must be >= 0");
        }
    } else {
        fail("delay.kind", "must be one of direct, gossip, constant");
    }

    if (cfg.delay.kind == DelayKind::gossip) {
        const nlohmann::json& topo = require(j, "", "topology");
        if (!topo.is_object()) {
            fail("topology", "expected an object");
        }
        reject_unknown_keys(topo, "topology", {"mean_degree", "beta"});
        const std::int64_t degree = require_integer(topo, "topology", "mean_degree");
        if (degree < 2 || degree % 2 != 0 || degree >= nodes) {
            fail("topology.mean_degree", "must be even, >= 2 and < nodes");
        }
        cfg.topology.mean_degree = static_cast<int>(degree);
        cfg.topology.beta = require_number(topo, "topology", "beta");
        if (cfg.topology.beta < 0.0 || cfg.topology.beta > 1.0) {
            fail("topology.beta", "must be in [0, 1]");
        }
    } else if (j.contains("topology")) {
        fail("topology", "only valid for the gossip delay kind");
    }

    if (j.contains("probes")) {
        const nlohmann::json& probes = j.at("probes");
        if (!probes.is_object()) {
            fail("probes", "expected an object");
        }
        reject_unknown_keys(probes, "probes", {"sync_detection", "per_event_observer"});
        if (probes.contains("sync_detection")) {
            if (!probes.at("sync_detection").is_boolean()) {
                fail("probes.sync_detection", "expected a boolean");
            }
            cfg.probes.sync_detection = probes.at("sync_detection").get<bool>();
        }
        if (probes.contains("per_event_observer")) {
            if (!probes.at("per_event_observer").is_boolean()) {
                fail("probes.per_event_observer", "expected a boolean");
            }
            cfg.probes.per_event_observer = probes.at("per_event_observer").get<bool>();
        }
    }
    if (j.contains("burn_in")) {
        if (!j.at("burn_in").is_number()) {
            fail("burn_in", "expected a number");
        }
        cfg.burn_in = j.at("burn_in").get<double>();
        if (cfg.burn_in < 0.0) {
            fail("burn_in", "must be >= 0");
        }
    }
    return cfg;
}

RunConfig load_run_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("cannot open config file: " + path.string());
    }
    nlohmann::json j = nlohmann::json::parse(in, nullptr, false);
    if (j.is_discarded()) {
        throw ConfigError("config file is not valid JSON: " + path.string());
    }
    return parse_run_config(j);
}

nlohmann::json run_config_to_json(const RunConfig& config) {
    nlohmann::json j{
        {"seed", config.seed},
        {"nodes", config.nodes},
        {"zipf_s", config.zipf_s},
        {"total_rate", config.total_rate},
        {"k_refs", config.k_refs},
        {"horizon", config.horizon},
        {"sample_interval", config.sample_interval},
        {"burn_in", config.burn_in},
        {"probes",
         {{"sync_detection", config.probes.sync_detection},
          {"per_event_observer", config.probes.per_event_observer}}},
    };
    nlohmann::json delay{{"kind", delay_kind_name(config.delay.kind)}};
    if (config.delay.kind == DelayKind::constant) {
        delay["constant_delay"] = config.delay.constant_delay;
    } else {
        delay["delta_min"] = config.delay.delta_min;
        delay["delta_max"] = config.delay.delta_max;
    }
    j["delay"] = delay;
    if (config.delay.kind == DelayKind::gossip) {
        j["topology"] = {{"mean_degree", config.topology.mean_degree},
                         {"beta", config.topology.beta}};
    }
    return j;
}

SimParams build_sim_params(const RunConfig& config) {
    SimParams params;
    params.nodes = zipf_node_set(config.nodes, config.zipf_s, config.total_rate);
    params.k_refs = config.k_refs;
    params.horizon = config.horizon;
    params.sample_interval = config.sample_interval;
    params.seed = config.seed;
    params.probe_sync = config.probes.sync_detection;
    params.probe_observer = config.probes.per_event_observer;
    switch (config.delay.kind) {
        case DelayKind::direct:
            params.delay = make_direct_delay(config.delay.delta_min, config.delay.delta_max);
            break;
        case DelayKind::constant:
            params.delay = make_constant_delay(config.delay.constant_delay);
            break;
        case DelayKind::gossip: {
            RngStream topo_rng(stream_seed(config.seed, "topology"));
            Topology topo = generate_watts_strogatz(config.nodes, config.topology.mean_degree,
                                                    config.topology.beta, topo_rng);
            params.delay =
                make_gossip_delay(config.delay.delta_min, config.delay.delta_max, std::move(topo));
            break;
        }
    }
    return params;
}

}  // namespace tipsim
