#pragma once

#include <cstdint>
#include <vector>

#include "tipsim/delay.hpp"
#include "tipsim/ledger.hpp"
#include "tipsim/process.hpp"
#include "tipsim/rates.hpp"

namespace tipsim {

struct SimParams {
    NodeSet nodes;
    int k_refs = 2;
    double horizon = 0.0;
    double sample_interval = 0.05;
    DelayModel delay;
    std::uint64_t seed = 0;

    bool probe_sync = false;             // per-event pool-equality probe (small runs)
    bool probe_observer = false;         // per-event observer pool size
    bool capture_pool_snapshots = false; // full pool contents at sample times (small runs)
    bool keep_events = true;             // retain the marked event stream in the result
};

// State of the system just before one issuance, with every delivery due by
// then applied. n is the number of blocks issued so far.
struct SyncProbe {
    std::uint64_t n = 0;
    std::uint32_t x_observer = 0;
    std::uint32_t x_common = 0;
    bool sync = false;  // all local pools == observer pool == one tip
};

struct PoolSnapshot {
    double time = 0.0;
    std::uint64_t n = 0;
    std::vector<std::vector<BlockId>> local;  // sorted
    std::vector<BlockId> observer;            // sorted
    std::vector<BlockId> common;              // sorted
};

struct RunResult {
    std::vector<MarkedEvent> events;            // empty when keep_events is off
    std::vector<Block> blocks;                  // by seq, genesis at 0
    std::vector<TraceSample> trace;
    std::vector<std::uint32_t> observer_series; // per-event X^(o), probe_observer
    std::vector<SyncProbe> sync_probes;         // probe_sync, one per event
    std::vector<PoolSnapshot> pool_snapshots;   // capture_pool_snapshots
    double delta_bound = 0.0;
    std::uint64_t event_count = 0;
};

// Deterministic function of (params, seed): executes the full marked stream
// through the ledger state and samples the trace on the exact grid
// m * sample_interval, m = 0..floor(horizon / sample_interval).
RunResult run_simulation(const SimParams& params);

// Independent replications executed concurrently, one seed per run. Every
// run owns its state and streams; the output order is the seed order
// regardless of scheduling.
std::vector<RunResult> run_replications(const SimParams& base,
                                        const std::vector<std::uint64_t>& seeds);

}  // namespace tipsim
