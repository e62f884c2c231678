#include "tipsim/simulator.hpp"

#include <cmath>
#include <stdexcept>

namespace tipsim {

namespace {

PoolSnapshot snapshot_pools(const LedgerState& state, double at_time) {
    PoolSnapshot snap;
    snap.time = at_time;
    snap.n = state.issued_count();
    snap.local.reserve(static_cast<std::size_t>(state.node_count()));
    for (int i = 0; i < state.node_count(); ++i) {
        snap.local.push_back(state.local_pool(i).sorted_ids());
    }
    snap.observer = state.observer_pool().sorted_ids();
    snap.common = state.common_pool();
    return snap;
}

SyncProbe probe_sync_state(const LedgerState& state) {
    SyncProbe probe;
    probe.n = state.issued_count();
    probe.x_observer = static_cast<std::uint32_t>(state.observer_pool().size());
    probe.x_common = state.common_pool_size();
    if (probe.x_observer == 1 && probe.x_common == 1) {
        const BlockId tip = state.observer_pool().at(0);
        bool all_equal = true;
        for (int i = 0; i < state.node_count() && all_equal; ++i) {
            const TipPool& pool = state.local_pool(i);
            all_equal = pool.size() == 1 && pool.contains(tip);
        }
        probe.sync = all_equal;
    }
    return probe;
}

}  // namespace

RunResult run_simulation(const SimParams& params) {
    if (params.horizon < 0.0) {
        throw std::invalid_argument("run_simulation: negative horizon");
    }
    if (params.sample_interval <= 0.0) {
        throw std::invalid_argument("run_simulation: sample interval must be positive");
    }
    if (params.k_refs < 1) {
        throw std::invalid_argument("run_simulation: k_refs must be >= 1");
    }

    RunResult result;
    result.delta_bound = effective_delta_bound(params.delay);

    std::vector<MarkedEvent> events =
        params.horizon > 0.0
            ? generate_event_stream(params.nodes, params.horizon, params.delay, params.seed)
            : std::vector<MarkedEvent>{};
    RngStream tip_rng(stream_seed(params.seed, "tip-selection"));

    LedgerState state(params.nodes.count());

    // Grid of exact multiples of the sampling interval; a tie between a
    // sample and an issuance resolves issuance-first so the sample sees
    // every block with issue_time <= sample time.
    const std::uint64_t sample_count = static_cast<std::uint64_t>(
        std::floor(params.horizon / params.sample_interval + 1e-9));
    std::uint64_t next_sample = 0;
    auto emit_sample = [&]() {
        const double u = static_cast<double>(next_sample) * params.sample_interval;
        state.apply_deliveries_up_to(u);
        result.trace.push_back(state.sample_trace(u, result.delta_bound));
        if (params.capture_pool_snapshots) {
            result.pool_snapshots.push_back(snapshot_pools(state, u));
        }
        ++next_sample;
    };

    for (const MarkedEvent& event : events) {
        while (next_sample <= sample_count &&
               static_cast<double>(next_sample) * params.sample_interval < event.time) {
            emit_sample();
        }
        if (params.probe_sync) {
            state.apply_deliveries_up_to(event.time);
            result.sync_probes.push_back(probe_sync_state(state));
        }
        state.step(event, params.k_refs, tip_rng);
        if (params.probe_observer) {
            result.observer_series.push_back(
                static_cast<std::uint32_t>(state.observer_pool().size()));
        }
    }
    while (next_sample <= sample_count) {
        emit_sample();
    }

    result.event_count = static_cast<std::uint64_t>(events.size());
    result.blocks = state.blocks();
    if (params.keep_events) {
        result.events = std::move(events);
    }
    return result;
}

std::vector<RunResult> run_replications(const SimParams& base,
                                        const std::vector<std::uint64_t>& seeds) {
    std::vector<RunResult> results(seeds.size());
    const std::int64_t count = static_cast<std::int64_t>(seeds.size());
#pragma omp parallel for schedule(dynamic, 1)
    for (std::int64_t i = 0; i < count; ++i) {
        SimParams params = base;
        params.seed = seeds[static_cast<std::size_t>(i)];
        results[static_cast<std::size_t>(i)] = run_simulation(params);
    }
    return results;
}

}  // namespace tipsim
