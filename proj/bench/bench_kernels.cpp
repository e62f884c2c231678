// Compares the serial reference kernels against the production and
// OpenMP-parallel paths: per-block delivery-vector batches (gossip
// shortest paths) and independent replication runs.

#include <chrono>
#include <cstdio>
#include <vector>

#include "tipsim/delay.hpp"
#include "tipsim/parallel.hpp"
#include "tipsim/process.hpp"
#include "tipsim/rates.hpp"
#include "tipsim/simulator.hpp"

using namespace tipsim;

namespace {

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::vector<MarkedEvent> make_bare_events(const NodeSet& nodes, double horizon,
                                          std::uint64_t seed) {
    RngStream time_rng(stream_seed(seed, "issuance-times"));
    RngStream issuer_rng(stream_seed(seed, "issuers"));
    const auto stream = sample_issuance_stream(nodes, horizon, time_rng, issuer_rng);
    std::vector<MarkedEvent> events(stream.size());
    for (std::size_t i = 0; i < stream.size(); ++i) {
        events[i].seq = static_cast<std::uint64_t>(i) + 1;
        events[i].time = stream[i].first;
        events[i].issuer = stream[i].second;
    }
    return events;
}

void bench_delivery_batch() {
    const std::uint64_t seed = 99;
    const NodeSet nodes = zipf_node_set(100, 1.0, 500.0);
    RngStream topo_rng(stream_seed(seed, "topology"));
    const Topology topo = generate_watts_strogatz(100, 10, 1.0, topo_rng);
    const DelayModel model = make_gossip_delay(0.02, 0.18, topo);
    const std::uint64_t delay_seed = stream_seed(seed, "delays");

    std::vector<MarkedEvent> events = make_bare_events(nodes, 60.0, seed);
    std::printf("delivery batch: %zu blocks, gossip on WS(100, 10)\n", events.size());

    // Reference SSSP, one block at a time.
    auto t0 = std::chrono::steady_clock::now();
    double checksum_ref = 0.0;
    for (const MarkedEvent& e : events) {
        RngStream block_rng(substream_seed(delay_seed, e.seq));
        const auto weights = sample_edge_weights(model, block_rng);
        const auto dist = gossip_arrivals_reference(topo, weights, e.issuer);
        checksum_ref += dist[static_cast<std::size_t>((e.issuer + 1) % 100)];
    }
    const double t_ref = seconds_since(t0);

    // Production heap Dijkstra, serial.
    t0 = std::chrono::steady_clock::now();
    double checksum_heap = 0.0;
    for (const MarkedEvent& e : events) {
        RngStream block_rng(substream_seed(delay_seed, e.seq));
        const auto weights = sample_edge_weights(model, block_rng);
        const auto dist = gossip_arrivals(topo, weights, e.issuer);
        checksum_heap += dist[static_cast<std::size_t>((e.issuer + 1) % 100)];
    }
    const double t_heap = seconds_since(t0);

    // Production batch path, serial then parallel.
    std::vector<MarkedEvent> serial_events = events;
    t0 = std::chrono::steady_clock::now();
    fill_deliveries_serial(serial_events, model, nodes.count(), delay_seed);
    const double t_serial = seconds_since(t0);

    std::vector<MarkedEvent> parallel_events = events;
    t0 = std::chrono::steady_clock::now();
    fill_deliveries(parallel_events, model, nodes.count(), delay_seed);
    const double t_parallel = seconds_since(t0);

    bool identical = true;
    for (std::size_t i = 0; i < events.size(); ++i) {
        identical = identical && serial_events[i].deliveries == parallel_events[i].deliveries;
    }

    std::printf("  reference sssp        %8.3f s (checksum %.6f)\n", t_ref, checksum_ref);
    std::printf("  heap sssp             %8.3f s (checksum %.6f)\n", t_heap, checksum_heap);
    std::printf("  batch serial          %8.3f s\n", t_serial);
    std::printf("  batch openmp (%2d thr) %8.3f s  speedup %.2fx, identical=%s\n", max_threads(),
                t_parallel, t_serial / t_parallel, identical ? "yes" : "NO");
}

void bench_replications() {
    SimParams params;
    params.nodes = zipf_node_set(10, 0.0, 100.0);
    params.k_refs = 4;
    params.horizon = 30.0;
    params.sample_interval = 0.05;
    params.delay = make_direct_delay(0.02, 0.18);
    params.keep_events = false;

    const std::vector<std::uint64_t> seeds = {1, 2, 3, 4, 5, 6, 7, 8};
    std::printf("replications: %zu independent runs, N=10, 30s at 100 BPS\n", seeds.size());

    auto t0 = std::chrono::steady_clock::now();
    std::vector<RunResult> serial;
    serial.reserve(seeds.size());
    for (std::uint64_t s : seeds) {
        SimParams p = params;
        p.seed = s;
        serial.push_back(run_simulation(p));
    }
    const double t_serial = seconds_since(t0);

    t0 = std::chrono::steady_clock::now();
    const std::vector<RunResult> parallel = run_replications(params, seeds);
    const double t_parallel = seconds_since(t0);

    bool identical = serial.size() == parallel.size();
    for (std::size_t i = 0; identical && i < serial.size(); ++i) {
        identical = serial[i].event_count == parallel[i].event_count &&
                    serial[i].trace.size() == parallel[i].trace.size();
        for (std::size_t j = 0; identical && j < serial[i].trace.size(); ++j) {
            identical = serial[i].trace[j].x_observer == parallel[i].trace[j].x_observer &&
                        serial[i].trace[j].x_common == parallel[i].trace[j].x_common;
        }
    }

    std::printf("  serial loop           %8.3f s\n", t_serial);
    std::printf("  openmp pool (%2d thr)  %8.3f s  speedup %.2fx, identical=%s\n", max_threads(),
                t_parallel, t_serial / t_parallel, identical ? "yes" : "NO");
}

}  // namespace

int main() {
    bench_delivery_batch();
    bench_replications();
    return 0;
}
