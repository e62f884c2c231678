#include "doctest.h"

#include <algorithm>
#include <vector>

#include "tipsim/delay.hpp"
#include "tipsim/parallel.hpp"
#include "tipsim/process.hpp"

using namespace tipsim;

namespace {

Topology from_edges(int n, const std::vector<std::pair<int, int>>& edges) {
    Topology g;
    g.n = n;
    g.edges = edges;
    std::sort(g.edges.begin(), g.edges.end());
    g.incident.assign(static_cast<std::size_t>(n), {});
    for (std::size_t e = 0; e < g.edges.size(); ++e) {
        const auto [u, v] = g.edges[e];
        g.incident[static_cast<std::size_t>(u)].emplace_back(v, static_cast<int>(e));
        g.incident[static_cast<std::size_t>(v)].emplace_back(u, static_cast<int>(e));
    }
    return g;
}

}  // namespace

TEST_CASE("constant delay arrivals") {
    const DelayModel model = make_constant_delay(0.1);
    RngStream rng(1);
    const auto arrivals = delivery_times(3, 2.0, 8, model, rng);
    for (int j = 0; j < 8; ++j) {
        if (j == 3) {
            CHECK(arrivals[static_cast<std::size_t>(j)] == 2.0);
        } else {
            CHECK(arrivals[static_cast<std::size_t>(j)] == doctest::Approx(2.1).epsilon(1e-15));
        }
    }
    CHECK(effective_delta_bound(model) == 0.1);
}

TEST_CASE("direct delays stay inside the bound") {
    const DelayModel model = make_direct_delay(0.02, 0.18);
    CHECK(effective_delta_bound(model) == 0.18);
    RngStream rng(2);
    for (int rep = 0; rep < 100; ++rep) {
        const auto arrivals = delivery_times(0, 1.0, 12, model, rng);
        CHECK(arrivals[0] == 1.0);
        for (int j = 1; j < 12; ++j) {
            CHECK(arrivals[static_cast<std::size_t>(j)] >= 1.02);
            CHECK(arrivals[static_cast<std::size_t>(j)] <= 1.18);
        }
    }
}

TEST_CASE("gossip over a single edge") {
    const Topology g = from_edges(2, {{0, 1}});
    const DelayModel model = make_gossip_delay(0.05, 0.05, g);
    RngStream rng(3);
    const auto arrivals = delivery_times(0, 10.0, 2, model, rng);
    CHECK(arrivals[0] == 10.0);
    CHECK(arrivals[1] == doctest::Approx(10.05).epsilon(1e-15));
}

TEST_CASE("gossip delta bound is diameter times delta_max") {
    // Chain 0-1-2-3: diameter 3.
    const Topology g = from_edges(4, {{0, 1}, {1, 2}, {2, 3}});
    const DelayModel model = make_gossip_delay(0.02, 0.18, g);
    CHECK(graph_diameter(g) == 3);
    CHECK(effective_delta_bound(model) == doctest::Approx(3 * 0.18).epsilon(1e-15));
}

TEST_CASE("heap Dijkstra equals the reference scan exactly") {
    RngStream topo_rng(17);
    const Topology g = generate_watts_strogatz(100, 10, 1.0, topo_rng);
    const DelayModel model = make_gossip_delay(0.02, 0.18, g);
    const int diameter = graph_diameter(g);
    RngStream weight_rng(99);
    for (int block = 0; block < 50; ++block) {
        const auto weights = sample_edge_weights(model, weight_rng);
        const int origin = block % g.n;
        const auto fast = gossip_arrivals(g, weights, origin);
        const auto slow = gossip_arrivals_reference(g, weights, origin);
        REQUIRE(fast.size() == slow.size());
        for (std::size_t j = 0; j < fast.size(); ++j) {
            CHECK(fast[j] == slow[j]);  // bit-for-bit
            CHECK(fast[j] <= diameter * 0.18);
        }
    }
}

TEST_CASE("gossip arrivals satisfy the triangle property") {
    RngStream topo_rng(5);
    const Topology g = generate_watts_strogatz(24, 4, 0.6, topo_rng);
    const DelayModel model = make_gossip_delay(0.01, 0.2, g);
    RngStream weight_rng(6);
    for (int block = 0; block < 20; ++block) {
        const auto weights = sample_edge_weights(model, weight_rng);
        const auto dist = gossip_arrivals(g, weights, block % g.n);
        for (int j = 0; j < g.n; ++j) {
            for (const auto& [m, e] : g.incident[static_cast<std::size_t>(j)]) {
                CHECK(dist[static_cast<std::size_t>(j)] <=
                      dist[static_cast<std::size_t>(m)] + weights[static_cast<std::size_t>(e)] +
                          1e-15);
            }
        }
    }
}

TEST_CASE("delay sampling is deterministic in the seed") {
    const DelayModel model = make_direct_delay(0.02, 0.18);
    RngStream a(42), b(42);
    CHECK(delivery_times(1, 0.5, 6, model, a) == delivery_times(1, 0.5, 6, model, b));
}

TEST_CASE("parallel delivery fill matches the serial reference at any thread count") {
    RngStream topo_rng(8);
    const Topology g = generate_watts_strogatz(40, 6, 1.0, topo_rng);
    const DelayModel model = make_gossip_delay(0.02, 0.18, g);
    const NodeSet nodes = zipf_node_set(40, 1.0, 200.0);
    RngStream time_rng(stream_seed(9, "issuance-times"));
    RngStream issuer_rng(stream_seed(9, "issuers"));
    const auto stream = sample_issuance_stream(nodes, 5.0, time_rng, issuer_rng);
    std::vector<MarkedEvent> base(stream.size());
    for (std::size_t i = 0; i < stream.size(); ++i) {
        base[i].seq = static_cast<std::uint64_t>(i) + 1;
        base[i].time = stream[i].first;
        base[i].issuer = stream[i].second;
    }
    const std::uint64_t delay_seed = stream_seed(9, "delays");

    std::vector<MarkedEvent> serial = base;
    fill_deliveries_serial(serial, model, nodes.count(), delay_seed);

    const int original = max_threads();
    for (int threads : {1, 2, 4}) {
        set_num_threads(threads);
        std::vector<MarkedEvent> parallel = base;
        fill_deliveries(parallel, model, nodes.count(), delay_seed);
        for (std::size_t i = 0; i < serial.size(); ++i) {
            CHECK(parallel[i].deliveries == serial[i].deliveries);
        }
    }
    set_num_threads(original);
}

TEST_CASE("delay model constructors validate bounds") {
    CHECK_THROWS_AS(make_direct_delay(-0.1, 0.2), std::invalid_argument);
    CHECK_THROWS_AS(make_direct_delay(0.3, 0.2), std::invalid_argument);
    CHECK_THROWS_AS(make_constant_delay(-1.0), std::invalid_argument);
}
