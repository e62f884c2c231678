#pragma once

#include <vector>

#include "tipsim/rng.hpp"
#include "tipsim/topology.hpp"

namespace tipsim {

enum class DelayKind { direct, gossip, constant };

// Per-block, per-node delivery delay model. delta_bound is the partial
// synchrony bound: every sampled delay is <= delta_bound, exactly for
// direct/constant and conservatively (diameter * delta_max) for gossip.
struct DelayModel {
    DelayKind kind = DelayKind::constant;
    double delta_min = 0.0;
    double delta_max = 0.0;
    double constant_delay = 0.0;
    Topology topology;  // gossip only
    double delta_bound = 0.0;
};

DelayModel make_direct_delay(double delta_min, double delta_max);
DelayModel make_constant_delay(double delay);
DelayModel make_gossip_delay(double delta_min, double delta_max, Topology topology);

double effective_delta_bound(const DelayModel& model);

// One fresh uniform draw per undirected edge, in canonical edge order.
std::vector<double> sample_edge_weights(const DelayModel& model, RngStream& rng);

// First-arrival time at every node when the origin floods a block and each
// connection costs its sampled weight: a single-source shortest path over
// the per-block weighted graph. Binary-heap Dijkstra.
std::vector<double> gossip_arrivals(const Topology& g, const std::vector<double>& weights, int origin);

// O(n^2) scan Dijkstra, kept as the serial reference the tests and the
// benchmark compare against. Settling order differs but every distance is
// the same min over identical path sums, so results match bit for bit.
std::vector<double> gossip_arrivals_reference(const Topology& g, const std::vector<double>& weights,
                                              int origin);

// Arrival times (absolute seconds) of one block at every node.
// arrival[origin] == issue_time; every arrival - issue_time <= delta_bound.
std::vector<double> delivery_times(int origin, double issue_time, int n_nodes,
                                   const DelayModel& model, RngStream& rng);

}  // namespace tipsim
