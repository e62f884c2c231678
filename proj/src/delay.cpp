#include "tipsim/delay.hpp"

#include <algorithm>
#include <limits>
#include <queue>
#include <stdexcept>
#include <utility>

namespace tipsim {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void check_uniform_bounds(double delta_min, double delta_max) {
    if (delta_min < 0.0 || delta_max < delta_min) {
        throw std::invalid_argument("delay: need 0 <= delta_min <= delta_max");
    }
}

}  // namespace

DelayModel make_direct_delay(double delta_min, double delta_max) {
    check_uniform_bounds(delta_min, delta_max);
    DelayModel m;
    m.kind = DelayKind::direct;
    m.delta_min = delta_min;
    m.delta_max = delta_max;
    m.delta_bound = delta_max;
    return m;
}

DelayModel make_constant_delay(double delay) {
    if (delay < 0.0) {
        throw std::invalid_argument("delay: constant delay must be nonnegative");
    }
    DelayModel m;
    m.kind = DelayKind::constant;
    m.constant_delay = delay;
    m.delta_bound = delay;
    return m;
}

DelayModel make_gossip_delay(double delta_min, double delta_max, Topology topology) {
    check_uniform_bounds(delta_min, delta_max);
    if (topology.n < 2) {
        throw std::invalid_argument("delay: gossip needs a topology with >= 2 nodes");
    }
    DelayModel m;
    m.kind = DelayKind::gossip;
    m.delta_min = delta_min;
    m.delta_max = delta_max;
    m.topology = std::move(topology);
    m.delta_bound = static_cast<double>(graph_diameter(m.topology)) * delta_max;
    return m;
}

double effective_delta_bound(const DelayModel& model) {
    return model.delta_bound;
}

std::vector<double> sample_edge_weights(const DelayModel& model, RngStream& rng) {
    std::vector<double> weights(model.topology.edge_count());
    for (double& w : weights) {
        w = rng.uniform(model.delta_min, model.delta_max);
    }
    return weights;
}

std::vector<double> gossip_arrivals(const Topology& g, const std::vector<double>& weights,
                                    int origin) {
    std::vector<double> dist(static_cast<std::size_t>(g.n), kInf);
    dist[static_cast<std::size_t>(origin)] = 0.0;
    using Entry = std::pair<double, int>;
    std::priority_queue<Entry, std::vector<Entry>, std::greater<>> heap;
    heap.emplace(0.0, origin);
    while (!heap.empty()) {
        const auto [d, u] = heap.top();
        heap.pop();
        if (d > dist[static_cast<std::size_t>(u)]) {
            continue;  // stale entry
        }
        for (const auto& [v, e] : g.incident[static_cast<std::size_t>(u)]) {
            const double cand = d + weights[static_cast<std::size_t>(e)];
            if (cand < dist[static_cast<std::size_t>(v)]) {
                dist[static_cast<std::size_t>(v)] = cand;
                heap.emplace(cand, v);
            }
        }
    }
    return dist;
}

std::vector<double> gossip_arrivals_reference(const Topology& g, const std::vector<double>& weights,
                                              int origin) {
    std::vector<double> dist(static_cast<std::size_t>(g.n), kInf);
    std::vector<char> settled(static_cast<std::size_t>(g.n), 0);
    dist[static_cast<std::size_t>(origin)] = 0.0;
    for (int round = 0; round < g.n; ++round) {
        int u = -1;
        double best = kInf;
        for (int v = 0; v < g.n; ++v) {
            if (!settled[static_cast<std::size_t>(v)] && dist[static_cast<std::size_t>(v)] < best) {
                best = dist[static_cast<std::size_t>(v)];
                u = v;
            }
        }
        if (u < 0) {
            break;
        }
        settled[static_cast<std::size_t>(u)] = 1;
        for (const auto& [v, e] : g.incident[static_cast<std::size_t>(u)]) {
            const double cand = best + weights[static_cast<std::size_t>(e)];
            if (cand < dist[static_cast<std::size_t>(v)]) {
                dist[static_cast<std::size_t>(v)] = cand;
            }
        }
    }
    return dist;
}

std::vector<double> delivery_times(int origin, double issue_time, int n_nodes,
                                   const DelayModel& model, RngStream& rng) {
    if (origin < 0 || origin >= n_nodes) {
        throw std::invalid_argument("delivery_times: origin out of range");
    }
    if (issue_time < 0.0) {
        throw std::invalid_argument("delivery_times: negative issue time");
    }
    std::vector<double> arrivals(static_cast<std::size_t>(n_nodes));
    switch (model.kind) {
        case DelayKind::constant:
            for (int j = 0; j < n_nodes; ++j) {
                arrivals[static_cast<std::size_t>(j)] =
                    j == origin ? issue_time : issue_time + model.constant_delay;
            }
            break;
        case DelayKind::direct:
            for (int j = 0; j < n_nodes; ++j) {
                arrivals[static_cast<std::size_t>(j)] =
                    j == origin ? issue_time
                                : issue_time + rng.uniform(model.delta_min, model.delta_max);
            }
            break;
        case DelayKind::gossip: {
            if (model.topology.n != n_nodes) {
                throw std::invalid_argument("delivery_times: topology size mismatch");
            }
            const std::vector<double> weights = sample_edge_weights(model, rng);
            const std::vector<double> dist = gossip_arrivals(model.topology, weights, origin);
            for (int j = 0; j < n_nodes; ++j) {
                arrivals[static_cast<std::size_t>(j)] = issue_time + dist[static_cast<std::size_t>(j)];
            }
            arrivals[static_cast<std::size_t>(origin)] = issue_time;
            break;
        }
    }
    return arrivals;
}

}  // namespace tipsim
