#include "tipsim/topology.hpp"

#include <algorithm>
#include <deque>
#include <ostream>
#include <set>
#include <stdexcept>

namespace tipsim {

namespace {

Topology freeze(int n, const std::vector<std::set<int>>& adj) {
    Topology g;
    g.n = n;
    for (int u = 0; u < n; ++u) {
        for (int v : adj[static_cast<std::size_t>(u)]) {
            if (u < v) {
                g.edges.emplace_back(u, v);
            }
        }
    }
    std::sort(g.edges.begin(), g.edges.end());
    g.incident.assign(static_cast<std::size_t>(n), {});
    for (std::size_t e = 0; e < g.edges.size(); ++e) {
        const auto [u, v] = g.edges[e];
        g.incident[static_cast<std::size_t>(u)].emplace_back(v, static_cast<int>(e));
        g.incident[static_cast<std::size_t>(v)].emplace_back(u, static_cast<int>(e));
    }
    return g;
}

Topology watts_strogatz_once(int n, int mean_degree, double beta, RngStream& rng) {
    std::vector<std::set<int>> adj(static_cast<std::size_t>(n));
    const int half = mean_degree / 2;
    for (int i = 0; i < n; ++i) {
        for (int j = 1; j <= half; ++j) {
            const int t = (i + j) % n;
            adj[static_cast<std::size_t>(i)].insert(t);
            adj[static_cast<std::size_t>(t)].insert(i);
        }
    }
    // Rewire the rightward lattice edges in canonical order so the draw
    // sequence is deterministic.
    for (int i = 0; i < n; ++i) {
        for (int j = 1; j <= half; ++j) {
            if (rng.uniform01() >= beta) {
                continue;
            }
            const int old_target = (i + j) % n;
            auto& ai = adj[static_cast<std::size_t>(i)];
            if (ai.count(old_target) == 0) {
                continue;  // already rewired away from the other endpoint
            }
            if (static_cast<int>(ai.size()) >= n - 1) {
                continue;  // saturated node, nothing valid to rewire to
            }
            int fresh;
            do {
                fresh = static_cast<int>(rng.uniform_index(static_cast<std::size_t>(n)));
            } while (fresh == i || ai.count(fresh) != 0);
            ai.erase(old_target);
            adj[static_cast<std::size_t>(old_target)].erase(i);
            ai.insert(fresh);
            adj[static_cast<std::size_t>(fresh)].insert(i);
        }
    }
    return freeze(n, adj);
}

}  // namespace

Topology generate_watts_strogatz(int n, int mean_degree, double beta, RngStream& rng) {
    if (mean_degree < 2 || mean_degree % 2 != 0) {
        throw std::invalid_argument("watts_strogatz: mean_degree must be even and >= 2");
    }
    if (n <= mean_degree) {
        throw std::invalid_argument("watts_strogatz: need n > mean_degree");
    }
    if (beta < 0.0 || beta > 1.0) {
        throw std::invalid_argument("watts_strogatz: beta must be in [0, 1]");
    }
    for (int attempt = 0; attempt <= 100; ++attempt) {
        Topology g = watts_strogatz_once(n, mean_degree, beta, rng);
        if (is_connected(g)) {
            return g;
        }
    }
    throw std::runtime_error("watts_strogatz: no connected graph after 100 retries");
}

bool is_connected(const Topology& g) {
    if (g.n == 0) {
        return false;
    }
    std::vector<char> seen(static_cast<std::size_t>(g.n), 0);
    std::deque<int> queue{0};
    seen[0] = 1;
    int reached = 1;
    while (!queue.empty()) {
        const int u = queue.front();
        queue.pop_front();
        for (const auto& [v, e] : g.incident[static_cast<std::size_t>(u)]) {
            (void)e;
            if (!seen[static_cast<std::size_t>(v)]) {
                seen[static_cast<std::size_t>(v)] = 1;
                ++reached;
                queue.push_back(v);
            }
        }
    }
    return reached == g.n;
}

int graph_diameter(const Topology& g) {
    int diameter = 0;
    std::vector<int> dist(static_cast<std::size_t>(g.n));
    for (int src = 0; src < g.n; ++src) {
        std::fill(dist.begin(), dist.end(), -1);
        std::deque<int> queue{src};
        dist[static_cast<std::size_t>(src)] = 0;
        while (!queue.empty()) {
            const int u = queue.front();
            queue.pop_front();
            for (const auto& [v, e] : g.incident[static_cast<std::size_t>(u)]) {
                (void)e;
                if (dist[static_cast<std::size_t>(v)] < 0) {
                    dist[static_cast<std::size_t>(v)] = dist[static_cast<std::size_t>(u)] + 1;
                    diameter = std::max(diameter, dist[static_cast<std::size_t>(v)]);
                    queue.push_back(v);
                }
            }
        }
    }
    return diameter;
}

void write_edge_list(const Topology& g, std::ostream& os) {
    for (const auto& [u, v] : g.edges) {
        os << u << ' ' << v << '\n';
    }
}

}  // namespace tipsim
