#pragma once

#include <iosfwd>
#include <utility>
#include <vector>

#include "tipsim/rng.hpp"

namespace tipsim {

// Undirected connected graph. Edges are stored once in canonical (u < v)
// order; per-node incidence lists carry the edge index so per-block edge
// weights can be looked up during shortest-path passes.
struct Topology {
    int n = 0;
    std::vector<std::pair<int, int>> edges;                    // sorted, u < v
    std::vector<std::vector<std::pair<int, int>>> incident;    // node -> (neighbor, edge idx)

    std::size_t edge_count() const { return edges.size(); }
    int degree(int node) const { return static_cast<int>(incident[static_cast<std::size_t>(node)].size()); }
};

// Watts-Strogatz small world: ring lattice with mean_degree nearest
// neighbors, each lattice edge rewired independently with probability beta.
// Rewiring never creates self-loops or duplicate edges, so the edge count
// stays n * mean_degree / 2. Disconnected draws are regenerated; more than
// 100 retries is fatal.
Topology generate_watts_strogatz(int n, int mean_degree, double beta, RngStream& rng);

bool is_connected(const Topology& g);

// Longest BFS eccentricity over all sources (hop metric).
int graph_diameter(const Topology& g);

// One "u v" pair per line.
void write_edge_list(const Topology& g, std::ostream& os);

}  // namespace tipsim
