#pragma once

#include <vector>

namespace tipsim {

// Per-node issuance rates in blocks/second.
struct NodeSet {
    std::vector<double> rates;
    double total_rate = 0.0;

    int count() const { return static_cast<int>(rates.size()); }
};

// Zipf rate profile: rate_i = i^(-s) / sum_j j^(-s) * total, i = 1..n.
// s = 0 splits the total evenly; larger s concentrates issuance on the
// first nodes.
std::vector<double> zipf_rates(int n, double s, double total);

NodeSet zipf_node_set(int n, double s, double total);

}  // namespace tipsim
