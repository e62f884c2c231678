#include "tipsim/rates.hpp"

#include <cmath>
#include <stdexcept>

namespace tipsim {

std::vector<double> zipf_rates(int n, double s, double total) {
    if (n < 1) {
        throw std::invalid_argument("zipf_rates: node count must be >= 1");
    }
    if (total <= 0.0) {
        throw std::invalid_argument("zipf_rates: total rate must be positive");
    }
    if (s < 0.0) {
        throw std::invalid_argument("zipf_rates: exponent must be nonnegative");
    }
    std::vector<double> weights(static_cast<std::size_t>(n));
    long double norm = 0.0L;
    for (int i = 0; i < n; ++i) {
        const double w = std::pow(static_cast<double>(i + 1), -s);
        weights[static_cast<std::size_t>(i)] = w;
        norm += w;
    }
    std::vector<double> rates(weights.size());
    for (std::size_t i = 0; i < weights.size(); ++i) {
        rates[i] = static_cast<double>(weights[i] / norm) * total;
    }
    return rates;
}

NodeSet zipf_node_set(int n, double s, double total) {
    NodeSet nodes;
    nodes.rates = zipf_rates(n, s, total);
    nodes.total_rate = total;
    return nodes;
}

}  // namespace tipsim
