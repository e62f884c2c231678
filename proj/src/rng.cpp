#include "tipsim/rng.hpp"

#include <algorithm>
#include <stdexcept>

namespace tipsim {

std::uint64_t stream_seed(std::uint64_t master_seed, std::string_view stream_name) {
    // FNV-1a over the stream name, then mixed with the master seed.
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (char ch : stream_name) {
        h ^= static_cast<unsigned char>(ch);
        h *= 0x100000001b3ULL;
    }
    return splitmix64(master_seed ^ splitmix64(h));
}

CategoricalSampler::CategoricalSampler(const std::vector<double>& weights) {
    if (weights.empty()) {
        throw std::invalid_argument("CategoricalSampler: empty weight vector");
    }
    cumulative_.reserve(weights.size());
    double acc = 0.0;
    for (double w : weights) {
        if (w < 0.0) {
            throw std::invalid_argument("CategoricalSampler: negative weight");
        }
        acc += w;
        cumulative_.push_back(acc);
    }
    if (acc <= 0.0) {
        throw std::invalid_argument("CategoricalSampler: zero total weight");
    }
}

int CategoricalSampler::operator()(RngStream& rng) const {
    const double u = rng.uniform01() * cumulative_.back();
    auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), u);
    if (it == cumulative_.end()) {
        --it;
    }
    return static_cast<int>(it - cumulative_.begin());
}

}  // namespace tipsim
