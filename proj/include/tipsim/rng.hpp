#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <string_view>
#include <vector>

namespace tipsim {

// SplitMix64 finalizer, used for seed derivation only.
constexpr std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// Seed for a named stream (issuance-times, issuers, block-ids, delays,
// tip-selection, topology) split from one master seed. Modules consuming
// different streams cannot perturb each other's draws.
std::uint64_t stream_seed(std::uint64_t master_seed, std::string_view stream_name);

// Seed for the index-th substream of a stream (per-block delay vectors).
// Substreams are independent of consumption order, which is what makes
// batch delay generation safe to parallelise.
constexpr std::uint64_t substream_seed(std::uint64_t stream, std::uint64_t index) {
    return splitmix64(stream ^ splitmix64(index + 0x51ed270b4d8c68a1ULL));
}

// mt19937_64 with explicit inverse-CDF sampling. std:: distributions are
// implementation-defined, so we sample ourselves to keep traces
// byte-identical across standard libraries.
class RngStream {
  public:
    explicit RngStream(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }

    // Uniform in [0, 1) with 53 random bits.
    double uniform01() {
        return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

    // Exponential with the given rate; strictly positive rate required.
    double exponential(double rate) {
        return -std::log1p(-uniform01()) / rate;
    }

    // Uniform index in [0, n), n >= 1. Lemire multiply-shift; the bias of
    // at most n/2^64 is irrelevant at our sample sizes.
    std::size_t uniform_index(std::size_t n) {
        return static_cast<std::size_t>(
            (static_cast<unsigned __int128>(engine_()) * n) >> 64);
    }

  private:
    std::mt19937_64 engine_;
};

// Draws node indices with probability proportional to fixed weights.
class CategoricalSampler {
  public:
    explicit CategoricalSampler(const std::vector<double>& weights);
    int operator()(RngStream& rng) const;

  private:
    std::vector<double> cumulative_;
};

}  // namespace tipsim
