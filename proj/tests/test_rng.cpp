#include "doctest.h"

#include <set>
#include <stdexcept>
#include <vector>

#include "tipsim/rng.hpp"

using namespace tipsim;

TEST_CASE("same seed reproduces the same stream") {
    RngStream a(1234), b(1234);
    for (int i = 0; i < 100; ++i) {
        CHECK(a.next_u64() == b.next_u64());
    }
}

TEST_CASE("named streams are separated") {
    const std::uint64_t master = 42;
    std::set<std::uint64_t> seeds;
    for (const char* name : {"issuance-times", "issuers", "block-ids", "delays",
                             "tip-selection", "topology"}) {
        seeds.insert(stream_seed(master, name));
    }
    CHECK(seeds.size() == 6);
    CHECK(stream_seed(41, "delays") != stream_seed(42, "delays"));
}

TEST_CASE("substreams differ by index but not by call order") {
    const std::uint64_t stream = stream_seed(7, "delays");
    CHECK(substream_seed(stream, 1) != substream_seed(stream, 2));
    CHECK(substream_seed(stream, 5) == substream_seed(stream, 5));
}

TEST_CASE("uniform01 lies in [0,1) and exponential is positive with the right mean") {
    RngStream rng(99);
    double acc = 0.0;
    const int n = 200000;
    for (int i = 0; i < n; ++i) {
        const double u = rng.uniform01();
        CHECK(u >= 0.0);
        CHECK(u < 1.0);
        const double e = rng.exponential(4.0);
        CHECK(e >= 0.0);
        acc += e;
    }
    // mean 0.25, sd of the mean 0.25/sqrt(n)
    CHECK(acc / n == doctest::Approx(0.25).epsilon(0.02));
}

TEST_CASE("uniform_index covers the range") {
    RngStream rng(5);
    std::vector<int> counts(8, 0);
    for (int i = 0; i < 8000; ++i) {
        const std::size_t idx = rng.uniform_index(8);
        REQUIRE(idx < 8);
        ++counts[idx];
    }
    for (int c : counts) {
        CHECK(c > 800);  // fair within a wide margin
    }
}

TEST_CASE("categorical sampler rejects bad weights") {
    const std::vector<double> empty;
    const std::vector<double> negative{1.0, -0.5};
    const std::vector<double> zeros{0.0, 0.0};
    CHECK_THROWS_AS(CategoricalSampler{empty}, std::invalid_argument);
    CHECK_THROWS_AS(CategoricalSampler{negative}, std::invalid_argument);
    CHECK_THROWS_AS(CategoricalSampler{zeros}, std::invalid_argument);
}
