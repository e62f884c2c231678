#include "tipsim/process.hpp"

#include <charconv>
#include <stdexcept>

namespace tipsim {

std::string BlockId::to_hex() const {
    static const char* digits = "0123456789abcdef";
    std::string out(32, '0');
    for (int i = 0; i < 16; ++i) {
        out[static_cast<std::size_t>(15 - i)] = digits[(hi >> (4 * i)) & 0xf];
        out[static_cast<std::size_t>(31 - i)] = digits[(lo >> (4 * i)) & 0xf];
    }
    return out;
}

std::optional<BlockId> BlockId::from_hex(std::string_view text) {
    if (text.size() != 32) {
        return std::nullopt;
    }
    BlockId id;
    auto parse_half = [&](std::string_view half, std::uint64_t& out) {
        auto [ptr, ec] = std::from_chars(half.data(), half.data() + half.size(), out, 16);
        return ec == std::errc{} && ptr == half.data() + half.size();
    };
    if (!parse_half(text.substr(0, 16), id.hi) || !parse_half(text.substr(16, 16), id.lo)) {
        return std::nullopt;
    }
    return id;
}

std::vector<std::pair<double, int>> sample_issuance_stream(const NodeSet& nodes, double horizon,
                                                           RngStream& time_rng,
                                                           RngStream& issuer_rng) {
    if (horizon <= 0.0) {
        throw std::invalid_argument("sample_issuance_stream: horizon must be positive");
    }
    if (nodes.total_rate <= 0.0) {
        throw std::invalid_argument("sample_issuance_stream: total rate must be positive");
    }
    CategoricalSampler pick_issuer(nodes.rates);
    std::vector<std::pair<double, int>> stream;
    stream.reserve(static_cast<std::size_t>(nodes.total_rate * horizon * 1.1) + 16);
    double t = time_rng.exponential(nodes.total_rate);
    while (t < horizon) {
        stream.emplace_back(t, pick_issuer(issuer_rng));
        t += time_rng.exponential(nodes.total_rate);
    }
    return stream;
}

BlockId BlockIdGenerator::next() {
    BlockId id{rng_.next_u64(), rng_.next_u64()};
    if (!used_.insert(id).second) {
        throw std::runtime_error("BlockIdGenerator: duplicate 128-bit draw, RNG misuse");
    }
    return id;
}

namespace {

void fill_one(MarkedEvent& event, const DelayModel& model, int n_nodes,
              std::uint64_t delay_stream_seed) {
    RngStream block_rng(substream_seed(delay_stream_seed, event.seq));
    event.deliveries = delivery_times(event.issuer, event.time, n_nodes, model, block_rng);
}

}  // namespace

void fill_deliveries(std::vector<MarkedEvent>& events, const DelayModel& model, int n_nodes,
                     std::uint64_t delay_stream_seed) {
    const std::int64_t count = static_cast<std::int64_t>(events.size());
#pragma omp parallel for schedule(dynamic, 64)
    for (std::int64_t i = 0; i < count; ++i) {
        fill_one(events[static_cast<std::size_t>(i)], model, n_nodes, delay_stream_seed);
    }
}

void fill_deliveries_serial(std::vector<MarkedEvent>& events, const DelayModel& model, int n_nodes,
                            std::uint64_t delay_stream_seed) {
    for (MarkedEvent& event : events) {
        fill_one(event, model, n_nodes, delay_stream_seed);
    }
}

std::vector<MarkedEvent> generate_event_stream(const NodeSet& nodes, double horizon,
                                               const DelayModel& model,
                                               std::uint64_t master_seed) {
    RngStream time_rng(stream_seed(master_seed, "issuance-times"));
    RngStream issuer_rng(stream_seed(master_seed, "issuers"));
    BlockIdGenerator ids(stream_seed(master_seed, "block-ids"));

    const auto stream = sample_issuance_stream(nodes, horizon, time_rng, issuer_rng);
    std::vector<MarkedEvent> events(stream.size());
    for (std::size_t i = 0; i < stream.size(); ++i) {
        events[i].seq = static_cast<std::uint64_t>(i) + 1;
        events[i].time = stream[i].first;
        events[i].issuer = stream[i].second;
        events[i].block_id = ids.next();
    }
    fill_deliveries(events, model, nodes.count(), stream_seed(master_seed, "delays"));
    return events;
}

}  // namespace tipsim
