#pragma once

#include <cstdint>
#include <unordered_set>
#include <utility>
#include <vector>

#include "tipsim/block_id.hpp"
#include "tipsim/delay.hpp"
#include "tipsim/rates.hpp"
#include "tipsim/rng.hpp"

namespace tipsim {

// One point (t_n, mark) of the issuance process. References are NOT part of
// the mark: they depend on the issuer's local view and are chosen by the
// ledger engine when the event is applied.
struct MarkedEvent {
    std::uint64_t seq = 0;  // 1-based event index
    double time = 0.0;
    BlockId block_id;
    int issuer = 0;
    std::vector<double> deliveries;  // absolute arrival time per node
};

// Merged issuance stream on [0, horizon): one Poisson clock at the total
// rate with i.i.d. categorical issuer marks, equivalent to superposing the
// per-node Poisson processes.
std::vector<std::pair<double, int>> sample_issuance_stream(const NodeSet& nodes, double horizon,
                                                           RngStream& time_rng,
                                                           RngStream& issuer_rng);

// Draws unique 128-bit ids; a repeated draw means the stream is being
// misused and is fatal.
class BlockIdGenerator {
  public:
    explicit BlockIdGenerator(std::uint64_t seed) : rng_(seed) {}
    BlockId next();

  private:
    RngStream rng_;
    std::unordered_set<BlockId, BlockIdHash> used_{{BlockId::genesis()}};
};

// Fills event.deliveries for every event. Each block uses its own RNG
// substream keyed by seq, so the result is independent of both iteration
// order and thread count. The parallel version is the production path; the
// serial one is the reference the tests compare against.
void fill_deliveries(std::vector<MarkedEvent>& events, const DelayModel& model, int n_nodes,
                     std::uint64_t delay_stream_seed);
void fill_deliveries_serial(std::vector<MarkedEvent>& events, const DelayModel& model, int n_nodes,
                            std::uint64_t delay_stream_seed);

// Full marked stream for one run: times, issuers, ids, delivery vectors.
std::vector<MarkedEvent> generate_event_stream(const NodeSet& nodes, double horizon,
                                               const DelayModel& model, std::uint64_t master_seed);

}  // namespace tipsim
