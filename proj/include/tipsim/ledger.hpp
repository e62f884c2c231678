#pragma once

#include <cstdint>
#include <queue>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "tipsim/block_id.hpp"
#include "tipsim/process.hpp"
#include "tipsim/rng.hpp"

namespace tipsim {

struct Block {
    BlockId id;
    int issuer = -1;                 // -1 for genesis
    double issue_time = 0.0;
    std::vector<BlockId> refs;       // k draws, duplicates kept as drawn
};

// Set of tip ids with O(1) membership and uniform index sampling
// (swap-erase vector plus position map).
class TipPool {
  public:
    bool contains(const BlockId& id) const { return index_.count(id) != 0; }
    std::size_t size() const { return items_.size(); }
    const BlockId& at(std::size_t i) const { return items_[i]; }

    bool insert(const BlockId& id);
    bool erase(const BlockId& id);

    std::vector<BlockId> sorted_ids() const;

  private:
    std::vector<BlockId> items_;
    std::unordered_map<BlockId, std::size_t, BlockIdHash> index_;
};

// k uniform draws with replacement. An empty pool is fatal; it cannot occur
// in the protocol because a node always sees its own latest block or the
// genesis.
std::vector<BlockId> select_tips(const TipPool& pool, int k, RngStream& rng);

// Time-indexed snapshot: per-node pool sizes, observer and common pool
// sizes, and the count of blocks issued within the synchrony bound before
// the snapshot.
struct TraceSample {
    double time = 0.0;
    std::uint64_t n = 0;
    std::uint32_t x_observer = 0;
    std::uint32_t x_common = 0;
    std::uint32_t l_n = 0;
    std::vector<std::uint32_t> x_local;
};

// Incremental DAG state: every block, one delayed view per node, the
// zero-delay observer view, and the queue of in-flight deliveries.
class LedgerState {
  public:
    explicit LedgerState(int n_nodes);

    // Applies one issuance: drains deliveries due at or before the event
    // time, lets the issuer pick k references from its current pool,
    // records the block, updates the issuer's view and the observer view
    // immediately, and enqueues deliveries to everyone else. Events must
    // arrive in nondecreasing time order.
    void step(const MarkedEvent& event, int k_refs, RngStream& tip_rng);

    // Delivers every pending block with arrival <= t, in (arrival, seq,
    // node) order. A delivered block joins the node's pool only if no block
    // already visible there references it.
    void apply_deliveries_up_to(double t);

    TraceSample sample_trace(double at_time, double delta_bound) const;

    std::vector<BlockId> common_pool() const;
    std::uint32_t common_pool_size() const;

    int node_count() const { return static_cast<int>(local_pools_.size()); }
    const TipPool& local_pool(int i) const { return local_pools_[static_cast<std::size_t>(i)]; }
    const TipPool& observer_pool() const { return observer_pool_; }
    const std::vector<Block>& blocks() const { return blocks_; }  // [0] is genesis
    std::uint64_t issued_count() const { return issued_count_; }
    double clock() const { return clock_; }

  private:
    struct Delivery {
        double arrival;
        std::uint64_t seq;
        int node;
        friend bool operator>(const Delivery& a, const Delivery& b) {
            if (a.arrival != b.arrival) return a.arrival > b.arrival;
            if (a.seq != b.seq) return a.seq > b.seq;
            return a.node > b.node;
        }
    };

    void deliver(std::uint64_t seq, int node);

    std::vector<Block> blocks_;        // indexed by seq, genesis at 0
    std::vector<TipPool> local_pools_;
    std::vector<std::unordered_set<BlockId, BlockIdHash>> seen_refs_;  // per-node visible references
    TipPool observer_pool_;
    std::priority_queue<Delivery, std::vector<Delivery>, std::greater<>> pending_;
    std::vector<double> issue_times_;  // issued blocks only, ascending
    double clock_ = 0.0;
    std::uint64_t issued_count_ = 0;
};

}  // namespace tipsim
