#pragma once

#include <cstdint>
#include <vector>

#include "tipsim/block_id.hpp"
#include "tipsim/ledger.hpp"
#include "tipsim/process.hpp"

namespace tipsim {

struct OraclePools {
    std::vector<std::vector<BlockId>> local;  // sorted, one per node
    std::vector<BlockId> observer;            // sorted
    std::vector<BlockId> common;              // sorted
};

// Recomputes every pool directly from the raw event log via the set
// definitions: a node's pool is its visible blocks minus its visibly
// referenced blocks; the observer pool is all issued blocks minus all
// references. Shares nothing with the incremental LedgerState path; this
// is the correctness oracle the engine is checked against.
//
// issued_upto bounds the blocks considered issued (events 1..issued_upto);
// visibility at a node uses deliveries[node] <= at_time. Pass
// issued_upto = number of events with time <= at_time for a plain time
// snapshot, or issued_upto = n with at_time = t_{n+1} for the state just
// before issuance n+1.
OraclePools recompute_pools(const std::vector<MarkedEvent>& events,
                            const std::vector<Block>& blocks, int n_nodes, double at_time,
                            std::uint64_t issued_upto);

}  // namespace tipsim
