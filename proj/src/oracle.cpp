#include "tipsim/oracle.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace tipsim {

OraclePools recompute_pools(const std::vector<MarkedEvent>& events,
                            const std::vector<Block>& blocks, int n_nodes, double at_time,
                            std::uint64_t issued_upto) {
    if (issued_upto >= blocks.size()) {
        throw std::invalid_argument("recompute_pools: issued_upto beyond block log");
    }
    OraclePools out;
    out.local.resize(static_cast<std::size_t>(n_nodes));

    for (int i = 0; i < n_nodes; ++i) {
        std::set<BlockId> visible{BlockId::genesis()};
        std::set<BlockId> referenced;
        for (const MarkedEvent& e : events) {
            if (e.seq > issued_upto) {
                break;
            }
            if (e.deliveries[static_cast<std::size_t>(i)] <= at_time) {
                visible.insert(e.block_id);
                for (const BlockId& r : blocks[static_cast<std::size_t>(e.seq)].refs) {
                    referenced.insert(r);
                }
            }
        }
        std::vector<BlockId>& pool = out.local[static_cast<std::size_t>(i)];
        std::set_difference(visible.begin(), visible.end(), referenced.begin(), referenced.end(),
                            std::back_inserter(pool));
    }

    std::set<BlockId> all_blocks{BlockId::genesis()};
    std::set<BlockId> all_refs;
    for (const MarkedEvent& e : events) {
        if (e.seq > issued_upto) {
            break;
        }
        all_blocks.insert(e.block_id);
        for (const BlockId& r : blocks[static_cast<std::size_t>(e.seq)].refs) {
            all_refs.insert(r);
        }
    }
    std::set_difference(all_blocks.begin(), all_blocks.end(), all_refs.begin(), all_refs.end(),
                        std::back_inserter(out.observer));

    std::vector<BlockId> common = out.local.front();
    for (std::size_t i = 1; i < out.local.size(); ++i) {
        std::vector<BlockId> next;
        std::set_intersection(common.begin(), common.end(), out.local[i].begin(),
                              out.local[i].end(), std::back_inserter(next));
        common.swap(next);
    }
    out.common = std::move(common);
    return out;
}

}  // namespace tipsim
