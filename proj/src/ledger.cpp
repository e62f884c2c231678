#include "tipsim/ledger.hpp"

#include <algorithm>
#include <stdexcept>

namespace tipsim {

bool TipPool::insert(const BlockId& id) {
    if (index_.count(id) != 0) {
        return false;
    }
    index_.emplace(id, items_.size());
    items_.push_back(id);
    return true;
}

bool TipPool::erase(const BlockId& id) {
    auto it = index_.find(id);
    if (it == index_.end()) {
        return false;
    }
    const std::size_t pos = it->second;
    const BlockId last = items_.back();
    items_[pos] = last;
    items_.pop_back();
    index_.erase(it);
    if (!(last == id)) {
        index_[last] = pos;
    }
    return true;
}

std::vector<BlockId> TipPool::sorted_ids() const {
    std::vector<BlockId> out = items_;
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<BlockId> select_tips(const TipPool& pool, int k, RngStream& rng) {
    if (pool.size() == 0) {
        throw std::logic_error("select_tips: empty tip pool");
    }
    std::vector<BlockId> refs;
    refs.reserve(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i) {
        refs.push_back(pool.at(rng.uniform_index(pool.size())));
    }
    return refs;
}

namespace {

// refs as a set; k is small so a linear scan beats hashing.
template <typename Fn>
void for_each_unique_ref(const std::vector<BlockId>& refs, Fn&& fn) {
    for (std::size_t i = 0; i < refs.size(); ++i) {
        bool seen = false;
        for (std::size_t j = 0; j < i; ++j) {
            if (refs[j] == refs[i]) {
                seen = true;
                break;
            }
        }
        if (!seen) {
            fn(refs[i]);
        }
    }
}

}  // namespace

LedgerState::LedgerState(int n_nodes)
    : local_pools_(static_cast<std::size_t>(n_nodes)),
      seen_refs_(static_cast<std::size_t>(n_nodes)) {
    if (n_nodes < 1) {
        throw std::invalid_argument("LedgerState: need at least one node");
    }
    Block genesis;
    genesis.id = BlockId::genesis();
    blocks_.push_back(genesis);
    observer_pool_.insert(genesis.id);
    for (TipPool& pool : local_pools_) {
        pool.insert(genesis.id);
    }
}

void LedgerState::deliver(std::uint64_t seq, int node) {
    const Block& block = blocks_[static_cast<std::size_t>(seq)];
    auto& refs_seen = seen_refs_[static_cast<std::size_t>(node)];
    TipPool& pool = local_pools_[static_cast<std::size_t>(node)];
    for_each_unique_ref(block.refs, [&](const BlockId& r) {
        refs_seen.insert(r);
        pool.erase(r);
    });
    if (refs_seen.count(block.id) == 0) {
        pool.insert(block.id);
    }
}

void LedgerState::apply_deliveries_up_to(double t) {
    while (!pending_.empty() && pending_.top().arrival <= t) {
        const Delivery d = pending_.top();
        pending_.pop();
        deliver(d.seq, d.node);
    }
}

void LedgerState::step(const MarkedEvent& event, int k_refs, RngStream& tip_rng) {
    if (event.time < clock_) {
        throw std::logic_error("LedgerState::step: out-of-order event");
    }
    if (event.seq != issued_count_ + 1) {
        throw std::logic_error("LedgerState::step: unexpected event seq");
    }
    apply_deliveries_up_to(event.time);

    const int issuer = event.issuer;
    TipPool& pool = local_pools_[static_cast<std::size_t>(issuer)];
    Block block;
    block.id = event.block_id;
    block.issuer = issuer;
    block.issue_time = event.time;
    block.refs = select_tips(pool, k_refs, tip_rng);

    auto& refs_seen = seen_refs_[static_cast<std::size_t>(issuer)];
    for_each_unique_ref(block.refs, [&](const BlockId& r) {
        refs_seen.insert(r);
        pool.erase(r);
        observer_pool_.erase(r);
    });
    pool.insert(block.id);
    observer_pool_.insert(block.id);

    for (int j = 0; j < node_count(); ++j) {
        if (j != issuer) {
            pending_.push(Delivery{event.deliveries[static_cast<std::size_t>(j)], event.seq, j});
        }
    }

    blocks_.push_back(std::move(block));
    issue_times_.push_back(event.time);
    ++issued_count_;
    clock_ = event.time;
}

std::vector<BlockId> LedgerState::common_pool() const {
    std::size_t smallest = 0;
    for (std::size_t i = 1; i < local_pools_.size(); ++i) {
        if (local_pools_[i].size() < local_pools_[smallest].size()) {
            smallest = i;
        }
    }
    std::vector<BlockId> common;
    const TipPool& base = local_pools_[smallest];
    for (std::size_t i = 0; i < base.size(); ++i) {
        const BlockId& id = base.at(i);
        bool everywhere = true;
        for (std::size_t j = 0; j < local_pools_.size(); ++j) {
            if (j != smallest && !local_pools_[j].contains(id)) {
                everywhere = false;
                break;
            }
        }
        if (everywhere) {
            common.push_back(id);
        }
    }
    std::sort(common.begin(), common.end());
    return common;
}

std::uint32_t LedgerState::common_pool_size() const {
    return static_cast<std::uint32_t>(common_pool().size());
}

TraceSample LedgerState::sample_trace(double at_time, double delta_bound) const {
    TraceSample s;
    s.time = at_time;
    s.n = issued_count_;
    s.x_observer = static_cast<std::uint32_t>(observer_pool_.size());
    s.x_common = common_pool_size();
    auto lo = std::upper_bound(issue_times_.begin(), issue_times_.end(), at_time - delta_bound);
    auto hi = std::upper_bound(issue_times_.begin(), issue_times_.end(), at_time);
    s.l_n = static_cast<std::uint32_t>(hi - lo);
    s.x_local.reserve(local_pools_.size());
    for (const TipPool& pool : local_pools_) {
        s.x_local.push_back(static_cast<std::uint32_t>(pool.size()));
    }
    return s;
}

}  // namespace tipsim
