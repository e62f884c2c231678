#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>

namespace tipsim {

// 128-bit block identifier drawn from the PRNG. Exact set membership with
// no floating-point equality anywhere; ids carry no ordering semantics in
// the protocol, the comparison operators exist for canonical snapshots.
struct BlockId {
    std::uint64_t hi = 0;
    std::uint64_t lo = 0;

    friend bool operator==(const BlockId&, const BlockId&) = default;
    friend auto operator<=>(const BlockId&, const BlockId&) = default;

    static constexpr BlockId genesis() { return BlockId{0, 0}; }
    bool is_genesis() const { return hi == 0 && lo == 0; }

    std::string to_hex() const;
    static std::optional<BlockId> from_hex(std::string_view text);
};

struct BlockIdHash {
    std::size_t operator()(const BlockId& id) const {
        // hi and lo are already uniform PRNG words.
        return static_cast<std::size_t>(id.hi ^ (id.lo * 0x9e3779b97f4a7c15ULL));
    }
};

}  // namespace tipsim
