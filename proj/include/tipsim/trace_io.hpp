#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "tipsim/ledger.hpp"
#include "tipsim/process.hpp"
#include "tipsim/simulator.hpp"

namespace tipsim {

// Trace CSV: header time,n,x_observer,x_common,l_n,x_local_0..x_local_{N-1},
// doubles in shortest round-trip form. Readers throw std::runtime_error
// naming the offending line.
void write_trace_csv(const std::vector<TraceSample>& trace, std::ostream& os);
std::vector<TraceSample> read_trace_csv(std::istream& is);

// Event log JSONL: one record per event
// {seq, time, issuer, block_id, refs[], deliveries[]} with ids in hex.
struct EventLog {
    std::vector<MarkedEvent> events;
    std::vector<Block> blocks;  // by seq, genesis at 0
};
void write_events_jsonl(const std::vector<MarkedEvent>& events, const std::vector<Block>& blocks,
                        std::ostream& os);
EventLog read_events_jsonl(std::istream& is);

// Per-event observer pool size: header n,x_observer.
void write_observer_csv(const std::vector<std::uint32_t>& series, std::ostream& os);
std::vector<std::uint32_t> read_observer_csv(std::istream& is);

// Per-event sync probes: header n,x_observer,x_common,sync.
void write_sync_csv(const std::vector<SyncProbe>& probes, std::ostream& os);
std::vector<SyncProbe> read_sync_csv(std::istream& is);

}  // namespace tipsim
