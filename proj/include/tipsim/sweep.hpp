#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "tipsim/config.hpp"

namespace tipsim {

// Post-burn-in means of one run.
struct RunStats {
    double x_observer = 0.0;
    double x_common = 0.0;
    double x_local_min = 0.0;   // mean over samples of min_i X^(i)
    double x_local_max = 0.0;
    double x_local_first = 0.0; // node 0
    double x_local_last = 0.0;  // node N-1
};
RunStats summarize_run(const std::vector<TraceSample>& trace, double burn_in_time);

struct SweepCell {
    std::string axis_value;
    int value_index = 0;
    int replication = 0;
    std::uint64_t seed = 0;
    bool ok = false;
    std::string error;
    RunStats stats;
};

struct SweepAggregate {
    std::string axis_value;
    int replications_ok = 0;
    int replications_failed = 0;
    RunStats mean;
    RunStats sd;  // between-replication, n-1 denominator
};

struct SweepResult {
    std::string axis;
    std::vector<SweepCell> cells;           // deterministic order: value-major
    std::vector<SweepAggregate> aggregates; // one per axis value, input order
};

// Axis values: plain numbers for zipf_s / total_rate / k_refs, or delay
// tokens direct:MIN:MAX, gossip:MIN:MAX, constant:C (gossip reuses the base
// topology block). Throws ConfigError on malformed values.
RunConfig apply_axis_value(const RunConfig& base, const std::string& axis,
                           const std::string& value);

// Runs every (value, replication) cell concurrently; cell seeds derive from
// the base seed, value index and replication, so results do not depend on
// worker count or execution order. Cell failures are recorded and the sweep
// continues.
SweepResult run_sweep(const RunConfig& base, const std::string& axis,
                      const std::vector<std::string>& values, int replications);

void write_means_csv(const SweepResult& sweep, std::ostream& os);
void write_cells_csv(const SweepResult& sweep, std::ostream& os);

}  // namespace tipsim
