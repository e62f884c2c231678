#pragma once

#include <optional>
#include <vector>

#include "json.hpp"
#include "tipsim/analysis.hpp"

namespace tipsim {

struct AnalysisInputs {
    std::vector<TraceSample> trace;
    int k_refs = 2;
    double burn_in = 10.0;
    std::optional<std::vector<std::uint32_t>> observer_series;
    std::optional<std::vector<SyncProbe>> sync_probes;
    double theta = 0.1;     // Hajek exponent parameter
    int drift_bin_width = 5;
};

// Full analysis document: lemma violations, drift estimate, Hajek constants
// derived from it, tail-bound reference checks, occupation fraction,
// regeneration statistics and ergodic means. Sections without inputs are
// null.
nlohmann::json build_analysis_report(const AnalysisInputs& inputs);

}  // namespace tipsim
