#include "tipsim/report.hpp"

#include <algorithm>
#include <cmath>

#include "tipsim/stats.hpp"

namespace tipsim {

namespace {

// Sliding-window tail check within one run: empirical P(X_{m+n} >= M)
// against the mean of the conditional bound over the same m. Domination is
// an expectation statement, so both sides average over m.
nlohmann::json tail_checks(const HajekConstants& hc,
                           const std::vector<std::uint32_t>& series, std::size_t burn_in_events) {
    nlohmann::json checks = nlohmann::json::array();
    const double k = static_cast<double>(hc.big_k);
    const std::vector<double> m_grid = {k + 2.0,  k + 5.0,  k + 10.0, k + 20.0,
                                        k + 50.0, k + 100.0, k + 200.0};
    for (const std::size_t lag : {std::size_t{100}, std::size_t{1000}}) {
        if (series.size() <= burn_in_events + lag) {
            continue;
        }
        for (const double m_level : m_grid) {
            std::uint64_t hits = 0;
            double bound_acc = 0.0;
            std::uint64_t count = 0;
            for (std::size_t m = burn_in_events; m + lag < series.size(); ++m) {
                hits += static_cast<double>(series[m + lag]) >= m_level ? 1 : 0;
                bound_acc += tail_bound(hc, static_cast<double>(series[m]), m_level,
                                        static_cast<double>(lag));
                ++count;
            }
            checks.push_back({{"M", m_level},
                              {"n", lag},
                              {"empirical", static_cast<double>(hits) / static_cast<double>(count)},
                              {"bound", bound_acc / static_cast<double>(count)}});
        }
    }
    return checks;
}

}  // namespace

nlohmann::json build_analysis_report(const AnalysisInputs& inputs) {
    nlohmann::json report;

    const LemmaReport lemma = lemma_bounds_check(inputs.trace, inputs.k_refs);
    report["lemma_violations"] = lemma.violations;

    const ErgodicReport ergodic = ergodic_means(inputs.trace, inputs.burn_in);
    report["ergodic"] = {{"means", {{"observer", ergodic.observer_mean},
                                    {"local", ergodic.local_means}}},
                         {"diagnostic", ergodic.observer_diagnostic},
                         {"max_diagnostic", ergodic.max_diagnostic},
                         {"burn_in", inputs.burn_in}};

    report["drift"] = nullptr;
    report["hajek"] = nullptr;
    report["tail_checks"] = nlohmann::json::array();
    report["occupation"] = nullptr;

    if (inputs.observer_series && inputs.observer_series->size() >= 2) {
        const std::vector<std::uint32_t>& series = *inputs.observer_series;
        const DriftEstimate drift = empirical_drift(series, inputs.drift_bin_width);
        nlohmann::json bins = nlohmann::json::array();
        for (const DriftBin& b : drift.bins) {
            bins.push_back({{"lower_edge", b.lower_edge},
                            {"mean", b.mean},
                            {"count", b.count},
                            {"std_error", b.std_error}});
        }
        report["drift"] = {{"bins", bins},
                           {"K_hat", drift.k_hat ? nlohmann::json(*drift.k_hat) : nullptr},
                           {"eps_hat", drift.eps_hat ? nlohmann::json(*drift.eps_hat) : nullptr},
                           {"bin_width", drift.bin_width}};

        if (drift.k_hat && drift.eps_hat && *drift.eps_hat > 0.0) {
            const HajekConstants hc =
                hajek_constants(inputs.theta, *drift.eps_hat,
                                static_cast<int>(*drift.k_hat), inputs.k_refs);
            report["hajek"] = {{"theta", hc.theta}, {"epsilon", hc.epsilon},
                               {"K", hc.big_k},     {"z_bound", hc.z_bound},
                               {"c", hc.c},         {"D", hc.d},
                               {"eta", hc.eta},     {"rho", hc.rho}};

            // Burn-in in events: scale by the fraction of trace time burned.
            const double horizon = inputs.trace.empty() ? 0.0 : inputs.trace.back().time;
            const std::size_t burn_in_events =
                horizon > 0.0 ? static_cast<std::size_t>(
                                    static_cast<double>(series.size()) *
                                    std::min(1.0, inputs.burn_in / horizon))
                              : 0;
            report["tail_checks"] = tail_checks(hc, series, burn_in_events);

            const double m_level = 2.0 * *drift.k_hat;
            const OccupationResult occ = occupation_fraction(series, m_level, hc);
            report["occupation"] = {{"M", m_level},
                                    {"fraction", occ.fraction},
                                    {"p0", occ.p0},
                                    {"vacuous", occ.p0 <= 0.0}};
        }
    }

    report["regeneration"] = nullptr;
    if (inputs.sync_probes) {
        const RegenerationReport regen = detect_sync_events(*inputs.sync_probes);
        nlohmann::json segment_stats = nullptr;
        if (!regen.segment_lengths.empty()) {
            std::vector<double> lengths(regen.segment_lengths.begin(),
                                        regen.segment_lengths.end());
            segment_stats = {{"count", lengths.size()},
                             {"mean", mean(lengths)},
                             {"max", *std::max_element(lengths.begin(), lengths.end())}};
            // Exponential tail: linear fit of log survival over lengths
            // beyond the dominant length-1 mass.
            const std::uint64_t max_len = static_cast<std::uint64_t>(
                *std::max_element(regen.segment_lengths.begin(), regen.segment_lengths.end()));
            std::vector<double> xs, ys;
            for (std::uint64_t ell = 1; ell < max_len; ++ell) {
                std::uint64_t above = 0;
                for (std::uint64_t len : regen.segment_lengths) {
                    above += len > ell ? 1 : 0;
                }
                if (above == 0) {
                    break;
                }
                xs.push_back(static_cast<double>(ell));
                ys.push_back(std::log(static_cast<double>(above) /
                                      static_cast<double>(regen.segment_lengths.size())));
            }
            if (xs.size() >= 2) {
                const LinearFit fit = linear_fit(xs, ys);
                segment_stats["log_survival_slope"] = fit.slope;
                segment_stats["log_survival_r2"] = fit.r_squared;
            }
        }
        report["regeneration"] = {{"count", regen.sync_times.size()},
                                  {"segment_stats", segment_stats}};
    }

    return report;
}

}  // namespace tipsim
