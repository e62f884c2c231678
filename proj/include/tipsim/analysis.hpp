#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "tipsim/ledger.hpp"
#include "tipsim/simulator.hpp"

namespace tipsim {

// Constants of the geometric drift machinery. theta is the free exponent
// parameter (the Hajek lambda, renamed to avoid the issuance rate);
// epsilon and big_k come from the measured drift condition; z_bound = k
// dominates the one-step increments.
struct HajekConstants {
    double theta = 0.0;
    double epsilon = 0.0;
    int big_k = 0;
    int z_bound = 0;
    double c = 0.0;    // (e^(theta z) - 1 - theta z) / theta^2
    double d = 0.0;    // e^(theta z)
    double eta = 0.0;  // half of min(theta, epsilon / (2c))
    double rho = 0.0;  // 1 - eta epsilon / 2, in (0,1)
};

HajekConstants hajek_constants(double theta, double epsilon, int big_k, int z_bound);

// Partial sum of the defining series sum_{j>=2} theta^(j-2) z^j / j!,
// the independent route the closed form is checked against.
double hajek_series_c(double theta, int z_bound, int terms);

// P(X_{m+n} >= M | X_m = x_m) <= rho^n e^(eta (x_m - M))
//                              + (1 - rho^n)/(1 - rho) D e^(eta (K - M)),
// clamped to [0, 1].
double tail_bound(const HajekConstants& hc, double x_m, double m_level, double n);

// P(tau_{K,m} > n | X_m = x_m) <= e^(eta (x_m - K)) rho^n, clamped to [0,1].
double hitting_time_tail(const HajekConstants& hc, double x_m, double n);

// p_0(M) = 1 - D e^(eta (K - M)) / (1 - rho); vacuous when <= 0.
double occupation_p0(const HajekConstants& hc, double m_level);

struct OccupationResult {
    double fraction = 0.0;  // empirical (1/n) sum 1{X_j < M}
    double p0 = 0.0;
};
OccupationResult occupation_fraction(const std::vector<std::uint32_t>& observer_series,
                                     double m_level, const HajekConstants& hc);

struct DriftBin {
    double lower_edge = 0.0;
    double mean = 0.0;
    std::uint64_t count = 0;
    double std_error = 0.0;
};

struct DriftEstimate {
    std::vector<DriftBin> bins;         // every nonempty bin, ascending
    std::optional<double> k_hat;        // smallest edge with uniformly negative drift above
    std::optional<double> eps_hat;      // min over those bins of |mean| - 2 se
    int bin_width = 0;
    std::uint64_t min_bin_count = 0;    // bins below this are reported but not scanned
};

// Per-bin mean one-step increment of the observer pool size conditioned on
// the current size. Bins thinner than min_bin_count carry no statistical
// signal and are skipped by the K-hat scan.
DriftEstimate empirical_drift(const std::vector<std::uint32_t>& observer_series, int bin_width,
                              std::uint64_t min_bin_count = 500);

// Same, pooling increments from independent runs (never across run ends).
DriftEstimate empirical_drift_pooled(const std::vector<std::vector<std::uint32_t>>& runs,
                                     int bin_width, std::uint64_t min_bin_count = 500);

struct MomentEstimate {
    double r = 0.0;
    std::vector<double> window_means;  // E[X^r] per contiguous window
    double slope = 0.0;                // trend of window means vs window index
    double slope_se = 0.0;
    double overall = 0.0;
};
MomentEstimate moment_estimate(const std::vector<std::uint32_t>& observer_series, double r,
                               std::size_t num_windows, std::size_t burn_in_events = 0);

struct RegenerationReport {
    std::vector<std::uint64_t> sync_times;       // event indices n with sync_n = 1
    std::vector<std::uint64_t> segment_lengths;  // tau_{k+1} - tau_k, tau_0 = 0
    std::vector<std::uint32_t> segment_maxima;   // max X^(c) over each closed segment
};
RegenerationReport detect_sync_events(const std::vector<SyncProbe>& probes);

struct LemmaViolation {
    std::size_t sample_index = 0;
    bool lower_bound = false;  // common-pool sandwich side
    bool upper_bound = false;  // local-pool side
};
struct LemmaReport {
    std::uint64_t samples = 0;
    std::uint64_t violations = 0;
    std::vector<LemmaViolation> details;  // capped
};

// Checks X^(c) >= X^(o) - (k+1) L and max_i X^(i) <= X^(o) + k L on every
// sample. Zero on any valid engine trace; this is the load-bearing link
// between the sandwich bounds and the implementation.
LemmaReport lemma_bounds_check(const std::vector<TraceSample>& trace, int k);

struct ErgodicReport {
    double observer_mean = 0.0;
    std::vector<double> local_means;
    double observer_diagnostic = 0.0;   // |first-half mean - second-half mean| / mean
    double max_diagnostic = 0.0;        // worst diagnostic over observer + locals
    std::size_t post_burn_in_samples = 0;
};
ErgodicReport ergodic_means(const std::vector<TraceSample>& trace, double burn_in_time);

}  // namespace tipsim
