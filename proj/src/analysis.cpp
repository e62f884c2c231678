#include "tipsim/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <stdexcept>

#include "tipsim/stats.hpp"

namespace tipsim {

HajekConstants hajek_constants(double theta, double epsilon, int big_k, int z_bound) {
    if (theta <= 0.0 || epsilon <= 0.0) {
        throw std::invalid_argument("hajek_constants: theta and epsilon must be positive");
    }
    if (z_bound < 1) {
        throw std::invalid_argument("hajek_constants: z_bound must be >= 1");
    }
    HajekConstants hc;
    hc.theta = theta;
    hc.epsilon = epsilon;
    hc.big_k = big_k;
    hc.z_bound = z_bound;
    const double tz = theta * static_cast<double>(z_bound);
    // expm1 keeps the difference accurate for small theta, where the series
    // tends to z^2/2.
    hc.c = (std::expm1(tz) - tz) / (theta * theta);
    hc.d = std::exp(tz);
    hc.eta = 0.5 * std::min(theta, epsilon / (2.0 * hc.c));
    hc.rho = 1.0 - 0.5 * hc.eta * epsilon;
    if (!(hc.eta > 0.0 && hc.eta < std::min(theta, epsilon / (2.0 * hc.c)))) {
        throw std::logic_error("hajek_constants: eta outside its open interval");
    }
    if (!(hc.rho > 0.0 && hc.rho < 1.0)) {
        throw std::logic_error("hajek_constants: rho outside (0,1)");
    }
    return hc;
}

double hajek_series_c(double theta, int z_bound, int terms) {
    // sum_{j=2}^{terms+1} theta^(j-2) z^j / j!, built term by term.
    const double z = static_cast<double>(z_bound);
    double sum = 0.0;
    double term = z * z / 2.0;  // j = 2
    sum += term;
    for (int j = 3; j <= terms + 1; ++j) {
        term *= theta * z / static_cast<double>(j);
        sum += term;
    }
    return sum;
}

namespace {

double clamp01(double x) { return std::min(1.0, std::max(0.0, x)); }

}  // namespace

double tail_bound(const HajekConstants& hc, double x_m, double m_level, double n) {
    const double rho_n = std::pow(hc.rho, n);
    const double transient = rho_n * std::exp(hc.eta * (x_m - m_level));
    const double steady = (1.0 - rho_n) / (1.0 - hc.rho) * hc.d *
                          std::exp(hc.eta * (static_cast<double>(hc.big_k) - m_level));
    return clamp01(transient + steady);
}

double hitting_time_tail(const HajekConstants& hc, double x_m, double n) {
    return clamp01(std::exp(hc.eta * (x_m - static_cast<double>(hc.big_k))) * std::pow(hc.rho, n));
}

double occupation_p0(const HajekConstants& hc, double m_level) {
    return 1.0 - hc.d * std::exp(hc.eta * (static_cast<double>(hc.big_k) - m_level)) /
                     (1.0 - hc.rho);
}

OccupationResult occupation_fraction(const std::vector<std::uint32_t>& observer_series,
                                     double m_level, const HajekConstants& hc) {
    if (observer_series.empty()) {
        throw std::invalid_argument("occupation_fraction: empty series");
    }
    std::uint64_t below = 0;
    for (std::uint32_t x : observer_series) {
        if (static_cast<double>(x) < m_level) {
            ++below;
        }
    }
    OccupationResult res;
    res.fraction = static_cast<double>(below) / static_cast<double>(observer_series.size());
    res.p0 = occupation_p0(hc, m_level);
    return res;
}

DriftEstimate empirical_drift(const std::vector<std::uint32_t>& observer_series, int bin_width,
                              std::uint64_t min_bin_count) {
    return empirical_drift_pooled({observer_series}, bin_width, min_bin_count);
}

DriftEstimate empirical_drift_pooled(const std::vector<std::vector<std::uint32_t>>& runs,
                                     int bin_width, std::uint64_t min_bin_count) {
    if (bin_width < 1) {
        throw std::invalid_argument("empirical_drift: bin_width must be >= 1");
    }
    struct Acc {
        std::uint64_t count = 0;
        double sum = 0.0;
        double sum_sq = 0.0;
    };
    std::map<std::uint64_t, Acc> by_bin;
    for (const auto& series : runs) {
        for (std::size_t i = 0; i + 1 < series.size(); ++i) {
            const std::uint64_t bin = series[i] / static_cast<std::uint64_t>(bin_width);
            const double inc =
                static_cast<double>(series[i + 1]) - static_cast<double>(series[i]);
            Acc& acc = by_bin[bin];
            ++acc.count;
            acc.sum += inc;
            acc.sum_sq += inc * inc;
        }
    }

    DriftEstimate est;
    est.bin_width = bin_width;
    est.min_bin_count = min_bin_count;
    for (const auto& [bin, acc] : by_bin) {
        DriftBin b;
        b.lower_edge = static_cast<double>(bin * static_cast<std::uint64_t>(bin_width));
        b.count = acc.count;
        b.mean = acc.sum / static_cast<double>(acc.count);
        if (acc.count > 1) {
            const double var =
                (acc.sum_sq - acc.sum * acc.sum / static_cast<double>(acc.count)) /
                static_cast<double>(acc.count - 1);
            b.std_error = std::sqrt(std::max(var, 0.0) / static_cast<double>(acc.count));
        }
        est.bins.push_back(b);
    }

    // K-hat: smallest lower edge such that every informative bin at or
    // above it has mean + 2 se < 0.
    for (std::size_t i = 0; i < est.bins.size(); ++i) {
        bool all_negative = true;
        bool any = false;
        double eps = std::numeric_limits<double>::infinity();
        for (std::size_t j = i; j < est.bins.size(); ++j) {
            const DriftBin& b = est.bins[j];
            if (b.count < min_bin_count) {
                continue;
            }
            any = true;
            if (!(b.mean + 2.0 * b.std_error < 0.0)) {
                all_negative = false;
                break;
            }
            eps = std::min(eps, -b.mean - 2.0 * b.std_error);
        }
        if (any && all_negative) {
            est.k_hat = est.bins[i].lower_edge;
            est.eps_hat = std::max(eps, 0.0);
            break;
        }
    }
    return est;
}

MomentEstimate moment_estimate(const std::vector<std::uint32_t>& observer_series, double r,
                               std::size_t num_windows, std::size_t burn_in_events) {
    if (observer_series.size() <= burn_in_events) {
        throw std::invalid_argument("moment_estimate: series shorter than burn-in");
    }
    if (num_windows < 2) {
        throw std::invalid_argument("moment_estimate: need at least two windows");
    }
    MomentEstimate est;
    est.r = r;
    const std::size_t n = observer_series.size() - burn_in_events;
    const std::size_t window = std::max<std::size_t>(1, n / num_windows);
    std::vector<double> xs, idx;
    double total = 0.0;
    std::uint64_t total_count = 0;
    for (std::size_t w = 0; w < num_windows; ++w) {
        const std::size_t begin = burn_in_events + w * window;
        const std::size_t end = w + 1 == num_windows ? observer_series.size() : begin + window;
        if (begin >= end) {
            break;
        }
        double acc = 0.0;
        for (std::size_t i = begin; i < end; ++i) {
            acc += std::pow(static_cast<double>(observer_series[i]), r);
        }
        total += acc;
        total_count += end - begin;
        est.window_means.push_back(acc / static_cast<double>(end - begin));
        xs.push_back(static_cast<double>(w));
    }
    est.overall = total / static_cast<double>(total_count);
    if (est.window_means.size() >= 3) {
        const LinearFit fit = linear_fit(xs, est.window_means);
        est.slope = fit.slope;
        est.slope_se = fit.slope_se;
    }
    return est;
}

RegenerationReport detect_sync_events(const std::vector<SyncProbe>& probes) {
    RegenerationReport report;
    std::uint64_t max_n = 0;
    for (const SyncProbe& p : probes) {
        max_n = std::max(max_n, p.n);
    }
    std::vector<std::uint32_t> common_by_n(max_n + 1, 0);
    for (const SyncProbe& p : probes) {
        common_by_n[p.n] = p.x_common;
        if (p.sync && p.n > 0) {
            report.sync_times.push_back(p.n);
        }
    }
    // tau_0 = 0: the genesis state is synchronized by construction. Segments
    // are closed on both ends, so consecutive ones share their boundary.
    std::uint64_t prev = 0;
    for (std::uint64_t t : report.sync_times) {
        report.segment_lengths.push_back(t - prev);
        std::uint32_t max_common = 0;
        for (std::uint64_t n = prev; n <= t; ++n) {
            max_common = std::max(max_common, common_by_n[n]);
        }
        report.segment_maxima.push_back(max_common);
        prev = t;
    }
    return report;
}

LemmaReport lemma_bounds_check(const std::vector<TraceSample>& trace, int k) {
    if (trace.empty()) {
        throw std::invalid_argument("lemma_bounds_check: empty trace");
    }
    LemmaReport report;
    report.samples = trace.size();
    for (std::size_t i = 0; i < trace.size(); ++i) {
        const TraceSample& s = trace[i];
        const std::int64_t x_o = s.x_observer;
        const std::int64_t l = s.l_n;
        const std::int64_t x_c = s.x_common;
        std::int64_t max_local = 0;
        for (std::uint32_t x : s.x_local) {
            max_local = std::max<std::int64_t>(max_local, x);
        }
        LemmaViolation v;
        v.sample_index = i;
        v.lower_bound = x_c < x_o - static_cast<std::int64_t>(k + 1) * l;
        v.upper_bound = max_local > x_o + static_cast<std::int64_t>(k) * l;
        if (v.lower_bound || v.upper_bound) {
            ++report.violations;
            if (report.details.size() < 32) {
                report.details.push_back(v);
            }
        }
    }
    return report;
}

namespace {

double split_half_diagnostic(const std::vector<double>& xs) {
    const std::size_t half = xs.size() / 2;
    if (half == 0) {
        return 0.0;
    }
    const std::vector<double> first(xs.begin(), xs.begin() + static_cast<std::ptrdiff_t>(half));
    const std::vector<double> second(xs.begin() + static_cast<std::ptrdiff_t>(half), xs.end());
    const double full = mean(xs);
    if (full == 0.0) {
        return 0.0;
    }
    return std::abs(mean(first) - mean(second)) / full;
}

}  // namespace

ErgodicReport ergodic_means(const std::vector<TraceSample>& trace, double burn_in_time) {
    if (trace.empty()) {
        throw std::invalid_argument("ergodic_means: empty trace");
    }
    const std::size_t n_nodes = trace.front().x_local.size();
    std::vector<double> observer;
    std::vector<std::vector<double>> locals(n_nodes);
    for (const TraceSample& s : trace) {
        if (s.time < burn_in_time) {
            continue;
        }
        observer.push_back(static_cast<double>(s.x_observer));
        for (std::size_t i = 0; i < n_nodes; ++i) {
            locals[i].push_back(static_cast<double>(s.x_local[i]));
        }
    }
    if (observer.empty()) {
        throw std::invalid_argument("ergodic_means: burn-in swallows the whole trace");
    }
    ErgodicReport report;
    report.post_burn_in_samples = observer.size();
    report.observer_mean = mean(observer);
    report.observer_diagnostic = split_half_diagnostic(observer);
    report.max_diagnostic = report.observer_diagnostic;
    report.local_means.reserve(n_nodes);
    for (const auto& series : locals) {
        report.local_means.push_back(mean(series));
        report.max_diagnostic = std::max(report.max_diagnostic, split_half_diagnostic(series));
    }
    return report;
}

}  // namespace tipsim
