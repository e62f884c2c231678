#include "doctest.h"

#include <cmath>
#include <vector>

#include "tipsim/analysis.hpp"
#include "tipsim/rng.hpp"
#include "tipsim/simulator.hpp"
#include "tipsim/stats.hpp"

using namespace tipsim;

namespace {

std::vector<TraceSample> constant_trace(std::size_t samples, int n_nodes, std::uint32_t value) {
    std::vector<TraceSample> trace(samples);
    for (std::size_t i = 0; i < samples; ++i) {
        trace[i].time = static_cast<double>(i) * 0.05;
        trace[i].n = i;
        trace[i].x_observer = value;
        trace[i].x_common = value;
        trace[i].l_n = 0;
        trace[i].x_local.assign(static_cast<std::size_t>(n_nodes), value);
    }
    return trace;
}

}  // namespace

TEST_CASE("hajek constants: closed form against the frozen example") {
    const HajekConstants hc = hajek_constants(0.1, 0.5, 10, 8);
    // Independent arithmetic: c = (e^0.8 - 1.8) / 0.01.
    const double c_expected = (std::exp(0.8) - 1.8) / 0.01;
    CHECK(hc.c == doctest::Approx(c_expected).epsilon(1e-12));
    CHECK(hc.c == doctest::Approx(42.5540928492).epsilon(1e-9));
    CHECK(hc.d == doctest::Approx(std::exp(0.8)).epsilon(1e-12));
    const double eta_expected = 0.5 * std::min(0.1, 0.5 / (2.0 * c_expected));
    CHECK(hc.eta == doctest::Approx(eta_expected).epsilon(1e-12));
    CHECK(hc.eta == doctest::Approx(0.00293738).epsilon(1e-4));
    CHECK(hc.rho == doctest::Approx(1.0 - 0.5 * eta_expected * 0.5).epsilon(1e-12));
    CHECK(hc.rho == doctest::Approx(0.9992657).epsilon(1e-6));
}

TEST_CASE("hajek closed form equals the 40-term series on the grid") {
    for (double theta : {0.01, 0.1, 0.5}) {
        for (int z : {2, 8}) {
            const HajekConstants hc = hajek_constants(theta, 1.0, 5, z);
            const double series = hajek_series_c(theta, z, 40);
            CHECK(std::abs(hc.c - series) <= 1e-9 * series);
        }
    }
}

TEST_CASE("hajek c tends to z^2/2 as theta vanishes") {
    const HajekConstants hc = hajek_constants(1e-9, 1.0, 5, 8);
    CHECK(hc.c == doctest::Approx(32.0).epsilon(1e-6));
}

TEST_CASE("eta and rho satisfy their strict constraints") {
    for (double theta : {0.01, 0.1, 0.5, 2.0}) {
        for (double eps : {0.05, 0.5, 3.0}) {
            const HajekConstants hc = hajek_constants(theta, eps, 20, 8);
            CHECK(hc.eta > 0.0);
            CHECK(hc.eta < theta);
            CHECK(hc.eta < eps / (2.0 * hc.c));
            CHECK(hc.rho > 0.0);
            CHECK(hc.rho < 1.0);
        }
    }
}

TEST_CASE("tail bound clamps and decays") {
    const HajekConstants hc = hajek_constants(0.1, 0.5, 10, 8);
    CHECK(tail_bound(hc, 15.0, 10.0, 0.0) == 1.0);  // n = 0, M <= x_m
    double prev = 1.0;
    for (double m_level = 20.0; m_level <= 5000.0; m_level += 20.0) {
        const double b = tail_bound(hc, 15.0, m_level, 100.0);
        CHECK(b <= prev + 1e-15);  // nonincreasing in M
        prev = b;
    }
    CHECK(tail_bound(hc, 15.0, 1e5, 100.0) < 1e-12);
}

TEST_CASE("hitting-time tail clamps and decays in n") {
    const HajekConstants hc = hajek_constants(0.1, 0.5, 10, 8);
    CHECK(hitting_time_tail(hc, 30.0, 0.0) == 1.0);  // n = 0, x_m > K
    double prev = 1.0;
    for (double n = 0.0; n <= 1e5; n += 1000.0) {
        const double b = hitting_time_tail(hc, 30.0, n);
        CHECK(b <= prev + 1e-15);
        prev = b;
    }
    CHECK(hitting_time_tail(hc, 5.0, 100.0) < 1.0);  // x_m below K decays immediately
}

TEST_CASE("occupation bound: trivial series and monotone p0") {
    const HajekConstants hc = hajek_constants(0.1, 0.5, 10, 8);
    const std::vector<std::uint32_t> ones(1000, 1);
    const OccupationResult res = occupation_fraction(ones, 2.0, hc);
    CHECK(res.fraction == 1.0);

    double prev = -1e18;
    for (double m_level = 10.0; m_level <= 1e4; m_level *= 1.5) {
        const double p0 = occupation_p0(hc, m_level);
        CHECK(p0 >= prev);
        prev = p0;
    }
    // Far below K the bound is vacuous.
    CHECK(occupation_p0(hc, 1.0) < 0.0);
    CHECK(occupation_p0(hc, 1e6) <= 1.0);
}

TEST_CASE("empirical drift on a constant series finds no threshold") {
    const std::vector<std::uint32_t> series(5000, 42);
    const DriftEstimate est = empirical_drift(series, 5);
    REQUIRE(est.bins.size() == 1);
    CHECK(est.bins[0].mean == 0.0);
    CHECK(!est.k_hat.has_value());
    std::uint64_t total = 0;
    for (const DriftBin& b : est.bins) {
        total += b.count;
    }
    CHECK(total == series.size() - 1);
}

TEST_CASE("empirical drift recovers a synthetic walk with known drift") {
    // +-1 walk: drift +0.3 below 50, -0.3 from 50 up, aligned with the bin
    // grid so no bin mixes the two regimes.
    RngStream rng(2718);
    std::vector<std::uint32_t> series;
    series.reserve(100000);
    std::uint32_t x = 50;
    for (int i = 0; i < 100000; ++i) {
        series.push_back(x);
        const double p_up = x >= 50 ? 0.35 : 0.65;
        if (rng.uniform01() < p_up) {
            ++x;
        } else if (x > 0) {
            --x;
        }
    }
    const DriftEstimate est = empirical_drift(series, 5);
    REQUIRE(est.k_hat.has_value());
    CHECK(*est.k_hat <= 60.0);
    REQUIRE(est.eps_hat.has_value());
    CHECK(*est.eps_hat >= 0.2);
    CHECK(*est.eps_hat <= 0.4);
    // Every scanned bin above K-hat recovers the -0.3 drift within 2 se.
    for (const DriftBin& b : est.bins) {
        if (b.lower_edge >= *est.k_hat && b.count >= est.min_bin_count) {
            CHECK(std::abs(b.mean + 0.3) <= 2.0 * b.std_error + 0.05);
        }
    }
}

TEST_CASE("pooled drift merges runs without crossing boundaries") {
    const std::vector<std::uint32_t> run_a{10, 11, 12};
    const std::vector<std::uint32_t> run_b{100, 99, 98};
    const DriftEstimate est = empirical_drift_pooled({run_a, run_b}, 10, 1);
    std::uint64_t total = 0;
    for (const DriftBin& b : est.bins) {
        total += b.count;
    }
    CHECK(total == 4);  // 2 increments per run, none across the gap
}

TEST_CASE("lemma check accepts valid traces and flags corrupted samples") {
    std::vector<TraceSample> trace = constant_trace(200, 4, 1);
    for (TraceSample& s : trace) {
        s.l_n = 3;  // arbitrary l_n keeps the zero-delay bounds valid
    }
    CHECK(lemma_bounds_check(trace, 8).violations == 0);

    SUBCASE("common pool pushed below the lower bound") {
        trace[50].x_observer = 100;
        trace[50].x_common = 1;
        trace[50].l_n = 1;  // bound: 100 - 9 = 91 > 1
        const LemmaReport report = lemma_bounds_check(trace, 8);
        CHECK(report.violations == 1);
        REQUIRE(report.details.size() == 1);
        CHECK(report.details[0].sample_index == 50);
        CHECK(report.details[0].lower_bound);
    }
    SUBCASE("local pool pushed above the upper bound") {
        trace[70].x_local[2] = 200;
        trace[70].l_n = 1;  // bound: 1 + 8 = 9 < 200
        const LemmaReport report = lemma_bounds_check(trace, 8);
        CHECK(report.violations == 1);
        CHECK(report.details[0].upper_bound);
    }
}

TEST_CASE("sync detection on a zero-delay run marks every event") {
    SimParams params;
    params.nodes = zipf_node_set(4, 0.0, 50.0);
    params.k_refs = 2;
    params.horizon = 10.0;
    params.sample_interval = 0.5;
    params.delay = make_constant_delay(0.0);
    params.seed = 3;
    params.probe_sync = true;
    const RunResult run = run_simulation(params);
    REQUIRE(run.sync_probes.size() == run.event_count);

    const RegenerationReport report = detect_sync_events(run.sync_probes);
    // Probes cover states before events 1..E, i.e. n = 0..E-1.
    CHECK(report.sync_times.size() == run.event_count - 1);
    for (std::uint64_t len : report.segment_lengths) {
        CHECK(len == 1);
    }
    for (std::uint32_t m : report.segment_maxima) {
        CHECK(m == 1);
    }
    // Strictly increasing sync times.
    for (std::size_t i = 1; i < report.sync_times.size(); ++i) {
        CHECK(report.sync_times[i] > report.sync_times[i - 1]);
    }
}

TEST_CASE("runs without sync events produce an empty regeneration report") {
    std::vector<SyncProbe> probes(50);
    for (std::size_t i = 0; i < probes.size(); ++i) {
        probes[i].n = i;
        probes[i].x_observer = 5;
        probes[i].x_common = 3;
        probes[i].sync = false;
    }
    const RegenerationReport report = detect_sync_events(probes);
    CHECK(report.sync_times.empty());
    CHECK(report.segment_lengths.empty());
    CHECK(report.segment_maxima.empty());
}

TEST_CASE("moment estimate of the identity series") {
    const std::vector<std::uint32_t> ones(2000, 1);
    const MomentEstimate est = moment_estimate(ones, 1.0, 10);
    CHECK(est.overall == doctest::Approx(1.0));
    for (double w : est.window_means) {
        CHECK(w == doctest::Approx(1.0));
    }
    CHECK(est.slope == doctest::Approx(0.0));
}

TEST_CASE("ergodic means of the all-ones trace") {
    const auto trace = constant_trace(400, 3, 1);
    const ErgodicReport report = ergodic_means(trace, 2.0);
    CHECK(report.observer_mean == doctest::Approx(1.0));
    CHECK(report.observer_diagnostic == doctest::Approx(0.0));
    CHECK(report.max_diagnostic == doctest::Approx(0.0));
    for (double m : report.local_means) {
        CHECK(m == doctest::Approx(1.0));
    }
}

TEST_CASE("stats helpers behave on known inputs") {
    const LinearFit fit = linear_fit({0, 1, 2, 3}, {1, 3, 5, 7});
    CHECK(fit.slope == doctest::Approx(2.0));
    CHECK(fit.intercept == doctest::Approx(1.0));
    CHECK(fit.r_squared == doctest::Approx(1.0));

    CHECK(chi_square_quantile(0.99, 99) == doctest::Approx(134.642).epsilon(0.005));
    CHECK(chi_square_quantile(0.99, 2) == doctest::Approx(9.2103).epsilon(0.01));
    CHECK(normal_quantile(0.975) == doctest::Approx(1.959964).epsilon(1e-5));

    // Batch means of i.i.d. data approximate the plain standard error.
    RngStream rng(5);
    std::vector<double> xs(20000);
    for (double& v : xs) {
        v = rng.uniform01();
    }
    const double se = batch_means_se(xs, 20);
    const double classic = sample_sd(xs) / std::sqrt(20000.0);
    CHECK(se == doctest::Approx(classic).epsilon(0.5));
}
