#include "tipsim/sweep.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <ostream>
#include <stdexcept>

#include "tipsim/stats.hpp"

namespace tipsim {

namespace {

double parse_double_token(const std::string& text, const std::string& what) {
    double value{};
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || ptr != text.data() + text.size()) {
        throw ConfigError("axis value '" + text + "': " + what);
    }
    return value;
}

std::vector<std::string> split(const std::string& text, char sep) {
    std::vector<std::string> parts;
    std::size_t start = 0;
    while (true) {
        const std::size_t pos = text.find(sep, start);
        if (pos == std::string::npos) {
            parts.push_back(text.substr(start));
            break;
        }
        parts.push_back(text.substr(start, pos - start));
        start = pos + 1;
    }
    return parts;
}

}  // namespace

RunStats summarize_run(const std::vector<TraceSample>& trace, double burn_in_time) {
    std::vector<double> x_o, x_c, x_min, x_max, x_first, x_last;
    for (const TraceSample& s : trace) {
        if (s.time < burn_in_time) {
            continue;
        }
        x_o.push_back(s.x_observer);
        x_c.push_back(s.x_common);
        const auto [lo, hi] = std::minmax_element(s.x_local.begin(), s.x_local.end());
        x_min.push_back(*lo);
        x_max.push_back(*hi);
        x_first.push_back(s.x_local.front());
        x_last.push_back(s.x_local.back());
    }
    if (x_o.empty()) {
        throw std::invalid_argument("summarize_run: no samples after burn-in");
    }
    RunStats stats;
    stats.x_observer = mean(x_o);
    stats.x_common = mean(x_c);
    stats.x_local_min = mean(x_min);
    stats.x_local_max = mean(x_max);
    stats.x_local_first = mean(x_first);
    stats.x_local_last = mean(x_last);
    return stats;
}

RunConfig apply_axis_value(const RunConfig& base, const std::string& axis,
                           const std::string& value) {
    RunConfig cfg = base;
    if (axis == "zipf_s") {
        cfg.zipf_s = parse_double_token(value, "expected a number");
        if (cfg.zipf_s < 0.0) {
            throw ConfigError("axis value '" + value + "': zipf_s must be >= 0");
        }
    } else if (axis == "total_rate") {
        cfg.total_rate = parse_double_token(value, "expected a number");
        if (cfg.total_rate <= 0.0) {
            throw ConfigError("axis value '" + value + "': total_rate must be > 0");
        }
    } else if (axis == "k_refs") {
        const double k = parse_double_token(value, "expected an integer");
        if (k < 1.0 || k != std::floor(k)) {
            throw ConfigError("axis value '" + value + "': k_refs must be a positive integer");
        }
        cfg.k_refs = static_cast<int>(k);
    } else if (axis == "delay") {
        const auto parts = split(value, ':');
        if (parts[0] == "constant" && parts.size() == 2) {
            cfg.delay = DelayConfig{};
            cfg.delay.kind = DelayKind::constant;
            cfg.delay.constant_delay = parse_double_token(parts[1], "expected a number");
        } else if ((parts[0] == "direct" || parts[0] == "gossip") && parts.size() == 3) {
            const bool gossip = parts[0] == "gossip";
            if (gossip && base.delay.kind != DelayKind::gossip) {
                throw ConfigError("axis value '" + value +
                                  "': gossip needs a topology block in the base config");
            }
            cfg.delay = DelayConfig{};
            cfg.delay.kind = gossip ? DelayKind::gossip : DelayKind::direct;
            cfg.delay.delta_min = parse_double_token(parts[1], "expected a number");
            cfg.delay.delta_max = parse_double_token(parts[2], "expected a number");
            if (cfg.delay.delta_min < 0.0 || cfg.delay.delta_max < cfg.delay.delta_min) {
                throw ConfigError("axis value '" + value + "': need 0 <= min <= max");
            }
        } else {
            throw ConfigError("axis value '" + value +
                              "': expected direct:MIN:MAX, gossip:MIN:MAX or constant:C");
        }
    } else {
        throw ConfigError("axis '" + axis +
                          "': must be one of zipf_s, total_rate, k_refs, delay");
    }
    return cfg;
}

SweepResult run_sweep(const RunConfig& base, const std::string& axis,
                      const std::vector<std::string>& values, int replications) {
    if (values.empty()) {
        throw ConfigError("axis: need at least one value");
    }
    if (replications < 1) {
        throw ConfigError("replications must be >= 1");
    }
    SweepResult sweep;
    sweep.axis = axis;

    // Validate all cell configs up front so malformed axis values abort
    // before any work starts.
    std::vector<RunConfig> cell_configs;
    const std::uint64_t sweep_seed = stream_seed(base.seed, "sweep");
    for (std::size_t v = 0; v < values.size(); ++v) {
        RunConfig cfg = apply_axis_value(base, axis, values[v]);
        for (int rep = 0; rep < replications; ++rep) {
            SweepCell cell;
            cell.axis_value = values[v];
            cell.value_index = static_cast<int>(v);
            cell.replication = rep;
            cell.seed = substream_seed(substream_seed(sweep_seed, v),
                                       static_cast<std::uint64_t>(rep));
            sweep.cells.push_back(cell);
            cfg.seed = cell.seed;
            cell_configs.push_back(cfg);
        }
    }

    const std::int64_t cell_count = static_cast<std::int64_t>(sweep.cells.size());
#pragma omp parallel for schedule(dynamic, 1)
    for (std::int64_t i = 0; i < cell_count; ++i) {
        SweepCell& cell = sweep.cells[static_cast<std::size_t>(i)];
        try {
            SimParams params = build_sim_params(cell_configs[static_cast<std::size_t>(i)]);
            params.keep_events = false;
            params.probe_sync = false;
            params.probe_observer = false;
            const RunResult result = run_simulation(params);
            cell.stats = summarize_run(result.trace,
                                       cell_configs[static_cast<std::size_t>(i)].burn_in);
            cell.ok = true;
        } catch (const std::exception& ex) {
            cell.ok = false;
            cell.error = ex.what();
        }
    }

    for (std::size_t v = 0; v < values.size(); ++v) {
        SweepAggregate agg;
        agg.axis_value = values[v];
        std::vector<double> o, c, mn, mx, first, last;
        for (const SweepCell& cell : sweep.cells) {
            if (cell.value_index != static_cast<int>(v)) {
                continue;
            }
            if (!cell.ok) {
                ++agg.replications_failed;
                continue;
            }
            ++agg.replications_ok;
            o.push_back(cell.stats.x_observer);
            c.push_back(cell.stats.x_common);
            mn.push_back(cell.stats.x_local_min);
            mx.push_back(cell.stats.x_local_max);
            first.push_back(cell.stats.x_local_first);
            last.push_back(cell.stats.x_local_last);
        }
        if (agg.replications_ok > 0) {
            agg.mean = RunStats{mean(o), mean(c), mean(mn), mean(mx), mean(first), mean(last)};
            if (agg.replications_ok > 1) {
                agg.sd = RunStats{sample_sd(o),  sample_sd(c),     sample_sd(mn),
                                  sample_sd(mx), sample_sd(first), sample_sd(last)};
            }
        }
        sweep.aggregates.push_back(std::move(agg));
    }
    return sweep;
}

namespace {

void write_stats_fields(std::ostream& os, const RunStats& s) {
    os << s.x_observer << ',' << s.x_common << ',' << s.x_local_min << ',' << s.x_local_max << ','
       << s.x_local_first << ',' << s.x_local_last;
}

}  // namespace

void write_means_csv(const SweepResult& sweep, std::ostream& os) {
    os << "axis,value,replications_ok,replications_failed,"
          "x_observer_mean,x_common_mean,x_local_min_mean,x_local_max_mean,"
          "x_local_first_mean,x_local_last_mean,"
          "x_observer_sd,x_common_sd,x_local_min_sd,x_local_max_sd,"
          "x_local_first_sd,x_local_last_sd\n";
    for (const SweepAggregate& agg : sweep.aggregates) {
        os << sweep.axis << ',' << agg.axis_value << ',' << agg.replications_ok << ','
           << agg.replications_failed << ',';
        write_stats_fields(os, agg.mean);
        os << ',';
        write_stats_fields(os, agg.sd);
        os << '\n';
    }
}

void write_cells_csv(const SweepResult& sweep, std::ostream& os) {
    os << "axis,value,replication,seed,ok,"
          "x_observer,x_common,x_local_min,x_local_max,x_local_first,x_local_last,error\n";
    for (const SweepCell& cell : sweep.cells) {
        os << sweep.axis << ',' << cell.axis_value << ',' << cell.replication << ',' << cell.seed
           << ',' << (cell.ok ? 1 : 0) << ',';
        write_stats_fields(os, cell.stats);
        os << ',' << cell.error << '\n';
    }
}

}  // namespace tipsim
