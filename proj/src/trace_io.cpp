#include "tipsim/trace_io.hpp"

#include <charconv>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>

#include "json.hpp"

namespace tipsim {

namespace {

void append_double(std::string& out, double value) {
    char buf[32];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
    if (ec != std::errc{}) {
        throw std::runtime_error("failed to format double");
    }
    out.append(buf, ptr);
}

[[noreturn]] void parse_fail(std::string_view file_kind, std::size_t line_no,
                             std::string_view what) {
    std::ostringstream msg;
    msg << file_kind << " line " << line_no << ": " << what;
    throw std::runtime_error(msg.str());
}

template <typename T>
T parse_number(std::string_view field, std::string_view file_kind, std::size_t line_no,
               std::string_view name) {
    T value{};
    auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
    if (ec != std::errc{} || ptr != field.data() + field.size()) {
        parse_fail(file_kind, line_no, std::string("bad field '") + std::string(name) + "'");
    }
    return value;
}

std::vector<std::string_view> split_csv(std::string_view line) {
    std::vector<std::string_view> fields;
    std::size_t start = 0;
    while (true) {
        const std::size_t comma = line.find(',', start);
        if (comma == std::string_view::npos) {
            fields.push_back(line.substr(start));
            break;
        }
        fields.push_back(line.substr(start, comma - start));
        start = comma + 1;
    }
    return fields;
}

}  // namespace

void write_trace_csv(const std::vector<TraceSample>& trace, std::ostream& os) {
    const std::size_t n_nodes = trace.empty() ? 0 : trace.front().x_local.size();
    std::string line = "time,n,x_observer,x_common,l_n";
    for (std::size_t i = 0; i < n_nodes; ++i) {
        line += ",x_local_" + std::to_string(i);
    }
    line += '\n';
    os << line;
    for (const TraceSample& s : trace) {
        line.clear();
        append_double(line, s.time);
        line += ',';
        line += std::to_string(s.n);
        line += ',';
        line += std::to_string(s.x_observer);
        line += ',';
        line += std::to_string(s.x_common);
        line += ',';
        line += std::to_string(s.l_n);
        for (std::uint32_t x : s.x_local) {
            line += ',';
            line += std::to_string(x);
        }
        line += '\n';
        os << line;
    }
}

std::vector<TraceSample> read_trace_csv(std::istream& is) {
    std::string line;
    if (!std::getline(is, line)) {
        parse_fail("trace.csv", 1, "missing header");
    }
    const auto header = split_csv(line);
    if (header.size() < 5 || header[0] != "time" || header[1] != "n" ||
        header[2] != "x_observer" || header[3] != "x_common" || header[4] != "l_n") {
        parse_fail("trace.csv", 1, "unexpected header");
    }
    const std::size_t n_nodes = header.size() - 5;
    std::vector<TraceSample> trace;
    std::size_t line_no = 1;
    while (std::getline(is, line)) {
        ++line_no;
        if (line.empty()) {
            continue;
        }
        const auto fields = split_csv(line);
        if (fields.size() != header.size()) {
            parse_fail("trace.csv", line_no, "wrong field count");
        }
        TraceSample s;
        s.time = parse_number<double>(fields[0], "trace.csv", line_no, "time");
        s.n = parse_number<std::uint64_t>(fields[1], "trace.csv", line_no, "n");
        s.x_observer = parse_number<std::uint32_t>(fields[2], "trace.csv", line_no, "x_observer");
        s.x_common = parse_number<std::uint32_t>(fields[3], "trace.csv", line_no, "x_common");
        s.l_n = parse_number<std::uint32_t>(fields[4], "trace.csv", line_no, "l_n");
        s.x_local.reserve(n_nodes);
        for (std::size_t i = 0; i < n_nodes; ++i) {
            s.x_local.push_back(
                parse_number<std::uint32_t>(fields[5 + i], "trace.csv", line_no, "x_local"));
        }
        trace.push_back(std::move(s));
    }
    return trace;
}

void write_events_jsonl(const std::vector<MarkedEvent>& events, const std::vector<Block>& blocks,
                        std::ostream& os) {
    std::string line;
    for (const MarkedEvent& e : events) {
        line.clear();
        line += "{\"seq\":";
        line += std::to_string(e.seq);
        line += ",\"time\":";
        append_double(line, e.time);
        line += ",\"issuer\":";
        line += std::to_string(e.issuer);
        line += ",\"block_id\":\"";
        line += e.block_id.to_hex();
        line += "\",\"refs\":[";
        const Block& b = blocks[static_cast<std::size_t>(e.seq)];
        for (std::size_t i = 0; i < b.refs.size(); ++i) {
            if (i > 0) {
                line += ',';
            }
            line += '"';
            line += b.refs[i].to_hex();
            line += '"';
        }
        line += "],\"deliveries\":[";
        for (std::size_t i = 0; i < e.deliveries.size(); ++i) {
            if (i > 0) {
                line += ',';
            }
            append_double(line, e.deliveries[i]);
        }
        line += "]}\n";
        os << line;
    }
}

EventLog read_events_jsonl(std::istream& is) {
    EventLog log;
    Block genesis;
    genesis.id = BlockId::genesis();
    log.blocks.push_back(genesis);

    std::string line;
    std::size_t line_no = 0;
    while (std::getline(is, line)) {
        ++line_no;
        if (line.empty()) {
            continue;
        }
        nlohmann::json j = nlohmann::json::parse(line, nullptr, false);
        if (j.is_discarded()) {
            parse_fail("events.jsonl", line_no, "invalid JSON");
        }
        try {
            MarkedEvent e;
            e.seq = j.at("seq").get<std::uint64_t>();
            e.time = j.at("time").get<double>();
            e.issuer = j.at("issuer").get<int>();
            const auto id = BlockId::from_hex(j.at("block_id").get<std::string>());
            if (!id) {
                parse_fail("events.jsonl", line_no, "bad block_id");
            }
            e.block_id = *id;
            e.deliveries = j.at("deliveries").get<std::vector<double>>();
            Block b;
            b.id = e.block_id;
            b.issuer = e.issuer;
            b.issue_time = e.time;
            for (const auto& r : j.at("refs")) {
                const auto rid = BlockId::from_hex(r.get<std::string>());
                if (!rid) {
                    parse_fail("events.jsonl", line_no, "bad ref id");
                }
                b.refs.push_back(*rid);
            }
            if (e.seq != log.events.size() + 1) {
                parse_fail("events.jsonl", line_no, "seq out of order");
            }
            log.events.push_back(std::move(e));
            log.blocks.push_back(std::move(b));
        } catch (const nlohmann::json::exception& ex) {
            parse_fail("events.jsonl", line_no, ex.what());
        }
    }
    return log;
}

void write_observer_csv(const std::vector<std::uint32_t>& series, std::ostream& os) {
    os << "n,x_observer\n";
    for (std::size_t i = 0; i < series.size(); ++i) {
        os << (i + 1) << ',' << series[i] << '\n';
    }
}

std::vector<std::uint32_t> read_observer_csv(std::istream& is) {
    std::string line;
    if (!std::getline(is, line) || line != "n,x_observer") {
        parse_fail("observer.csv", 1, "unexpected header");
    }
    std::vector<std::uint32_t> series;
    std::size_t line_no = 1;
    while (std::getline(is, line)) {
        ++line_no;
        if (line.empty()) {
            continue;
        }
        const auto fields = split_csv(line);
        if (fields.size() != 2) {
            parse_fail("observer.csv", line_no, "wrong field count");
        }
        series.push_back(parse_number<std::uint32_t>(fields[1], "observer.csv", line_no, "x_observer"));
    }
    return series;
}

void write_sync_csv(const std::vector<SyncProbe>& probes, std::ostream& os) {
    os << "n,x_observer,x_common,sync\n";
    for (const SyncProbe& p : probes) {
        os << p.n << ',' << p.x_observer << ',' << p.x_common << ',' << (p.sync ? 1 : 0) << '\n';
    }
}

std::vector<SyncProbe> read_sync_csv(std::istream& is) {
    std::string line;
    if (!std::getline(is, line) || line != "n,x_observer,x_common,sync") {
        parse_fail("sync.csv", 1, "unexpected header");
    }
    std::vector<SyncProbe> probes;
    std::size_t line_no = 1;
    while (std::getline(is, line)) {
        ++line_no;
        if (line.empty()) {
            continue;
        }
        const auto fields = split_csv(line);
        if (fields.size() != 4) {
            parse_fail("sync.csv", line_no, "wrong field count");
        }
        SyncProbe p;
        p.n = parse_number<std::uint64_t>(fields[0], "sync.csv", line_no, "n");
        p.x_observer = parse_number<std::uint32_t>(fields[1], "sync.csv", line_no, "x_observer");
        p.x_common = parse_number<std::uint32_t>(fields[2], "sync.csv", line_no, "x_common");
        p.sync = parse_number<int>(fields[3], "sync.csv", line_no, "sync") != 0;
        probes.push_back(p);
    }
    return probes;
}

}  // namespace tipsim
