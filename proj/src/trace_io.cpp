#include "uavclust/trace_io.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <vector>

#include <fmt/format.h>

namespace uavclust {

namespace {

constexpr std::string_view kMagic = "# uavclust-trace 1";

std::vector<std::string_view> split(std::string_view s, char sep) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (true) {
        const auto pos = s.find(sep, start);
        out.push_back(s.substr(start, pos - start));
        if (pos == std::string_view::npos) break;
        start = pos + 1;
    }
    return out;
}

std::uint64_t to_u64(std::string_view text, int base = 10) {
    std::uint64_t v = 0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v, base);
    if (text.empty() || ec != std::errc{} || ptr != text.data() + text.size()) {
        throw std::runtime_error(fmt::format("trace: bad integer '{}'", text));
    }
    return v;
}

double to_double(std::string_view text) {
    std::string buf(text);
    char* end = nullptr;
    const double v = std::strtod(buf.c_str(), &end);
    if (buf.empty() || end != buf.c_str() + buf.size()) throw std::runtime_error(fmt::format("trace: bad number '{}'", text));
    return v;
}

}  // namespace

std::optional<std::string> payload_value(std::string_view payload, std::string_view key) {
    for (const auto field : split(payload, ';')) {
        const auto eq = field.find('=');
        if (eq != std::string_view::npos && field.substr(0, eq) == key) return std::string(field.substr(eq + 1));
    }
    return std::nullopt;
}

void write_trace(std::ostream& out, const Trace& trace) {
    const auto& h = trace.header;
    out << kMagic << '\n';
    out << fmt::format(
        "# scheme={} seed={} run={} mobility_seed={} fading_seed={} scheme_seed={} digest={:016x} vehicles={} "
        "uavs={} duration={} cam_interval={}\n",
        to_string(h.scheme), h.seed, h.run_index, h.seeds.mobility, h.seeds.fading, h.seeds.scheme, h.digest,
        h.num_vehicles, h.num_uavs, h.duration, h.cam_interval);
    for (const auto& e : trace.events) {
        out << fmt::format("{}\t{}\t{}\t{}\t{}\n", e.time, to_string(e.kind),
                           e.uav ? fmt::format("{}", e.uav->value) : "-",
                           e.vehicle ? fmt::format("{}", e.vehicle->value) : "-",
                           e.payload.empty() ? "-" : e.payload);
    }
}

std::string format_trace(const Trace& trace) {
    std::ostringstream out;
    write_trace(out, trace);
    return out.str();
}

Trace read_trace(std::istream& in) {
    Trace trace;
    std::string line;
    if (!std::getline(in, line) || line != kMagic) throw std::runtime_error("trace: missing '# uavclust-trace 1' line");
    if (!std::getline(in, line) || !line.starts_with("# ")) throw std::runtime_error("trace: missing header line");

    auto& h = trace.header;
    for (const auto field : split(std::string_view(line).substr(2), ' ')) {
        const auto eq = field.find('=');
        if (eq == std::string_view::npos) continue;
        const auto key = field.substr(0, eq);
        const auto value = field.substr(eq + 1);
        if (key == "scheme") {
            const auto s = parse_scheme(value);
            if (!s) throw std::runtime_error(fmt::format("trace: unknown scheme '{}'", value));
            h.scheme = *s;
        } else if (key == "seed") {
            h.seed = to_u64(value);
        } else if (key == "run") {
            h.run_index = static_cast<std::uint32_t>(to_u64(value));
        } else if (key == "mobility_seed") {
            h.seeds.mobility = to_u64(value);
        } else if (key == "fading_seed") {
            h.seeds.fading = to_u64(value);
        } else if (key == "scheme_seed") {
            h.seeds.scheme = to_u64(value);
        } else if (key == "digest") {
            h.digest = to_u64(value, 16);
        } else if (key == "vehicles") {
            h.num_vehicles = static_cast<std::uint32_t>(to_u64(value));
        } else if (key == "uavs") {
            h.num_uavs = static_cast<std::uint32_t>(to_u64(value));
        } else if (key == "duration") {
            h.duration = to_double(value);
        } else if (key == "cam_interval") {
            h.cam_interval = to_double(value);
        }
    }

    std::size_t lineno = 2;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        const auto cols = split(line, '\t');
        if (cols.size() != 5) throw std::runtime_error(fmt::format("trace line {}: expected 5 columns", lineno));
        SimEvent e;
        e.time = to_double(cols[0]);
        const auto kind = parse_event_kind(cols[1]);
        if (!kind) throw std::runtime_error(fmt::format("trace line {}: unknown event '{}'", lineno, cols[1]));
        e.kind = *kind;
        if (cols[2] != "-") e.uav = UavId{static_cast<std::uint32_t>(to_u64(cols[2]))};
        if (cols[3] != "-") e.vehicle = VehicleId{static_cast<std::uint32_t>(to_u64(cols[3]))};
        if (cols[4] != "-") e.payload = std::string(cols[4]);
        trace.events.push_back(std::move(e));
    }
    return trace;
}

Trace read_trace_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open trace " + path.string());
    return read_trace(in);
}

}  // namespace uavclust
