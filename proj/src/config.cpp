#include "uavclust/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <sstream>

#include <fmt/format.h>

#include "uavclust/channel.hpp"

namespace uavclust {

std::string_view to_string(Scheme s) {
    switch (s) {
        case Scheme::Proposed: return "proposed";
        case Scheme::Random: return "random";
        case Scheme::Vmasc: return "vmasc";
    }
    return "unknown";
}

std::optional<Scheme> parse_scheme(std::string_view name) {
    if (name == "proposed") return Scheme::Proposed;
    if (name == "random") return Scheme::Random;
    if (name == "vmasc") return Scheme::Vmasc;
    return std::nullopt;
}

namespace {

std::string_view trim(std::string_view s) {
    const auto* ws = " \t\r\n";
    const auto b = s.find_first_not_of(ws);
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(ws);
    return s.substr(b, e - b + 1);
}

double parse_number(std::string_view key, std::string_view text) {
    text = trim(text);
    // from_chars for double is not in libstdc++ 11 for all targets; strtod is fine here.
    std::string buf(text);
    char* end = nullptr;
    const double v = std::strtod(buf.c_str(), &end);
    if (buf.empty() || end != buf.c_str() + buf.size() || !std::isfinite(v)) {
        throw ConfigError(std::string(key), fmt::format("not a finite number: '{}'", text));
    }
    return v;
}

std::uint64_t parse_unsigned(std::string_view key, std::string_view text) {
    text = trim(text);
    std::uint64_t v = 0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (text.empty() || ec != std::errc{} || ptr != text.data() + text.size()) {
        throw ConfigError(std::string(key), fmt::format("not an unsigned integer: '{}'", text));
    }
    return v;
}

std::uint32_t parse_u32(std::string_view key, std::string_view text) {
    const auto v = parse_unsigned(key, text);
    if (v > UINT32_MAX) throw ConfigError(std::string(key), "value out of range");
    return static_cast<std::uint32_t>(v);
}

bool parse_bool(std::string_view key, std::string_view text) {
    text = trim(text);
    if (text == "true" || text == "1" || text == "yes") return true;
    if (text == "false" || text == "0" || text == "no") return false;
    throw ConfigError(std::string(key), fmt::format("not a boolean: '{}'", text));
}

// Splits "40 km/h" into (40, "km/h"). The unit is optional.
std::pair<double, std::string> parse_quantity(std::string_view key, std::string_view text) {
    text = trim(text);
    const std::string buf(text);
    char* end = nullptr;
    std::strtod(buf.c_str(), &end);
    const auto split = static_cast<std::size_t>(end - buf.c_str());
    if (split == 0 || split == text.size()) return {parse_number(key, text), {}};
    return {parse_number(key, text.substr(0, split)), std::string(trim(text.substr(split)))};
}

double parse_speed(std::string_view key, std::string_view text) {
    const auto [v, unit] = parse_quantity(key, text);
    if (unit.empty() || unit == "m/s") return v;
    if (unit == "km/h") return v / 3.6;
    throw ConfigError(std::string(key), fmt::format("unknown speed unit '{}' (km/h | m/s)", unit));
}

double parse_power(std::string_view key, std::string_view text) {
    const auto [v, unit] = parse_quantity(key, text);
    if (unit.empty() || unit == "W") return v;
    if (unit == "dBm") return dbm_to_watts(v);
    throw ConfigError(std::string(key), fmt::format("unknown power unit '{}' (dBm | W)", unit));
}

double parse_plain(std::string_view key, std::string_view text, std::string_view allowed_unit) {
    const auto [v, unit] = parse_quantity(key, text);
    if (!unit.empty() && unit != allowed_unit) {
        throw ConfigError(std::string(key), fmt::format("unexpected unit '{}'", unit));
    }
    return v;
}

std::string fmt_double(double v) { return fmt::format("{}", v); }

struct KeyEntry {
    std::string_view name;
    std::function<void(SimConfig&, std::string_view)> set;
    std::function<std::string(const SimConfig&)> get;
};

template <typename M>
KeyEntry length_key(std::string_view name, M SimConfig::*member) {
    return {name,
            [name, member](SimConfig& c, std::string_view v) { c.*member = parse_plain(name, v, "m"); },
            [member](const SimConfig& c) { return fmt_double(c.*member); }};
}

template <typename M>
KeyEntry seconds_key(std::string_view name, M SimConfig::*member) {
    return {name,
            [name, member](SimConfig& c, std::string_view v) { c.*member = parse_plain(name, v, "s"); },
            [member](const SimConfig& c) { return fmt_double(c.*member); }};
}

template <typename M>
KeyEntry ratio_key(std::string_view name, M SimConfig::*member) {
    return {name,
            [name, member](SimConfig& c, std::string_view v) { c.*member = parse_number(name, v); },
            [member](const SimConfig& c) { return fmt_double(c.*member); }};
}

template <typename M>
KeyEntry speed_key(std::string_view name, M SimConfig::*member) {
    return {name,
            [name, member](SimConfig& c, std::string_view v) { c.*member = parse_speed(name, v); },
            [member](const SimConfig& c) { return fmt_double(c.*member); }};
}

template <typename M>
KeyEntry power_key(std::string_view name, M SimConfig::*member) {
    return {name,
            [name, member](SimConfig& c, std::string_view v) { c.*member = parse_power(name, v); },
            [member](const SimConfig& c) { return fmt_double(c.*member); }};
}

template <typename M>
KeyEntry count_key(std::string_view name, M SimConfig::*member) {
    return {name,
            [name, member](SimConfig& c, std::string_view v) { c.*member = parse_u32(name, v); },
            [member](const SimConfig& c) { return fmt::format("{}", c.*member); }};
}

template <typename E>
KeyEntry enum_key(std::string_view name, E SimConfig::*member,
                  std::vector<std::pair<std::string_view, E>> choices) {
    return {name,
            [name, member, choices](SimConfig& c, std::string_view v) {
                v = trim(v);
                for (const auto& [label, value] : choices) {
                    if (label == v) {
                        c.*member = value;
                        return;
                    }
                }
                std::string allowed;
                for (const auto& [label, value] : choices) {
                    allowed += allowed.empty() ? "" : " | ";
                    allowed += label;
                }
                throw ConfigError(std::string(name), fmt::format("expected one of {}, got '{}'", allowed, v));
            },
            [member, choices](const SimConfig& c) {
                for (const auto& [label, value] : choices) {
                    if (value == c.*member) return std::string(label);
                }
                return std::string("?");
            }};
}

const std::vector<KeyEntry>& key_table() {
    static const std::vector<KeyEntry> table = [] {
        std::vector<KeyEntry> t;
        t.push_back(count_key("num_vehicles", &SimConfig::num_vehicles));
        t.push_back(count_key("num_uavs", &SimConfig::num_uavs));
        t.push_back(length_key("road_length", &SimConfig::road_length));
        t.push_back({"lane_offsets",
                     [](SimConfig& c, std::string_view v) {
                         const auto comma = v.find(',');
                         if (comma == std::string_view::npos) {
                             throw ConfigError("lane_offsets", "expected two comma-separated offsets");
                         }
                         c.lane_offsets = {parse_plain("lane_offsets", v.substr(0, comma), "m"),
                                           parse_plain("lane_offsets", v.substr(comma + 1), "m")};
                     },
                     [](const SimConfig& c) {
                         return fmt::format("{},{}", c.lane_offsets[0], c.lane_offsets[1]);
                     }});
        t.push_back(speed_key("speed_min", &SimConfig::speed_min));
        t.push_back(speed_key("speed_max", &SimConfig::speed_max));
        t.push_back(length_key("uav_altitude", &SimConfig::uav_altitude));
        t.push_back(length_key("uav_radius", &SimConfig::uav_radius));
        t.push_back(length_key("uav_min_separation", &SimConfig::uav_min_separation));
        t.push_back(speed_key("uav_max_speed", &SimConfig::uav_max_speed));
        t.push_back(seconds_key("slot", &SimConfig::slot));
        t.push_back(seconds_key("duration", &SimConfig::duration));
        t.push_back(seconds_key("cam_interval", &SimConfig::cam_interval));
        t.push_back(seconds_key("beacon_interval", &SimConfig::beacon_interval));
        t.push_back(seconds_key("cluster_interval", &SimConfig::cluster_interval));
        t.push_back(count_key("speed_window", &SimConfig::speed_window));
        t.push_back(ratio_key("g0", &SimConfig::g0));
        t.push_back(power_key("noise_power", &SimConfig::noise_power));
        t.push_back(power_key("vehicle_tx_power", &SimConfig::vehicle_tx_power));
        t.push_back(power_key("uav_tx_power", &SimConfig::uav_tx_power));
        t.push_back(ratio_key("v2v_path_loss", &SimConfig::v2v_path_loss));
        t.push_back(ratio_key("v2v_exponent", &SimConfig::v2v_exponent));
        t.push_back({"shadowing_std",
                     [](SimConfig& c, std::string_view v) {
                         c.shadowing_std_db = parse_plain("shadowing_std", v, "dB");
                     },
                     [](const SimConfig& c) { return fmt_double(c.shadowing_std_db); }});
        t.push_back(length_key("v2v_min_distance", &SimConfig::v2v_min_distance));
        t.push_back(enum_key<SnrModel>("snr_model", &SimConfig::snr_model,
                                       {{"instantaneous", SnrModel::Instantaneous},
                                        {"large_scale", SnrModel::LargeScale}}));
        t.push_back(enum_key<SnrAggregate>("snr_aggregate", &SimConfig::snr_aggregate,
                                           {{"total", SnrAggregate::Total}, {"mean", SnrAggregate::Mean}}));
        t.push_back(length_key("neighbor_range", &SimConfig::neighbor_range));
        t.push_back(length_key("eps_distance", &SimConfig::eps_distance));
        t.push_back(count_key("eps_neighbors", &SimConfig::eps_neighbors));
        t.push_back(enum_key<ResidualModel>("residual_model", &SimConfig::residual_model,
                                            {{"printed", ResidualModel::Printed},
                                             {"geometric", ResidualModel::Geometric}}));
        t.push_back(seconds_key("residual_horizon", &SimConfig::residual_horizon));
        t.push_back(ratio_key("ahp_speed_weight", &SimConfig::ahp_speed_weight));
        t.push_back(ratio_key("ahp_neighbor_weight", &SimConfig::ahp_neighbor_weight));
        t.push_back(ratio_key("ahp_path_weight", &SimConfig::ahp_path_weight));
        t.push_back(enum_key<BackupScoring>("backup_scoring", &SimConfig::backup_scoring,
                                            {{"rank", BackupScoring::Rank}, {"raw", BackupScoring::Raw}}));
        t.push_back(enum_key<PathOrder>("backup_path_order", &SimConfig::backup_path_order,
                                        {{"descending", PathOrder::LargestFirst},
                                         {"ascending", PathOrder::SmallestFirst}}));
        t.push_back({"benchmark_backup",
                     [](SimConfig& c, std::string_view v) { c.benchmark_backup = parse_bool("benchmark_backup", v); },
                     [](const SimConfig& c) { return std::string(c.benchmark_backup ? "true" : "false"); }});
        t.push_back(enum_key<UavPolicy>("uav_policy", &SimConfig::uav_policy,
                                        {{"static", UavPolicy::Static},
                                         {"follow_centroid", UavPolicy::FollowCentroid}}));
        t.push_back(ratio_key("weight_reselection", &SimConfig::weight_reselection));
        t.push_back(ratio_key("weight_snr", &SimConfig::weight_snr));
        t.push_back(ratio_key("poisson_rate", &SimConfig::poisson_rate));
        t.push_back(ratio_key("snr_mean", &SimConfig::snr_mean));
        t.push_back(ratio_key("snr_variance", &SimConfig::snr_variance));
        t.push_back(enum_key<Scheme>("scheme", &SimConfig::scheme,
                                     {{"proposed", Scheme::Proposed},
                                      {"random", Scheme::Random},
                                      {"vmasc", Scheme::Vmasc}}));
        t.push_back({"seed",
                     [](SimConfig& c, std::string_view v) { c.seed = parse_unsigned("seed", v); },
                     [](const SimConfig& c) { return fmt::format("{}", c.seed); }});
        return t;
    }();
    return table;
}

const KeyEntry& find_key(std::string_view key) {
    for (const auto& e : key_table()) {
        if (e.name == key) return e;
    }
    throw ConfigError(std::string(key), "unknown configuration key");
}

void require(bool ok, std::string_view field, std::string_view what) {
    if (!ok) throw ConfigError(std::string(field), std::string(what));
}

void require_positive(double v, std::string_view field) {
    require(std::isfinite(v) && v > 0.0, field, fmt::format("must be > 0 (got {})", v));
}

// Number of slots in `interval`, or throws if it is not an integer multiple.
std::uint64_t slots_in(double interval, double slot, std::string_view field) {
    const double ratio = interval / slot;
    const double rounded = std::round(ratio);
    require(rounded >= 1.0 && std::abs(ratio - rounded) <= 1e-9 * std::max(1.0, ratio), field,
            fmt::format("{} s is not a positive multiple of the slot duration {} s", interval, slot));
    return static_cast<std::uint64_t>(rounded);
}

}  // namespace

SimConfig validate(SimConfig c) {
    require(c.num_vehicles >= 1, "num_vehicles", "must be >= 1");
    require(c.num_uavs >= 1, "num_uavs", "must be >= 1");
    require_positive(c.road_length, "road_length");
    require(c.lane_offsets[0] != c.lane_offsets[1], "lane_offsets", "the two lanes must differ");
    require_positive(c.speed_min, "speed_min");
    require_positive(c.speed_max, "speed_max");
    require(c.speed_min <= c.speed_max, "speed_min", "must not exceed speed_max");
    require_positive(c.uav_altitude, "uav_altitude");
    require_positive(c.uav_radius, "uav_radius");
    require_positive(c.uav_min_separation, "uav_min_separation");
    require_positive(c.uav_max_speed, "uav_max_speed");
    require(c.num_uavs == 1 || c.road_length / c.num_uavs >= c.uav_min_separation, "uav_min_separation",
            "hover points road_length/num_uavs apart would violate the minimum separation");

    require_positive(c.slot, "slot");
    require_positive(c.duration, "duration");
    require_positive(c.cam_interval, "cam_interval");
    require_positive(c.beacon_interval, "beacon_interval");
    require_positive(c.cluster_interval, "cluster_interval");
    slots_in(c.cam_interval, c.slot, "cam_interval");
    slots_in(c.beacon_interval, c.slot, "beacon_interval");
    slots_in(c.cluster_interval, c.slot, "cluster_interval");
    c.num_slots = slots_in(c.duration, c.slot, "duration");
    c.duration = static_cast<double>(c.num_slots) * c.slot;
    require(c.speed_window >= 1, "speed_window", "must be >= 1");

    require_positive(c.g0, "g0");
    require_positive(c.noise_power, "noise_power");
    require_positive(c.vehicle_tx_power, "vehicle_tx_power");
    require_positive(c.uav_tx_power, "uav_tx_power");
    require_positive(c.v2v_path_loss, "v2v_path_loss");
    require_positive(c.v2v_exponent, "v2v_exponent");
    require(std::isfinite(c.shadowing_std_db) && c.shadowing_std_db >= 0.0, "shadowing_std", "must be >= 0");
    require_positive(c.v2v_min_distance, "v2v_min_distance");

    require_positive(c.neighbor_range, "neighbor_range");
    require(std::isfinite(c.eps_distance), "eps_distance", "must be finite");
    require(std::isfinite(c.residual_horizon) && c.residual_horizon >= 0.0, "residual_horizon", "must be >= 0");
    for (auto [w, name] : {std::pair{c.ahp_speed_weight, "ahp_speed_weight"},
                           std::pair{c.ahp_neighbor_weight, "ahp_neighbor_weight"},
                           std::pair{c.ahp_path_weight, "ahp_path_weight"},
                           std::pair{c.weight_reselection, "weight_reselection"},
                           std::pair{c.weight_snr, "weight_snr"}}) {
        require(w >= 0.0, name, "weights must be >= 0");
    }
    const double ahp_sum = c.ahp_speed_weight + c.ahp_neighbor_weight + c.ahp_path_weight;
    require(std::abs(ahp_sum - 1.0) <= 1e-9, "ahp_weights",
            fmt::format("ahp_speed_weight + ahp_neighbor_weight + ahp_path_weight must be 1 (got {})", ahp_sum));
    const double lik_sum = c.weight_reselection + c.weight_snr;
    require(std::abs(lik_sum - 1.0) <= 1e-9, "likelihood_weights",
            fmt::format("weight_reselection + weight_snr must be 1 (got {})", lik_sum));
    require_positive(c.poisson_rate, "poisson_rate");
    require(std::isfinite(c.snr_mean), "snr_mean", "must be finite");
    require_positive(c.snr_variance, "snr_variance");
    return c;
}

void set_config_value(SimConfig& config, std::string_view key, std::string_view value) {
    find_key(trim(key)).set(config, value);
}

std::string get_config_value(const SimConfig& config, std::string_view key) {
    return find_key(trim(key)).get(config);
}

const std::vector<std::string_view>& config_keys() {
    static const std::vector<std::string_view> keys = [] {
        std::vector<std::string_view> k;
        for (const auto& e : key_table()) k.push_back(e.name);
        return k;
    }();
    return keys;
}

SimConfig parse_config(std::string_view text) {
    SimConfig config;
    std::istringstream in{std::string(text)};
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::string_view view = line;
        if (const auto hash = view.find('#'); hash != std::string_view::npos) view = view.substr(0, hash);
        view = trim(view);
        if (view.empty()) continue;
        const auto eq = view.find('=');
        if (eq == std::string_view::npos) {
            throw ConfigError(fmt::format("line {}", lineno), "expected 'key = value'");
        }
        set_config_value(config, trim(view.substr(0, eq)), trim(view.substr(eq + 1)));
    }
    return config;
}

SimConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config file " + path.string());
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str());
}

std::string format_config(const SimConfig& config) {
    std::string out;
    for (const auto& e : key_table()) out += fmt::format("{} = {}\n", e.name, e.get(config));
    return out;
}

std::uint64_t config_digest(const SimConfig& config) {
    std::uint64_t h = 0xcbf29ce484222325ULL;  // FNV-1a
    for (const auto& e : key_table()) {
        if (e.name == "scheme" || e.name == "seed") continue;
        const auto line = fmt::format("{}={};", e.name, e.get(config));
        for (const unsigned char ch : line) {
            h ^= ch;
            h *= 0x100000001b3ULL;
        }
    }
    return h;
}

}  // namespace uavclust
