#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "uavclust/types.hpp"

namespace uavclust {

enum class ResidualModel : std::uint8_t { Printed, Geometric };
enum class BackupScoring : std::uint8_t { Rank, Raw };
// Which end of the residual-path criterion ranks best in the backup list.
enum class PathOrder : std::uint8_t { LargestFirst, SmallestFirst };
enum class SnrModel : std::uint8_t { Instantaneous, LargeScale };
enum class UavPolicy : std::uint8_t { Static, FollowCentroid };
enum class SnrAggregate : std::uint8_t { Total, Mean };

/// Every physical and algorithmic parameter of one simulation run.
/// Internally SI throughout: metres, seconds, m/s, watts.
struct SimConfig {
    // population and geometry
    std::uint32_t num_vehicles = 12;
    std::uint32_t num_uavs = 3;
    double road_length = 1000.0;
    std::array<double, 2> lane_offsets{-2.0, 2.0};  // forward lane, backward lane
    double speed_min = 40.0 / 3.6;
    double speed_max = 60.0 / 3.6;
    double uav_altitude = 100.0;
    double uav_radius = 500.0;
    double uav_min_separation = 100.0;
    double uav_max_speed = 20.0;

    // time
    double slot = 1.0;
    double duration = 700.0;
    double cam_interval = 10.0;
    double beacon_interval = 10.0;
    double cluster_interval = 70.0;
    std::uint32_t speed_window = 10;  // T_w, in slots

    // radio
    double g0 = 1e-5;
    double noise_power = 3.981071705534972e-15;      // -114 dBm
    double vehicle_tx_power = 1e-10;                 // -70 dBm
    double uav_tx_power = 1.0;
    double v2v_path_loss = 1e-5;                     // L
    double v2v_exponent = 3.0;                       // path-loss exponent
    double shadowing_std_db = 4.0;
    double v2v_min_distance = 1.0;
    SnrModel snr_model = SnrModel::Instantaneous;
    SnrAggregate snr_aggregate = SnrAggregate::Total;  // CH to co-members, per sample

    // clustering
    double neighbor_range = 50.0;
    double eps_distance = 100.0;                     // epsilon_d, m
    std::uint32_t eps_neighbors = 1;                 // epsilon_n
    ResidualModel residual_model = ResidualModel::Geometric;
    double residual_horizon = 20.0;
    double ahp_speed_weight = 0.5;
    double ahp_neighbor_weight = 0.25;
    double ahp_path_weight = 0.25;
    BackupScoring backup_scoring = BackupScoring::Rank;
    PathOrder backup_path_order = PathOrder::LargestFirst;
    bool benchmark_backup = false;
    UavPolicy uav_policy = UavPolicy::Static;

    // robustness likelihood
    double weight_reselection = 0.6;
    double weight_snr = 0.4;
    double poisson_rate = 0.5;
    double snr_mean = 1.0;
    double snr_variance = 0.1;

    Scheme scheme = Scheme::Proposed;
    std::uint64_t seed = 1;

    // Derived by validate().
    std::uint64_t num_slots = 0;
};

/// Thrown for any invariant violation; field() names the offending key.
class ConfigError : public std::runtime_error {
public:
    ConfigError(std::string field, const std::string& what)
        : std::runtime_error(field + ": " + what), field_(std::move(field)) {}
    const std::string& field() const noexcept { return field_; }

private:
    std::string field_;
};

/// Checks every invariant and fills in derived quantities.
SimConfig validate(SimConfig config);

/// Sets one key from its textual form. Accepts unit tags where documented
/// (km/h | m/s for speeds, dBm | W for powers, dB for shadowing).
void set_config_value(SimConfig& config, std::string_view key, std::string_view value);

/// Canonical textual value of one key (SI units, round-trippable).
std::string get_config_value(const SimConfig& config, std::string_view key);

const std::vector<std::string_view>& config_keys();

/// Flat `key = value` text; `#` starts a comment. Unknown keys are errors.
SimConfig parse_config(std::string_view text);
SimConfig load_config(const std::filesystem::path& path);

/// Canonical dump of every key, one per line, in config_keys() order.
std::string format_config(const SimConfig& config);

/// Stable 64-bit digest of all keys except scheme and seed; traces with equal
/// digests come from the same configuration family.
std::uint64_t config_digest(const SimConfig& config);

}  // namespace uavclust
