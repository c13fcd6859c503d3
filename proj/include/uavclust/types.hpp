#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

namespace uavclust {

struct VehicleId {
    std::uint32_t value = 0;
    auto operator<=>(const VehicleId&) const = default;
};

struct UavId {
    std::uint32_t value = 0;
    auto operator<=>(const UavId&) const = default;
};

/// Position on the road surface: x along the road, y the lateral lane offset.
struct RoadPoint {
    double x = 0.0;
    double y = 0.0;
};

struct AirPoint {
    double x = 0.0;
    double y = 0.0;
    double h = 0.0;
};

/// Travel direction along the road axis.
enum class Direction : std::int8_t { Backward = -1, Forward = 1 };

inline double sign(Direction d) { return d == Direction::Forward ? 1.0 : -1.0; }

struct Vehicle {
    VehicleId id;
    RoadPoint pos;
    Direction dir = Direction::Forward;
    double speed = 0.0;                 // m/s
    std::vector<double> speed_history;  // oldest first, at most T_w samples
    double tx_power = 0.0;              // W
    // Incremented on every respawn; a changed epoch means a different physical car.
    std::uint32_t epoch = 0;
};

/// Cooperative awareness message as broadcast by one vehicle.
struct Cam {
    VehicleId vehicle_id;
    std::optional<UavId> cluster_id;
    bool is_ch = false;
    RoadPoint pos;
    Direction dir = Direction::Forward;
    double speed = 0.0;
    double avg_speed = 0.0;
    std::vector<VehicleId> neighbors;  // sorted, never contains vehicle_id
};

struct UavNode {
    UavId id;
    AirPoint pos;
    double coverage_radius = 0.0;  // r_U, m
    double tx_power = 0.0;         // W
    double max_speed = 0.0;        // m/s
};

enum class Scheme : std::uint8_t { Proposed, Random, Vmasc };

std::string_view to_string(Scheme s);
std::optional<Scheme> parse_scheme(std::string_view name);

}  // namespace uavclust
