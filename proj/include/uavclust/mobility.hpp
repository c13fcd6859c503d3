#pragma once

#include <array>
#include <span>
#include <vector>

#include "uavclust/channel.hpp"
#include "uavclust/types.hpp"

namespace uavclust {

/// Straight two-lane two-way road. Lane 0 carries forward traffic.
struct RoadModel {
    double length = 1000.0;
    std::array<double, 2> lane_offsets{-2.0, 2.0};

    double lane_of(Direction d) const { return d == Direction::Forward ? lane_offsets[0] : lane_offsets[1]; }
};

struct SpeedRange {
    double min = 0.0;
    double max = 0.0;
};

struct StepOutcome {
    std::vector<Vehicle> vehicles;
    std::vector<VehicleId> respawned;
};

/// Advances every vehicle by dir * speed * dt. A vehicle that leaves the road
/// reappears at the entry end of its lane with a fresh uniform speed, a cleared
/// history, and a bumped epoch. Each vehicle's speed is then appended to its
/// history, which is trimmed to `window` samples. dt == 0 leaves everything as is.
StepOutcome step(std::span<const Vehicle> vehicles, const RoadModel& road, double dt,
                 const SpeedRange& speeds, std::size_t window, Rng& rng);

/// Mean of the newest min(|history|, window) samples. Throws on empty history.
double avg_speed(std::span<const double> history, std::size_t window);

/// Residual path 2 r_U - v_avg * horizon. Negative values are meaningful.
double residual_path(double coverage_radius, double v_avg, double horizon);

/// Distance the vehicle can still travel inside the UAV's coverage disc (and
/// on the road) along its direction, minus v_avg * horizon.
double residual_path_geometric(const AirPoint& uav, double coverage_radius, const RoadPoint& pos,
                               Direction dir, double road_length, double v_avg, double horizon);

/// Ids of every other vehicle within `range` (planar), sorted ascending.
std::vector<VehicleId> neighbors_of(const Vehicle& vehicle, std::span<const Vehicle> all, double range);

}  // namespace uavclust
