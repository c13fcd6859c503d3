#include "uavclust/mobility.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace uavclust {

StepOutcome step(std::span<const Vehicle> vehicles, const RoadModel& road, double dt,
                 const SpeedRange& speeds, std::size_t window, Rng& rng) {
    StepOutcome out;
    out.vehicles.assign(vehicles.begin(), vehicles.end());
    if (dt == 0.0) return out;

    for (auto& v : out.vehicles) {
        v.pos.x += sign(v.dir) * v.speed * dt;
        if (v.pos.x < 0.0 || v.pos.x > road.length) {
            v.pos.x = v.dir == Direction::Forward ? 0.0 : road.length;
            v.pos.y = road.lane_of(v.dir);
            v.speed = std::uniform_real_distribution<double>(speeds.min, speeds.max)(rng);
            v.speed_history.clear();
            ++v.epoch;
            out.respawned.push_back(v.id);
        }
        v.speed_history.push_back(v.speed);
        if (v.speed_history.size() > window) {
            v.speed_history.erase(v.speed_history.begin(),
                                  v.speed_history.end() - static_cast<std::ptrdiff_t>(window));
        }
    }
    return out;
}

double avg_speed(std::span<const double> history, std::size_t window) {
    if (history.empty()) throw std::domain_error("avg_speed: empty speed history");
    const std::size_t n = std::min(history.size(), std::max<std::size_t>(window, 1));
    const auto recent = history.last(n);
    return std::accumulate(recent.begin(), recent.end(), 0.0) / static_cast<double>(n);
}

double residual_path(double coverage_radius, double v_avg, double horizon) {
    return 2.0 * coverage_radius - v_avg * horizon;
}

double residual_path_geometric(const AirPoint& uav, double coverage_radius, const RoadPoint& pos,
                               Direction dir, double road_length, double v_avg, double horizon) {
    const double dy = pos.y - uav.y;
    double inside = 0.0;
    if (std::abs(dy) <= coverage_radius) {
        const double half_chord = std::sqrt(coverage_radius * coverage_radius - dy * dy);
        const double exit_x = uav.x + sign(dir) * half_chord;
        inside = std::max(0.0, sign(dir) * (exit_x - pos.x));
    }
    const double to_road_end = dir == Direction::Forward ? road_length - pos.x : pos.x;
    return std::min(inside, std::max(0.0, to_road_end)) - v_avg * horizon;
}

std::vector<VehicleId> neighbors_of(const Vehicle& vehicle, std::span<const Vehicle> all, double range) {
    std::vector<VehicleId> out;
    for (const auto& other : all) {
        if (other.id == vehicle.id) continue;
        if (planar_distance(vehicle.pos, other.pos) <= range) out.push_back(other.id);
    }
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace uavclust
