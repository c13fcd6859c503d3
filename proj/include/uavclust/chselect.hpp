#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "uavclust/channel.hpp"
#include "uavclust/config.hpp"
#include "uavclust/types.hpp"

namespace uavclust {

/// Windowed average velocity along the road axis: dir * v_avg.
inline double velocity(const Cam& cam) { return sign(cam.dir) * cam.avg_speed; }

/// What the CH selector needs to know about one member.
struct ChCandidate {
    VehicleId id;
    double velocity = 0.0;      // signed average velocity
    std::size_t neighbors = 0;  // size of the CAM neighbour set
    double residual = 0.0;      // xi
};

struct ChThresholds {
    double eps_distance = 100.0;
    std::uint32_t eps_neighbors = 1;
};

/// Computes xi for a member of the cluster served by `uav`.
struct ResidualEstimator {
    ResidualModel model = ResidualModel::Printed;
    AirPoint uav;
    double coverage_radius = 0.0;
    double horizon = 0.0;
    double road_length = 0.0;

    double operator()(const Cam& cam) const;
};

struct ExaminedCandidate {
    VehicleId id;
    double speed_gap = 0.0;  // |v_avg - v_cl| on signed velocities
    double residual = 0.0;
    std::size_t neighbors = 0;
};

struct ChDecision {
    std::optional<VehicleId> chosen;
    std::vector<ExaminedCandidate> examined;
    bool degraded = false;
};

/// Arithmetic mean of the members' average velocities (v_cl).
double cluster_avg_speed(std::span<const double> member_avg_speeds);

/// Walks members by increasing |v_avg - v_cl| (ties: lower id) and takes the
/// first with xi >= eps_d and at least eps_n neighbours. If nobody qualifies
/// the closest-velocity member is taken and the decision is marked degraded.
/// Velocities are signed so that opposite-direction traffic is far apart.
ChDecision select_ch(std::span<const ChCandidate> candidates, double cluster_velocity, const ChThresholds& thresholds);

ChDecision select_ch(std::span<const Cam> cams, double cluster_velocity, const ResidualEstimator& residual,
                     const ChThresholds& thresholds);

std::vector<ChCandidate> make_candidates(std::span<const Cam> cams, const ResidualEstimator& residual);

/// Uniform pick over `members` (order as given) using the caller's stream.
VehicleId select_ch_random(std::span<const VehicleId> members, Rng& rng);

/// Member with the lowest mean relative velocity |dir * v_avg - dir_other * v_avg_other|
/// over its co-members; ties go to the lower id.
VehicleId select_ch_vmasc(std::span<const Cam> cams);

}  // namespace uavclust
