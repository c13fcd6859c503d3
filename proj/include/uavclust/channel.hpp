#pragma once

#include <random>

#include "uavclust/types.hpp"

namespace uavclust {

using Rng = std::mt19937_64;

struct LinkSample {
    double distance = 0.0;
    double gain = 0.0;
    double snr = 0.0;
};

// Air-to-ground links: free-space, line-of-sight, no small-scale fading.

/// 3D distance between a hovering UAV and a vehicle; never below the altitude.
double a2g_distance(const AirPoint& uav, const RoadPoint& vehicle);

/// g0 / d^2. Throws std::domain_error for d <= 0.
double a2g_gain(double distance, double g0);

/// delta * P * g / noise; zero for an unassigned link.
double a2g_snr(bool assigned, double uav_power, double gain, double noise);

// Vehicle-to-vehicle links: mu * L * d^-eta large-scale term times an
// exponential fast-fading draw.

double v2v_large_scale(double distance, double shadowing, double path_loss, double exponent);
double v2v_gain(double large_scale, double fast_fading);
double v2v_snr(double vehicle_power, double gain, double noise);

double dbm_to_watts(double dbm);

double planar_distance(const RoadPoint& a, const RoadPoint& b);
double planar_distance(const AirPoint& a, const RoadPoint& b);

/// Unit-mean exponential draw.
double sample_fast_fading(Rng& rng);

/// Log-normal shadowing with median 1 and the given spread in dB.
double sample_shadowing(Rng& rng, double std_db);

}  // namespace uavclust
