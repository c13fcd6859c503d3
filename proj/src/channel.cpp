#include "uavclust/channel.hpp"

#include <cmath>
#include <stdexcept>

namespace uavclust {

double a2g_distance(const AirPoint& uav, const RoadPoint& vehicle) {
    const double dx = vehicle.x - uav.x;
    const double dy = vehicle.y - uav.y;
    return std::sqrt(dx * dx + dy * dy + uav.h * uav.h);
}

double a2g_gain(double distance, double g0) {
    if (!(distance > 0.0)) throw std::domain_error("a2g_gain: distance must be > 0");
    return g0 / (distance * distance);
}

double a2g_snr(bool assigned, double uav_power, double gain, double noise) {
    if (!(noise > 0.0)) throw std::domain_error("a2g_snr: noise power must be > 0");
    if (!assigned) return 0.0;
    return uav_power * gain / noise;
}

double v2v_large_scale(double distance, double shadowing, double path_loss, double exponent) {
    if (!(distance > 0.0)) throw std::domain_error("v2v_large_scale: distance must be > 0");
    if (!(shadowing > 0.0)) throw std::domain_error("v2v_large_scale: shadowing must be > 0");
    return shadowing * path_loss * std::pow(distance, -exponent);
}

double v2v_gain(double large_scale, double fast_fading) {
    if (fast_fading < 0.0) throw std::domain_error("v2v_gain: fast fading draw must be >= 0");
    return fast_fading * large_scale;
}

double v2v_snr(double vehicle_power, double gain, double noise) {
    if (!(noise > 0.0)) throw std::domain_error("v2v_snr: noise power must be > 0");
    return vehicle_power * gain / noise;
}

double dbm_to_watts(double dbm) { return std::pow(10.0, dbm / 10.0) * 1e-3; }

double planar_distance(const RoadPoint& a, const RoadPoint& b) { return std::hypot(a.x - b.x, a.y - b.y); }

double planar_distance(const AirPoint& a, const RoadPoint& b) { return std::hypot(a.x - b.x, a.y - b.y); }

double sample_fast_fading(Rng& rng) { return std::exponential_distribution<double>(1.0)(rng); }

double sample_shadowing(Rng& rng, double std_db) {
    if (std_db == 0.0) return 1.0;
    const double db = std::normal_distribution<double>(0.0, std_db)(rng);
    return std::pow(10.0, db / 10.0);
}

}  // namespace uavclust
