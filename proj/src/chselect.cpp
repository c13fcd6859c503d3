#include "uavclust/chselect.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "uavclust/mobility.hpp"

namespace uavclust {

double ResidualEstimator::operator()(const Cam& cam) const {
    if (model == ResidualModel::Geometric) {
        return residual_path_geometric(uav, coverage_radius, cam.pos, cam.dir, road_length, cam.avg_speed, horizon);
    }
    return residual_path(coverage_radius, cam.avg_speed, horizon);
}

double cluster_avg_speed(std::span<const double> member_avg_speeds) {
    if (member_avg_speeds.empty()) throw std::domain_error("cluster_avg_speed: empty cluster");
    return std::accumulate(member_avg_speeds.begin(), member_avg_speeds.end(), 0.0) /
           static_cast<double>(member_avg_speeds.size());
}

ChDecision select_ch(std::span<const ChCandidate> candidates, double cluster_velocity, const ChThresholds& thresholds) {
    ChDecision decision;
    if (candidates.empty()) return decision;

    std::vector<ExaminedCandidate> order;
    order.reserve(candidates.size());
    for (const auto& c : candidates) {
        order.push_back({c.id, std::abs(c.velocity - cluster_velocity), c.residual, c.neighbors});
    }
    std::sort(order.begin(), order.end(), [](const auto& a, const auto& b) {
        if (a.speed_gap != b.speed_gap) return a.speed_gap < b.speed_gap;
        return a.id < b.id;
    });

    for (const auto& c : order) {
        decision.examined.push_back(c);
        if (c.residual >= thresholds.eps_distance && c.neighbors >= thresholds.eps_neighbors) {
            decision.chosen = c.id;
            return decision;
        }
    }
    decision.chosen = order.front().id;
    decision.degraded = true;
    return decision;
}

std::vector<ChCandidate> make_candidates(std::span<const Cam> cams, const ResidualEstimator& residual) {
    std::vector<ChCandidate> out;
    out.reserve(cams.size());
    for (const auto& cam : cams) {
        out.push_back({cam.vehicle_id, velocity(cam), cam.neighbors.size(), residual(cam)});
    }
    return out;
}

ChDecision select_ch(std::span<const Cam> cams, double cluster_velocity, const ResidualEstimator& residual,
                     const ChThresholds& thresholds) {
    const auto candidates = make_candidates(cams, residual);
    return select_ch(candidates, cluster_velocity, thresholds);
}

VehicleId select_ch_random(std::span<const VehicleId> members, Rng& rng) {
    if (members.empty()) throw std::domain_error("select_ch_random: empty cluster");
    std::uniform_int_distribution<std::size_t> pick(0, members.size() - 1);
    return members[pick(rng)];
}

VehicleId select_ch_vmasc(std::span<const Cam> cams) {
    if (cams.empty()) throw std::domain_error("select_ch_vmasc: empty cluster");
    if (cams.size() == 1) return cams.front().vehicle_id;

    std::optional<VehicleId> best;
    double best_score = 0.0;
    for (const auto& self : cams) {
        double sum = 0.0;
        for (const auto& other : cams) {
            if (other.vehicle_id == self.vehicle_id) continue;
            sum += std::abs(velocity(self) - velocity(other));
        }
        const double score = sum / static_cast<double>(cams.size() - 1);
        if (!best || score < best_score || (score == best_score && self.vehicle_id < *best)) {
            best = self.vehicle_id;
            best_score = score;
        }
    }
    return *best;
}

}  // namespace uavclust
