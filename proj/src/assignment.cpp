#include "uavclust/assignment.hpp"

#include <stdexcept>

#include "uavclust/channel.hpp"

namespace uavclust {

std::size_t best_uav(std::span<const double> snr_row, std::span<const UavNode> uavs) {
    if (uavs.empty() || snr_row.size() != uavs.size()) {
        throw std::domain_error("best_uav: SNR row does not match a non-empty UAV set");
    }
    std::size_t best = 0;
    for (std::size_t j = 1; j < snr_row.size(); ++j) {
        const bool better = snr_row[j] > snr_row[best] || (snr_row[j] == snr_row[best] && uavs[j].id < uavs[best].id);
        if (better) best = j;
    }
    return best;
}

AssignmentMatrix assign_from_snr(std::span<const std::vector<double>> snr, std::span<const UavNode> uavs) {
    if (uavs.empty()) throw std::domain_error("assign: no UAVs");
    AssignmentMatrix out;
    out.counts.assign(uavs.size(), 0);
    out.by_vehicle.reserve(snr.size());
    for (const auto& row : snr) {
        const auto j = best_uav(row, uavs);
        out.by_vehicle.push_back({uavs[j].id, row[j]});
        ++out.counts[j];
    }
    return out;
}

AssignmentMatrix assign(std::span<const Vehicle> vehicles, std::span<const UavNode> uavs, const A2gParams& params) {
    if (uavs.empty()) throw std::domain_error("assign: no UAVs");
    std::vector<std::vector<double>> snr(vehicles.size(), std::vector<double>(uavs.size()));
    for (std::size_t i = 0; i < vehicles.size(); ++i) {
        for (std::size_t j = 0; j < uavs.size(); ++j) {
            const double d = a2g_distance(uavs[j].pos, vehicles[i].pos);
            snr[i][j] = a2g_snr(true, uavs[j].tx_power, a2g_gain(d, params.g0), params.noise_power);
        }
    }
    return assign_from_snr(snr, uavs);
}

}  // namespace uavclust
