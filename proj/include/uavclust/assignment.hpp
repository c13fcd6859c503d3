#pragma once

#include <span>
#include <vector>

#include "uavclust/types.hpp"

namespace uavclust {

struct A2gParams {
    double g0 = 1e-5;
    double noise_power = 1e-14;
};

struct Assignment {
    UavId uav;
    double snr = 0.0;  // the winning, hypothetical delta = 1 SNR
};

/// One entry per vehicle (same order as the input) plus per-UAV member counts.
struct AssignmentMatrix {
    std::vector<Assignment> by_vehicle;
    std::vector<std::size_t> counts;  // indexed like the UAV input
};

/// Column index of the row maximum; ties go to the lowest UAV id.
std::size_t best_uav(std::span<const double> snr_row, std::span<const UavNode> uavs);

/// Attaches every vehicle to the UAV with the largest A2G SNR. Coverage radius
/// is ignored here: a vehicle outside every disc still joins its best UAV.
AssignmentMatrix assign(std::span<const Vehicle> vehicles, std::span<const UavNode> uavs, const A2gParams& params);

/// Same rule applied to a precomputed SNR matrix (rows = vehicles).
AssignmentMatrix assign_from_snr(std::span<const std::vector<double>> snr, std::span<const UavNode> uavs);

}  // namespace uavclust
