#pragma once

#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "uavclust/config.hpp"
#include "uavclust/types.hpp"

namespace uavclust {

struct AhpWeights {
    double speed = 0.5;
    double neighbors = 0.25;
    double path = 0.25;
};

/// One non-CH member as seen by the backup ranking.
struct BackupCandidate {
    VehicleId id;
    double speed_gap = 0.0;     // |v_avg - v_cl|, smaller is better
    std::size_t neighbors = 0;  // larger is better
    double residual = 0.0;      // xi, larger is better
};

struct BackupEntry {
    VehicleId vehicle;
    double score = 0.0;
    double speed_score = 0.0;
    double neighbor_score = 0.0;
    double path_score = 0.0;
};

/// Ranks the remaining members for CH succession.
///
/// With BackupScoring::Rank each criterion is turned into a rank score in
/// [0, 1]: the best value maps to 1, the worst to 0, linearly in rank, and
/// equal values share the better rank. The entry score is the weighted sum.
/// BackupScoring::Raw uses the raw values w_s*v_d + w_n*n + w_p*xi instead.
/// SmallestFirst flips the residual criterion (raw: its sign).
/// The result is sorted by score descending, ties by lower vehicle id.
std::vector<BackupEntry> build_backup_list(std::span<const BackupCandidate> candidates, const AhpWeights& weights,
                                           BackupScoring scoring = BackupScoring::Rank,
                                           PathOrder path_order = PathOrder::LargestFirst);

/// Removes and returns the best entry whose vehicle is still in `present`
/// (sorted ascending). Stale entries above it are dropped as well.
std::pair<std::optional<VehicleId>, std::vector<BackupEntry>> pop_replacement(std::span<const BackupEntry> list,
                                                                              std::span<const VehicleId> present);

}  // namespace uavclust
