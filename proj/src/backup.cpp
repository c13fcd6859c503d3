#include "uavclust/backup.hpp"

#include <algorithm>
#include <functional>

namespace uavclust {

namespace {

// score_i = 1 - (#candidates strictly better than i) / (n - 1)
template <typename Better>
std::vector<double> rank_scores(std::span<const BackupCandidate> c, Better better) {
    const std::size_t n = c.size();
    std::vector<double> out(n, 1.0);
    if (n < 2) return out;
    for (std::size_t i = 0; i < n; ++i) {
        std::size_t ahead = 0;
        for (std::size_t k = 0; k < n; ++k) {
            if (better(c[k], c[i])) ++ahead;
        }
        out[i] = 1.0 - static_cast<double>(ahead) / static_cast<double>(n - 1);
    }
    return out;
}

}  // namespace

std::vector<BackupEntry> build_backup_list(std::span<const BackupCandidate> candidates, const AhpWeights& weights,
                                           BackupScoring scoring, PathOrder path_order) {
    const bool largest = path_order == PathOrder::LargestFirst;
    std::vector<BackupEntry> list;
    list.reserve(candidates.size());

    if (scoring == BackupScoring::Raw) {
        for (const auto& c : candidates) {
            const double n = static_cast<double>(c.neighbors);
            list.push_back({c.id, weights.speed * c.speed_gap + weights.neighbors * n + weights.path * (largest ? c.residual : -c.residual),
                            c.speed_gap, n, c.residual});
        }
    } else {
        const auto speed = rank_scores(candidates, [](const auto& a, const auto& b) { return a.speed_gap < b.speed_gap; });
        const auto nbrs = rank_scores(candidates, [](const auto& a, const auto& b) { return a.neighbors > b.neighbors; });
        const auto path = rank_scores(candidates, [largest](const auto& a, const auto& b) {
            return largest ? a.residual > b.residual : a.residual < b.residual;
        });
        for (std::size_t i = 0; i < candidates.size(); ++i) {
            const double score = weights.speed * speed[i] + weights.neighbors * nbrs[i] + weights.path * path[i];
            list.push_back({candidates[i].id, score, speed[i], nbrs[i], path[i]});
        }
    }

    std::sort(list.begin(), list.end(), [](const BackupEntry& a, const BackupEntry& b) {
        if (a.score != b.score) return a.score > b.score;
        return a.vehicle < b.vehicle;
    });
    return list;
}

std::pair<std::optional<VehicleId>, std::vector<BackupEntry>> pop_replacement(std::span<const BackupEntry> list,
                                                                              std::span<const VehicleId> present) {
    for (std::size_t i = 0; i < list.size(); ++i) {
        if (std::binary_search(present.begin(), present.end(), list[i].vehicle)) {
            return {list[i].vehicle, std::vector<BackupEntry>(list.begin() + static_cast<std::ptrdiff_t>(i) + 1, list.end())};
        }
    }
    return {std::nullopt, {}};
}

}  // namespace uavclust
