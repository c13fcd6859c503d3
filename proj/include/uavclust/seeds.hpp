#pragma once

#include <cstdint>

#include "uavclust/types.hpp"

namespace uavclust {

/// Independent RNG stream seeds for one run.
struct RunSeeds {
    std::uint64_t mobility = 0;
    std::uint64_t fading = 0;
    std::uint64_t scheme = 0;
    auto operator<=>(const RunSeeds&) const = default;
};

/// Deterministic derivation: each stream seed is drawn from
/// std::seed_seq{base_lo, base_hi, run_index, stream_tag}, where the tag is
/// 1 for mobility, 2 for fading and 16 + scheme index for the scheme stream.
/// Mobility and fading therefore coincide across schemes for a run index.
RunSeeds derive_run_seeds(std::uint64_t base, std::uint32_t run_index, Scheme scheme);

/// Seed for the channel draw of one V2V link in one slot. Symmetric in the
/// endpoints, so every scheme sharing a fading seed sees the same channel.
std::uint64_t link_seed(std::uint64_t fading, std::uint64_t slot, VehicleId a, VehicleId b);

}  // namespace uavclust
