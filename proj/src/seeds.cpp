#include "uavclust/seeds.hpp"

#include <algorithm>
#include <array>
#include <random>

namespace uavclust {

namespace {

std::uint64_t stream_seed(std::uint64_t base, std::uint32_t run_index, std::uint32_t tag) {
    std::seed_seq seq{static_cast<std::uint32_t>(base & 0xffffffffu), static_cast<std::uint32_t>(base >> 32),
                      run_index, tag};
    std::array<std::uint32_t, 2> words{};
    seq.generate(words.begin(), words.end());
    return (static_cast<std::uint64_t>(words[0]) << 32) | words[1];
}

}  // namespace

std::uint64_t link_seed(std::uint64_t fading, std::uint64_t slot, VehicleId a, VehicleId b) {
    const auto [lo, hi] = std::minmax(a.value, b.value);
    std::seed_seq seq{static_cast<std::uint32_t>(fading & 0xffffffffu), static_cast<std::uint32_t>(fading >> 32),
                      static_cast<std::uint32_t>(slot & 0xffffffffu), static_cast<std::uint32_t>(slot >> 32), lo, hi};
    std::array<std::uint32_t, 2> words{};
    seq.generate(words.begin(), words.end());
    return (static_cast<std::uint64_t>(words[0]) << 32) | words[1];
}

RunSeeds derive_run_seeds(std::uint64_t base, std::uint32_t run_index, Scheme scheme) {
    return {stream_seed(base, run_index, 1), stream_seed(base, run_index, 2),
            stream_seed(base, run_index, 16 + static_cast<std::uint32_t>(scheme))};
}

}  // namespace uavclust
