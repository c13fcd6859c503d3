#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "uavclust/backup.hpp"
#include "uavclust/chselect.hpp"
#include "uavclust/config.hpp"
#include "uavclust/seeds.hpp"
#include "uavclust/types.hpp"

namespace uavclust {

enum class EventKind : std::uint8_t {
    ClusteringRound,
    CamBatch,
    BeaconOk,
    BeaconMissed,
    ChSelected,
    ChDeparted,
    ChReplacedFromBackup,
    ChReselectedFull,
    VehicleRespawn,
};

std::string_view to_string(EventKind kind);
std::optional<EventKind> parse_event_kind(std::string_view name);

/// One trace line. `payload` is a `;`-separated list of key=value pairs.
struct SimEvent {
    double time = 0.0;
    EventKind kind = EventKind::ClusteringRound;
    std::optional<UavId> uav;
    std::optional<VehicleId> vehicle;
    std::string payload;

    bool operator==(const SimEvent&) const = default;
};

struct TraceHeader {
    Scheme scheme = Scheme::Proposed;
    std::uint64_t seed = 0;
    std::uint32_t run_index = 0;
    RunSeeds seeds;
    std::uint64_t digest = 0;
    std::uint32_t num_vehicles = 0;
    std::uint32_t num_uavs = 0;
    double duration = 0.0;
    double cam_interval = 0.0;

    bool operator==(const TraceHeader&) const = default;
};

struct Trace {
    TraceHeader header;
    std::vector<SimEvent> events;

    bool operator==(const Trace&) const = default;
};

struct ClusterMember {
    VehicleId id;
    std::uint32_t epoch = 0;  // vehicle epoch when it joined
};

struct Cluster {
    UavId uav;
    std::vector<ClusterMember> members;  // sorted by id
    std::optional<VehicleId> ch;
    std::uint32_t ch_epoch = 0;
    std::vector<BackupEntry> backup;
    double avg_speed = 0.0;

    std::vector<VehicleId> member_ids() const;
    bool has_member(VehicleId id) const;
};

/// Everything a CH (re)selection needs besides the cluster itself.
struct SelectionContext {
    Scheme scheme = Scheme::Proposed;
    ResidualEstimator residual;
    ChThresholds thresholds;
    AhpWeights weights;
    BackupScoring scoring = BackupScoring::Rank;
    PathOrder path_order = PathOrder::LargestFirst;
    bool benchmark_backup = false;
};

struct DepartureOutcome {
    EventKind kind = EventKind::ChReselectedFull;  // or ChReplacedFromBackup
    std::optional<VehicleId> new_ch;               // empty when the cluster emptied
    std::vector<VehicleId> pruned;                 // unreachable members dropped
    bool degraded = false;
};

/// The CH has departed when its beacon cannot reach the UAV (planar distance
/// beyond r_U) or when it respawned since it was seated.
std::optional<VehicleId> detect_departure(const Cluster& cluster, const UavNode& uav, std::span<const Vehicle> vehicles);

/// Removes the departed CH, drops members that are no longer reachable, then
/// seats a successor: proposed scheme from the backup list, falling back to a
/// full selection; benchmarks rerun their own selector. `cams` is indexed by
/// vehicle id.
DepartureOutcome handle_departure(Cluster& cluster, const UavNode& uav, std::span<const Vehicle> vehicles,
                                  std::span<const Cam> cams, const SelectionContext& ctx, Rng& scheme_rng);

/// Runs one seeded simulation; the returned trace is the complete record.
Trace run(const SimConfig& config, const RunSeeds& seeds, std::uint32_t run_index = 0);

/// Seeds derived from config.seed as run index 0 of config.scheme.
Trace run(const SimConfig& config);

}  // namespace uavclust
