#include "uavclust/engine.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>

#include <fmt/format.h>

#include "uavclust/assignment.hpp"
#include "uavclust/channel.hpp"
#include "uavclust/mobility.hpp"

namespace uavclust {

namespace {

constexpr std::array<std::string_view, 9> kEventNames{
    "clustering_round", "cam_batch",       "beacon_ok",
    "beacon_missed",    "ch_selected",     "ch_departed",
    "ch_replaced_from_backup", "ch_reselected_full", "vehicle_respawn",
};

const Vehicle& vehicle_by_id(std::span<const Vehicle> vehicles, VehicleId id) {
    if (id.value < vehicles.size() && vehicles[id.value].id == id) return vehicles[id.value];
    const auto it = std::find_if(vehicles.begin(), vehicles.end(), [id](const Vehicle& v) { return v.id == id; });
    if (it == vehicles.end()) throw std::out_of_range(fmt::format("unknown vehicle {}", id.value));
    return *it;
}

const Cam& cam_by_id(std::span<const Cam> cams, VehicleId id) {
    if (id.value < cams.size() && cams[id.value].vehicle_id == id) return cams[id.value];
    const auto it = std::find_if(cams.begin(), cams.end(), [id](const Cam& c) { return c.vehicle_id == id; });
    if (it == cams.end()) throw std::out_of_range(fmt::format("no CAM from vehicle {}", id.value));
    return *it;
}

std::vector<Cam> member_cams(const Cluster& cluster, std::span<const Cam> cams) {
    std::vector<Cam> out;
    out.reserve(cluster.members.size());
    for (const auto& m : cluster.members) out.push_back(cam_by_id(cams, m.id));
    return out;
}

double members_avg_speed(std::span<const Cam> cams) {
    std::vector<double> speeds;
    speeds.reserve(cams.size());
    for (const auto& c : cams) speeds.push_back(velocity(c));
    return cluster_avg_speed(speeds);
}

void rebuild_backup(Cluster& cluster, std::span<const Cam> cams, const SelectionContext& ctx) {
    cluster.backup.clear();
    if (cluster.members.empty()) return;
    const auto mc = member_cams(cluster, cams);
    cluster.avg_speed = members_avg_speed(mc);
    std::vector<BackupCandidate> candidates;
    for (const auto& cam : mc) {
        if (cluster.ch && cam.vehicle_id == *cluster.ch) continue;
        candidates.push_back({cam.vehicle_id, std::abs(velocity(cam) - cluster.avg_speed), cam.neighbors.size(),
                              ctx.residual(cam)});
    }
    cluster.backup = build_backup_list(candidates, ctx.weights, ctx.scoring, ctx.path_order);
}

bool uses_backup(const SelectionContext& ctx) { return ctx.scheme == Scheme::Proposed || ctx.benchmark_backup; }

struct Selection {
    VehicleId ch;
    bool degraded = false;
};

Selection full_selection(const Cluster& cluster, std::span<const Cam> cams, const SelectionContext& ctx,
                         Rng& scheme_rng) {
    const auto mc = member_cams(cluster, cams);
    switch (ctx.scheme) {
        case Scheme::Random: {
            const auto ids = cluster.member_ids();
            return {select_ch_random(ids, scheme_rng), false};
        }
        case Scheme::Vmasc:
            return {select_ch_vmasc(mc), false};
        case Scheme::Proposed:
            break;
    }
    const auto decision = select_ch(mc, members_avg_speed(mc), ctx.residual, ctx.thresholds);
    return {*decision.chosen, decision.degraded};
}

void seat(Cluster& cluster, VehicleId ch, std::span<const Vehicle> vehicles) {
    cluster.ch = ch;
    cluster.ch_epoch = vehicle_by_id(vehicles, ch).epoch;
}

}  // namespace

std::string_view to_string(EventKind kind) { return kEventNames[static_cast<std::size_t>(kind)]; }

std::optional<EventKind> parse_event_kind(std::string_view name) {
    for (std::size_t i = 0; i < kEventNames.size(); ++i) {
        if (kEventNames[i] == name) return static_cast<EventKind>(i);
    }
    return std::nullopt;
}

std::vector<VehicleId> Cluster::member_ids() const {
    std::vector<VehicleId> ids;
    ids.reserve(members.size());
    for (const auto& m : members) ids.push_back(m.id);
    return ids;
}

bool Cluster::has_member(VehicleId id) const {
    return std::any_of(members.begin(), members.end(), [id](const ClusterMember& m) { return m.id == id; });
}

std::optional<VehicleId> detect_departure(const Cluster& cluster, const UavNode& uav,
                                          std::span<const Vehicle> vehicles) {
    if (!cluster.ch) return std::nullopt;
    const auto& ch = vehicle_by_id(vehicles, *cluster.ch);
    if (ch.epoch != cluster.ch_epoch) return cluster.ch;
    if (planar_distance(uav.pos, ch.pos) > uav.coverage_radius) return cluster.ch;
    return std::nullopt;
}

DepartureOutcome handle_departure(Cluster& cluster, const UavNode& uav, std::span<const Vehicle> vehicles,
                                  std::span<const Cam> cams, const SelectionContext& ctx, Rng& scheme_rng) {
    DepartureOutcome out;
    if (cluster.ch) {
        const auto departed = *cluster.ch;
        std::erase_if(cluster.members, [departed](const ClusterMember& m) { return m.id == departed; });
        cluster.ch.reset();
    }
    std::erase_if(cluster.members, [&](const ClusterMember& m) {
        const auto& v = vehicle_by_id(vehicles, m.id);
        const bool gone = v.epoch != m.epoch || planar_distance(uav.pos, v.pos) > uav.coverage_radius;
        if (gone) out.pruned.push_back(m.id);
        return gone;
    });
    if (cluster.members.empty()) {
        cluster.backup.clear();
        return out;
    }

    if (uses_backup(ctx)) {
        const auto present = cluster.member_ids();
        auto [next, rest] = pop_replacement(cluster.backup, present);
        cluster.backup = std::move(rest);
        if (next) {
            seat(cluster, *next, vehicles);
            out.kind = EventKind::ChReplacedFromBackup;
            out.new_ch = next;
            return out;
        }
    }

    const auto pick = full_selection(cluster, cams, ctx, scheme_rng);
    seat(cluster, pick.ch, vehicles);
    out.kind = EventKind::ChReselectedFull;
    out.new_ch = pick.ch;
    out.degraded = pick.degraded;
    if (uses_backup(ctx)) rebuild_backup(cluster, cams, ctx);
    return out;
}

namespace {

class Engine {
public:
    Engine(const SimConfig& config, const RunSeeds& seeds, std::uint32_t run_index)
        : cfg_(validate(config)),
          seeds_(seeds),
          run_index_(run_index),
          mobility_rng_(seeds.mobility),
          scheme_rng_(seeds.scheme),
          road_{cfg_.road_length, cfg_.lane_offsets} {}

    Trace run() {
        trace_.header = {cfg_.scheme, cfg_.seed,          run_index_,       seeds_,          config_digest(cfg_),
                         cfg_.num_vehicles, cfg_.num_uavs, cfg_.duration, cfg_.cam_interval};
        place_nodes();

        const auto per = [this](double interval) {
            return static_cast<std::uint64_t>(std::llround(interval / cfg_.slot));
        };
        const auto round_slots = per(cfg_.cluster_interval);
        const auto cam_slots = per(cfg_.cam_interval);
        const auto beacon_slots = per(cfg_.beacon_interval);

        for (std::uint64_t k = 0; k < cfg_.num_slots; ++k) {
            slot_ = k;
            now_ = static_cast<double>(k) * cfg_.slot;
            if (k > 0) advance();
            if (k % round_slots == 0) {
                clustering_round(k / round_slots);
            } else {
                if (k % beacon_slots == 0) beacon_check();
                if (k % cam_slots == 0) cam_batch();
            }
        }
        return std::move(trace_);
    }

private:
    void emit(EventKind kind, std::optional<UavId> uav, std::optional<VehicleId> vehicle, std::string payload = {}) {
        trace_.events.push_back({now_, kind, uav, vehicle, std::move(payload)});
    }

    void place_nodes() {
        std::uniform_real_distribution<double> along(0.0, cfg_.road_length);
        std::uniform_real_distribution<double> speed(cfg_.speed_min, cfg_.speed_max);
        vehicles_.resize(cfg_.num_vehicles);
        for (std::uint32_t i = 0; i < cfg_.num_vehicles; ++i) {
            auto& v = vehicles_[i];
            v.id = VehicleId{i};
            v.dir = i % 2 == 0 ? Direction::Forward : Direction::Backward;
            v.pos = {along(mobility_rng_), road_.lane_of(v.dir)};
            v.speed = speed(mobility_rng_);
            v.speed_history = {v.speed};
            v.tx_power = cfg_.vehicle_tx_power;
        }
        const double spacing = cfg_.road_length / cfg_.num_uavs;
        for (std::uint32_t j = 0; j < cfg_.num_uavs; ++j) {
            uavs_.push_back({UavId{j}, {(j + 0.5) * spacing, 0.0, cfg_.uav_altitude}, cfg_.uav_radius,
                             cfg_.uav_tx_power, cfg_.uav_max_speed});
            clusters_.push_back({UavId{j}, {}, std::nullopt, 0, {}, 0.0});
        }
        vehicle_cluster_.assign(cfg_.num_vehicles, std::nullopt);
        cams_.resize(cfg_.num_vehicles);
    }

    void advance() {
        auto outcome = step(vehicles_, road_, cfg_.slot, {cfg_.speed_min, cfg_.speed_max}, cfg_.speed_window,
                            mobility_rng_);
        vehicles_ = std::move(outcome.vehicles);
        for (const auto id : outcome.respawned) {
            const auto& v = vehicles_[id.value];
            emit(EventKind::VehicleRespawn, std::nullopt, id, fmt::format("x={};speed={}", v.pos.x, v.speed));
        }
    }

    void refresh_cams() {
        for (const auto& v : vehicles_) {
            Cam cam;
            cam.vehicle_id = v.id;
            cam.cluster_id = vehicle_cluster_[v.id.value];
            cam.is_ch = cam.cluster_id && clusters_[cam.cluster_id->value].ch == v.id;
            cam.pos = v.pos;
            cam.dir = v.dir;
            cam.speed = v.speed;
            cam.avg_speed = avg_speed(v.speed_history, cfg_.speed_window);
            cam.neighbors = neighbors_of(v, vehicles_, cfg_.neighbor_range);
            cams_[v.id.value] = std::move(cam);
        }
    }

    SelectionContext context_for(const UavNode& uav) const {
        SelectionContext ctx;
        ctx.scheme = cfg_.scheme;
        ctx.residual = {cfg_.residual_model, uav.pos, uav.coverage_radius, cfg_.residual_horizon, cfg_.road_length};
        ctx.thresholds = {cfg_.eps_distance, cfg_.eps_neighbors};
        ctx.weights = {cfg_.ahp_speed_weight, cfg_.ahp_neighbor_weight, cfg_.ahp_path_weight};
        ctx.scoring = cfg_.backup_scoring;
        ctx.path_order = cfg_.backup_path_order;
        ctx.benchmark_backup = cfg_.benchmark_backup;
        return ctx;
    }

    void move_uavs() {
        const double reach = cfg_.uav_max_speed * cfg_.cluster_interval;
        for (std::size_t j = 0; j < uavs_.size(); ++j) {
            const auto& members = clusters_[j].members;
            if (members.empty()) continue;
            double centroid = 0.0;
            for (const auto& m : members) centroid += vehicles_[m.id.value].pos.x;
            centroid /= static_cast<double>(members.size());
            const double target =
                std::clamp(uavs_[j].pos.x + std::clamp(centroid - uavs_[j].pos.x, -reach, reach), 0.0,
                           cfg_.road_length);
            const bool clear = std::all_of(uavs_.begin(), uavs_.end(), [&](const UavNode& other) {
                return other.id == uavs_[j].id || std::abs(other.pos.x - target) >= cfg_.uav_min_separation;
            });
            if (clear) uavs_[j].pos.x = target;
        }
    }

    void clustering_round(std::uint64_t round) {
        emit(EventKind::ClusteringRound, std::nullopt, std::nullopt, fmt::format("round={}", round));
        if (cfg_.uav_policy == UavPolicy::FollowCentroid && round > 0) move_uavs();

        const auto matrix = assign(vehicles_, uavs_, {cfg_.g0, cfg_.noise_power});
        for (auto& c : clusters_) c = Cluster{c.uav, {}, std::nullopt, 0, {}, 0.0};
        for (std::size_t i = 0; i < vehicles_.size(); ++i) {
            const auto uav = matrix.by_vehicle[i].uav;
            clusters_[uav.value].members.push_back({vehicles_[i].id, vehicles_[i].epoch});
            vehicle_cluster_[i] = uav;
        }
        refresh_cams();

        for (std::size_t j = 0; j < clusters_.size(); ++j) {
            auto& cluster = clusters_[j];
            if (cluster.members.empty()) continue;
            const auto ctx = context_for(uavs_[j]);
            const auto pick = full_selection(cluster, cams_, ctx, scheme_rng_);
            seat(cluster, pick.ch, vehicles_);
            cluster.avg_speed = members_avg_speed(member_cams(cluster, cams_));
            if (uses_backup(ctx)) rebuild_backup(cluster, cams_, ctx);
            emit(EventKind::ChSelected, cluster.uav, pick.ch,
                 fmt::format("members={};degraded={};backup={}", cluster.members.size(), pick.degraded ? 1 : 0,
                             cluster.backup.size()));
        }
        sample_snr();
    }

    void beacon_check() {
        for (std::size_t j = 0; j < clusters_.size(); ++j) {
            auto& cluster = clusters_[j];
            if (!cluster.ch) continue;
            const auto departed = detect_departure(cluster, uavs_[j], vehicles_);
            if (!departed) {
                emit(EventKind::BeaconOk, cluster.uav, cluster.ch);
                continue;
            }
            emit(EventKind::BeaconMissed, cluster.uav, departed);
            vehicle_cluster_[departed->value].reset();
            const auto ctx = context_for(uavs_[j]);
            const auto outcome = handle_departure(cluster, uavs_[j], vehicles_, cams_, ctx, scheme_rng_);
            for (const auto id : outcome.pruned) vehicle_cluster_[id.value].reset();
            emit(EventKind::ChDeparted, cluster.uav, departed,
                 fmt::format("pruned={};remaining={}", outcome.pruned.size(), cluster.members.size()));
            if (outcome.new_ch) {
                emit(outcome.kind, cluster.uav, outcome.new_ch,
                     fmt::format("members={};degraded={};backup={}", cluster.members.size(),
                                 outcome.degraded ? 1 : 0, cluster.backup.size()));
            }
        }
    }

    void cam_batch() {
        refresh_cams();
        for (std::size_t j = 0; j < clusters_.size(); ++j) {
            auto& cluster = clusters_[j];
            if (cluster.members.empty()) continue;
            cluster.avg_speed = members_avg_speed(member_cams(cluster, cams_));
            const auto ctx = context_for(uavs_[j]);
            if (cluster.ch && uses_backup(ctx)) rebuild_backup(cluster, cams_, ctx);
        }
        sample_snr();
    }

    // V2V SNR from the seated CH to its co-members, one cam_batch line per cluster.
    // Each link draws from its own stream keyed by (slot, endpoints).
    void sample_snr() {
        for (const auto& cluster : clusters_) {
            if (!cluster.ch) {
                emit(EventKind::CamBatch, cluster.uav, std::nullopt, fmt::format("members={}", cluster.members.size()));
                continue;
            }
            const auto& ch = vehicles_[cluster.ch->value];
            double sum = 0.0;
            std::size_t n = 0;
            for (const auto& m : cluster.members) {
                if (m.id == ch.id) continue;
                const auto& other = vehicles_[m.id.value];
                const double d = std::max(planar_distance(ch.pos, other.pos), cfg_.v2v_min_distance);
                Rng link(link_seed(seeds_.fading, slot_, ch.id, other.id));
                const double shadow = sample_shadowing(link, cfg_.shadowing_std_db);
                const double large = v2v_large_scale(d, shadow, cfg_.v2v_path_loss, cfg_.v2v_exponent);
                const double gain = cfg_.snr_model == SnrModel::Instantaneous
                                        ? v2v_gain(large, sample_fast_fading(link))
                                        : large;
                const double snr = v2v_snr(ch.tx_power, gain, cfg_.noise_power);
                sum += snr;
                ++n;
            }
            if (n == 0) {
                emit(EventKind::CamBatch, cluster.uav, cluster.ch, fmt::format("members={}", cluster.members.size()));
            } else {
                emit(EventKind::CamBatch, cluster.uav, cluster.ch,
                     fmt::format("members={};snr={}", cluster.members.size(),
                                 cfg_.snr_aggregate == SnrAggregate::Total ? sum : sum / static_cast<double>(n)));
            }
        }
    }

    SimConfig cfg_;
    RunSeeds seeds_;
    std::uint32_t run_index_;
    Rng mobility_rng_;
    Rng scheme_rng_;
    RoadModel road_;

    std::uint64_t slot_ = 0;
    double now_ = 0.0;
    std::vector<Vehicle> vehicles_;
    std::vector<UavNode> uavs_;
    std::vector<Cluster> clusters_;
    std::vector<std::optional<UavId>> vehicle_cluster_;
    std::vector<Cam> cams_;
    Trace trace_;
};

}  // namespace

Trace run(const SimConfig& config, const RunSeeds& seeds, std::uint32_t run_index) {
    return Engine(config, seeds, run_index).run();
}

Trace run(const SimConfig& config) { return run(config, derive_run_seeds(config.seed, 0, config.scheme), 0); }

}  // namespace uavclust
