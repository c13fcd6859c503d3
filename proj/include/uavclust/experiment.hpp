#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "uavclust/config.hpp"
#include "uavclust/engine.hpp"
#include "uavclust/metrics.hpp"
#include "uavclust/seeds.hpp"

namespace uavclust {

enum class SweepVar : std::uint8_t { None, Vehicles, Duration };

std::string_view to_string(SweepVar v);
std::optional<SweepVar> parse_sweep_var(std::string_view name);

struct ExperimentSpec {
    SimConfig base;
    std::vector<Scheme> schemes{Scheme::Proposed, Scheme::Vmasc, Scheme::Random};
    SweepVar sweep = SweepVar::None;
    std::vector<double> values;
    std::uint32_t runs = 1;
    std::uint64_t seed = 1;
    std::uint32_t workers = 1;
    std::filesystem::path out;
};

/// Throws ConfigError on an inconsistent spec.
void check(const ExperimentSpec& spec);

struct PlannedRun {
    std::uint32_t run_index = 0;
    Scheme scheme = Scheme::Proposed;
    RunSeeds seeds;
};

/// One entry per (scheme, run) in that order. Schemes share the mobility and
/// fading seeds of a run index; see derive_run_seeds.
std::vector<PlannedRun> seed_plan(std::uint64_t seed_base, std::uint32_t runs, std::span<const Scheme> schemes);

/// Runs every planned simulation on up to `workers` threads. The result is
/// ordered like the plan regardless of the worker count.
std::vector<Trace> run_batch(const SimConfig& config, std::span<const PlannedRun> plan, std::uint32_t workers);

/// Applies a sweep value to a copy of the base configuration.
SimConfig with_sweep_value(const SimConfig& base, SweepVar var, double value);

/// Aggregate of one configuration point; `value` is empty without a sweep.
struct PointResult {
    std::optional<double> value;
    Aggregate aggregate;
};

/// Runs the experiment and writes its output directory:
///   config.echo, traces/<scheme>-<run>.trace, aggregate.<scheme>.json, plots/*.dat
/// and, for sweeps, one such directory per point plus plots/reselections_vs_<var>.dat.
/// Output is staged next to `out` and moved in place only on success.
std::vector<PointResult> execute(const ExperimentSpec& spec);

/// Re-reads <in>/traces/*.trace (and <in>/config.echo) and rewrites the
/// aggregate documents and plot files under `out`.
Aggregate reaggregate(const std::filesystem::path& in, const std::filesystem::path& out);

/// Aggregate document for one scheme as JSON text.
std::string aggregate_document(const Aggregate& agg, const SchemeAggregate& scheme, std::uint64_t seed_base);

}  // namespace uavclust
