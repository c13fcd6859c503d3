#include "uavclust/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <fstream>
#include <mutex>
#include <thread>
#include <unistd.h>

#include <fmt/format.h>

#include "json.hpp"
#include "uavclust/trace_io.hpp"

namespace fs = std::filesystem;

namespace uavclust {

std::string_view to_string(SweepVar v) {
    switch (v) {
        case SweepVar::None: return "none";
        case SweepVar::Vehicles: return "vehicles";
        case SweepVar::Duration: return "duration";
    }
    return "none";
}

std::optional<SweepVar> parse_sweep_var(std::string_view name) {
    if (name == "none") return SweepVar::None;
    if (name == "vehicles") return SweepVar::Vehicles;
    if (name == "duration") return SweepVar::Duration;
    return std::nullopt;
}

void check(const ExperimentSpec& spec) {
    if (spec.runs < 1) throw ConfigError("runs", "must be >= 1");
    if (spec.workers < 1) throw ConfigError("workers", "must be >= 1");
    if (spec.schemes.empty()) throw ConfigError("scheme", "at least one scheme is required");
    for (std::size_t i = 0; i < spec.schemes.size(); ++i) {
        for (std::size_t k = i + 1; k < spec.schemes.size(); ++k) {
            if (spec.schemes[i] == spec.schemes[k]) throw ConfigError("scheme", "schemes must be distinct");
        }
    }
    if (spec.sweep != SweepVar::None) {
        if (spec.values.empty()) throw ConfigError("values", "a sweep needs at least one value");
        for (std::size_t i = 1; i < spec.values.size(); ++i) {
            if (!(spec.values[i] > spec.values[i - 1])) throw ConfigError("values", "must be strictly increasing");
        }
        for (const double v : spec.values) validate(with_sweep_value(spec.base, spec.sweep, v));
    } else {
        validate(spec.base);
    }
    if (spec.out.empty()) throw ConfigError("out", "an output directory is required");
}

std::vector<PlannedRun> seed_plan(std::uint64_t seed_base, std::uint32_t runs, std::span<const Scheme> schemes) {
    std::vector<PlannedRun> plan;
    plan.reserve(static_cast<std::size_t>(runs) * schemes.size());
    for (const auto scheme : schemes) {
        for (std::uint32_t r = 0; r < runs; ++r) plan.push_back({r, scheme, derive_run_seeds(seed_base, r, scheme)});
    }
    return plan;
}

std::vector<Trace> run_batch(const SimConfig& config, std::span<const PlannedRun> plan, std::uint32_t workers) {
    const auto validated = validate(config);
    std::vector<Trace> traces(plan.size());
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;

    const auto work = [&] {
        for (std::size_t i = next++; i < plan.size(); i = next++) {
            try {
                auto cfg = validated;
                cfg.scheme = plan[i].scheme;
                traces[i] = run(cfg, plan[i].seeds, plan[i].run_index);
            } catch (...) {
                std::lock_guard lock(failure_mutex);
                if (!failure) failure = std::current_exception();
            }
        }
    };

    const auto n = std::max<std::uint32_t>(1, std::min<std::uint32_t>(workers, static_cast<std::uint32_t>(plan.size())));
    if (n == 1) {
        work();
    } else {
        std::vector<std::jthread> pool;
        for (std::uint32_t w = 0; w < n; ++w) pool.emplace_back(work);
    }
    if (failure) std::rethrow_exception(failure);
    return traces;
}

SimConfig with_sweep_value(const SimConfig& base, SweepVar var, double value) {
    auto cfg = base;
    switch (var) {
        case SweepVar::Vehicles:
            if (value < 1 || value != std::floor(value)) {
                throw ConfigError("values", fmt::format("vehicle counts must be positive integers (got {})", value));
            }
            cfg.num_vehicles = static_cast<std::uint32_t>(value);
            break;
        case SweepVar::Duration:
            cfg.duration = value;
            break;
        case SweepVar::None:
            break;
    }
    return cfg;
}

namespace {

void write_file(const fs::path& path, const std::string& content) {
    fs::create_directories(path.parent_path());
    const auto tmp = fs::path(path).concat(".tmp");
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot write " + tmp.string());
        out << content;
        if (!out.flush()) throw std::runtime_error("write failed: " + tmp.string());
    }
    fs::rename(tmp, path);
}

std::string trace_name(const TraceHeader& h) { return fmt::format("{}-{:04}.trace", to_string(h.scheme), h.run_index); }

std::string columns_header(std::string_view x, const Aggregate& agg) {
    std::string line = fmt::format("# {}", x);
    for (const auto& s : agg.schemes) line += fmt::format(" {}", to_string(s.scheme));
    return line + "\n";
}

void write_plots(const fs::path& dir, const Aggregate& agg) {
    std::string per_cluster = columns_header("cluster", agg);
    const std::size_t clusters = agg.schemes.empty() ? 0 : agg.schemes.front().per_cluster.size();
    for (std::size_t j = 0; j < clusters; ++j) {
        per_cluster += fmt::format("{}", j + 1);
        for (const auto& s : agg.schemes) per_cluster += fmt::format(" {}", s.per_cluster[j]);
        per_cluster += "\n";
    }
    write_file(dir / "reselections_per_cluster.dat", per_cluster);

    double peak = 0.0;
    for (const auto& s : agg.schemes) {
        for (const double v : s.series) peak = std::max(peak, v);
    }
    std::string series = columns_header("time", agg);
    for (std::size_t k = 0; k < agg.series_time.size(); ++k) {
        series += fmt::format("{}", agg.series_time[k]);
        for (const auto& s : agg.schemes) series += fmt::format(" {}", peak > 0.0 ? s.series[k] / peak : 0.0);
        series += "\n";
    }
    write_file(dir / "reselections_vs_time.dat", series);

    std::string snr = columns_header("x", agg);
    snr += "0";
    for (const auto& s : agg.schemes) snr += fmt::format(" {}", s.normalized_snr);
    write_file(dir / "snr.dat", snr + "\n");

    std::string lik = columns_header("x", agg);
    lik += "0";
    for (const auto& s : agg.schemes) lik += fmt::format(" {}", s.likelihood);
    write_file(dir / "likelihood.dat", lik + "\n");
}

void write_aggregates(const fs::path& dir, const Aggregate& agg, std::uint64_t seed) {
    for (const auto& s : agg.schemes) {
        write_file(dir / fmt::format("aggregate.{}.json", to_string(s.scheme)), aggregate_document(agg, s, seed));
    }
    write_plots(dir / "plots", agg);
}

std::string echo(const ExperimentSpec& spec, const SimConfig& config) {
    std::string schemes;
    for (const auto s : spec.schemes) schemes += fmt::format("{}{}", schemes.empty() ? "" : ",", to_string(s));
    std::string values;
    for (const double v : spec.values) values += fmt::format("{}{}", values.empty() ? "" : ",", v);
    return fmt::format("# schemes={} runs={} seed={} sweep={} values={}\n", schemes, spec.runs, spec.seed,
                       to_string(spec.sweep), values.empty() ? "-" : values) +
           format_config(config);
}

// Runs one configuration point into `dir`; returns its aggregate.
Aggregate run_point(const ExperimentSpec& spec, const SimConfig& config, const fs::path& dir) {
    const auto plan = seed_plan(spec.seed, spec.runs, spec.schemes);
    const auto traces = run_batch(config, plan, spec.workers);
    write_file(dir / "config.echo", echo(spec, config));
    for (const auto& t : traces) write_file(dir / "traces" / trace_name(t.header), format_trace(t));
    const auto agg = aggregate(traces, likelihood_params(config));
    write_aggregates(dir, agg, spec.seed);
    return agg;
}

fs::path staging_path(const fs::path& out) {
    auto p = out;
    if (!p.has_filename()) p = p.parent_path();
    return p.concat(fmt::format(".partial-{}", ::getpid()));
}

void publish(const fs::path& staging, fs::path out) {
    if (!out.has_filename()) out = out.parent_path();
    if (fs::exists(out)) {
        if (!fs::is_directory(out)) throw std::runtime_error(out.string() + " exists and is not a directory");
        const bool ours = fs::exists(out / "config.echo");
        if (!ours && !fs::is_empty(out)) {
            throw std::runtime_error(out.string() + " is a non-empty directory that is not an experiment output");
        }
        fs::remove_all(out);
    }
    fs::rename(staging, out);
}

}  // namespace

std::string aggregate_document(const Aggregate& agg, const SchemeAggregate& s, std::uint64_t seed_base) {
    using nlohmann::ordered_json;
    ordered_json doc;
    doc["scheme"] = to_string(s.scheme);
    doc["config_digest"] = fmt::format("{:016x}", agg.digest);
    doc["seed_base"] = seed_base;
    doc["runs"] = s.runs;
    doc["reselections_per_cluster"] = s.per_cluster;
    doc["reselections_total"] = {{"mean", s.total.mean}, {"ci95", s.total.half_width}, {"n", s.total.n}};
    doc["snr"] = {{"mean", s.snr.mean}, {"ci95", s.snr.half_width}, {"n", s.snr.n}};
    doc["degraded_selections"] = s.degraded;
    doc["normalized_reselections"] = s.normalized_reselections;
    doc["normalized_snr"] = s.normalized_snr;
    doc["robustness_likelihood"] = s.likelihood;
    doc["series_time"] = agg.series_time;
    doc["cumulative_reselections"] = s.series;
    ordered_json per_run = ordered_json::array();
    for (const auto& r : s.per_run) {
        per_run.push_back({{"run", r.run_index},
                           {"total", r.total},
                           {"per_cluster", r.per_cluster},
                           {"mean_snr", r.mean_snr ? ordered_json(*r.mean_snr) : ordered_json(nullptr)},
                           {"degraded", r.degraded}});
    }
    doc["per_run"] = std::move(per_run);
    return doc.dump(2) + "\n";
}

std::vector<PointResult> execute(const ExperimentSpec& spec) {
    check(spec);
    auto base = spec.base;
    base.seed = spec.seed;
    const auto staging = staging_path(spec.out);
    fs::remove_all(staging);
    std::vector<PointResult> points;
    try {
        if (spec.sweep == SweepVar::None) {
            points.push_back({std::nullopt, run_point(spec, validate(base), staging)});
        } else {
            for (const double v : spec.values) {
                const auto cfg = validate(with_sweep_value(base, spec.sweep, v));
                points.push_back({v, run_point(spec, cfg, staging / fmt::format("{}-{}", to_string(spec.sweep), v))});
            }
            write_file(staging / "config.echo", echo(spec, base));
            double peak = 0.0;
            for (const auto& [v, agg] : points) {
                for (const auto& s : agg.schemes) peak = std::max(peak, s.total.mean);
            }
            std::string data = columns_header(to_string(spec.sweep), points.front().aggregate);
            for (const auto& [v, agg] : points) {
                data += fmt::format("{}", *v);
                for (const auto& s : agg.schemes) data += fmt::format(" {}", peak > 0.0 ? s.total.mean / peak : 0.0);
                data += "\n";
            }
            write_file(staging / "plots" / fmt::format("reselections_vs_{}.dat", to_string(spec.sweep)), data);
        }
        publish(staging, spec.out);
    } catch (...) {
        std::error_code ec;
        fs::remove_all(staging, ec);
        throw;
    }
    return points;
}

Aggregate reaggregate(const fs::path& in, const fs::path& out) {
    const auto trace_dir = in / "traces";
    if (!fs::is_directory(trace_dir)) throw std::runtime_error("no traces directory under " + in.string());
    std::vector<fs::path> files;
    for (const auto& entry : fs::directory_iterator(trace_dir)) {
        if (entry.path().extension() == ".trace") files.push_back(entry.path());
    }
    if (files.empty()) throw std::runtime_error("no .trace files under " + trace_dir.string());
    std::sort(files.begin(), files.end());

    std::vector<Trace> traces;
    for (const auto& f : files) traces.push_back(read_trace_file(f));

    SimConfig config;
    std::uint64_t seed = traces.front().header.seed;
    if (fs::exists(in / "config.echo")) config = load_config(in / "config.echo");
    const auto agg = aggregate(traces, likelihood_params(config));
    write_aggregates(out, agg, seed);
    return agg;
}

}  // namespace uavclust
