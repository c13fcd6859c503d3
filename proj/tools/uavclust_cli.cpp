// Command-line front end. Talks to the simulator through the C API only.

#include <cmath>
#include <cstdio>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "uavclust/uavclust.h"

namespace {

struct Failure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

void check(uc_status st) {
    if (st == UC_OK) return;
    std::string msg = uc_last_error();
    if (msg.empty()) msg = uc_status_name(st);
    throw Failure(msg);
}

struct ConfigDeleter {
    void operator()(uc_config* c) const { uc_config_destroy(c); }
};
struct TraceDeleter {
    void operator()(uc_trace* t) const { uc_trace_destroy(t); }
};
struct ExperimentDeleter {
    void operator()(uc_experiment* e) const { uc_experiment_destroy(e); }
};
struct SummaryDeleter {
    void operator()(uc_summary* s) const { uc_summary_destroy(s); }
};
using ConfigPtr = std::unique_ptr<uc_config, ConfigDeleter>;
using TracePtr = std::unique_ptr<uc_trace, TraceDeleter>;
using ExperimentPtr = std::unique_ptr<uc_experiment, ExperimentDeleter>;
using SummaryPtr = std::unique_ptr<uc_summary, SummaryDeleter>;

// Options shared by the simulating subcommands. Flags override the file.
struct CommonOptions {
    std::string config_path;
    std::vector<std::string> sets;
    std::optional<std::uint64_t> seed;
    std::optional<std::uint32_t> vehicles;
    std::optional<double> duration;

    void attach(CLI::App* app) {
        app->add_option("-c,--config", config_path, "configuration file (key = value)")->check(CLI::ExistingFile);
        app->add_option("--set", sets, "override one key, e.g. --set speed_min=40km/h")->take_all();
        app->add_option("--seed", seed, "base seed");
        app->add_option("--vehicles", vehicles, "number of vehicles I");
        app->add_option("--duration", duration, "simulated time in seconds");
    }

    ConfigPtr build() const {
        uc_config* raw = nullptr;
        check(config_path.empty() ? uc_config_create(&raw) : uc_config_load(config_path.c_str(), &raw));
        ConfigPtr cfg(raw);
        for (const auto& s : sets) {
            const auto eq = s.find('=');
            if (eq == std::string::npos) throw Failure("--set expects key=value, got '" + s + "'");
            check(uc_config_set(cfg.get(), s.substr(0, eq).c_str(), s.substr(eq + 1).c_str()));
        }
        if (seed) check(uc_config_set(cfg.get(), "seed", std::to_string(*seed).c_str()));
        if (vehicles) check(uc_config_set(cfg.get(), "num_vehicles", std::to_string(*vehicles).c_str()));
        if (duration) check(uc_config_set(cfg.get(), "duration", fmt_double(*duration).c_str()));
        check(uc_config_validate(cfg.get()));
        return cfg;
    }

    static std::string fmt_double(double v) {
        char buf[64];
        std::snprintf(buf, sizeof buf, "%.17g", v);
        return buf;
    }
};

std::string config_value(const uc_config* cfg, const char* key) {
    size_t needed = 0;
    check(uc_config_get(cfg, key, nullptr, 0, &needed));
    std::string out(needed, '\0');
    check(uc_config_get(cfg, key, out.data(), out.size(), &needed));
    out.resize(needed - 1);
    return out;
}

void print_summary(const uc_summary* summary, const std::string& var) {
    const size_t points = uc_summary_point_count(summary);
    for (size_t p = 0; p < points; ++p) {
        const double value = uc_summary_point_value(summary, p);
        if (!std::isnan(value)) std::printf("%s = %g\n", var.c_str(), value);
        std::printf("%-9s %5s %18s %22s %8s %8s %6s\n", "scheme", "runs", "reselections", "snr", "norm_R", "norm_S",
                    "L");
        for (size_t i = 0; i < uc_summary_scheme_count(summary, p); ++i) {
            uc_scheme_stats s{};
            check(uc_summary_scheme(summary, p, i, &s));
            std::printf("%-9s %5u %9.3f +- %5.3f %11.4g +- %7.2g %8.4f %8.4f %6.4f\n", s.scheme, s.runs,
                        s.reselections_mean, s.reselections_ci95, s.snr_mean, s.snr_ci95, s.normalized_reselections,
                        s.normalized_snr, s.likelihood);
        }
    }
}

std::vector<double> parse_values(const std::string& text) {
    std::vector<double> out;
    std::size_t start = 0;
    while (start <= text.size()) {
        const auto comma = text.find(',', start);
        const auto item = text.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
        try {
            std::size_t used = 0;
            out.push_back(std::stod(item, &used));
            if (used != item.size()) throw std::invalid_argument(item);
        } catch (const std::exception&) {
            throw Failure("--values: '" + item + "' is not a number");
        }
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"UAV-assisted vehicular clustering simulator"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(uc_version()));

    // run
    CommonOptions run_opts;
    std::string run_scheme;
    std::uint32_t run_index = 0;
    std::string run_out;
    auto* run = app.add_subcommand("run", "simulate one run and write its event trace");
    run_opts.attach(run);
    run->add_option("--scheme", run_scheme, "proposed | vmasc | random");
    run->add_option("--run-index", run_index, "run index used for seed derivation");
    run->add_option("-o,--out", run_out, "trace file (default: stdout)");

    // compare
    CommonOptions cmp_opts;
    std::string cmp_schemes = "proposed,vmasc,random";
    std::uint32_t cmp_runs = 200;
    std::uint32_t cmp_workers = 1;
    std::string cmp_out;
    auto* compare = app.add_subcommand("compare", "paired-seed runs of several schemes");
    cmp_opts.attach(compare);
    compare->add_option("--scheme,--schemes", cmp_schemes, "comma-separated schemes");
    compare->add_option("--runs", cmp_runs, "runs per scheme")->check(CLI::PositiveNumber);
    compare->add_option("--workers", cmp_workers, "worker threads")->check(CLI::PositiveNumber);
    compare->add_option("-o,--out", cmp_out, "output directory")->required();

    // sweep
    CommonOptions sw_opts;
    std::string sw_schemes = "proposed,vmasc,random";
    std::uint32_t sw_runs = 100;
    std::uint32_t sw_workers = 1;
    std::string sw_var = "vehicles";
    std::string sw_values;
    std::string sw_out;
    auto* sweep = app.add_subcommand("sweep", "compare schemes across values of one parameter");
    sw_opts.attach(sweep);
    sweep->add_option("--scheme,--schemes", sw_schemes, "comma-separated schemes");
    sweep->add_option("--runs", sw_runs, "runs per scheme and point")->check(CLI::PositiveNumber);
    sweep->add_option("--workers", sw_workers, "worker threads")->check(CLI::PositiveNumber);
    sweep->add_option("--var", sw_var, "vehicles | duration");
    sweep->add_option("--values", sw_values, "comma-separated values, e.g. 5,10,15")->required();
    sweep->add_option("-o,--out", sw_out, "output directory")->required();

    // metrics
    std::string met_in;
    std::string met_out;
    auto* metrics = app.add_subcommand("metrics", "recompute aggregates from stored traces");
    metrics->add_option("--in", met_in, "experiment output directory")->required()->check(CLI::ExistingDirectory);
    metrics->add_option("-o,--out", met_out, "where to write aggregates (default: --in)");

    // config
    CommonOptions conf_opts;
    auto* config = app.add_subcommand("config", "print the resolved configuration");
    conf_opts.attach(config);

    CLI11_PARSE(app, argc, argv);

    try {
        if (run->parsed()) {
            auto cfg = run_opts.build();
            if (!run_scheme.empty()) check(uc_config_set(cfg.get(), "scheme", run_scheme.c_str()));
            uc_trace* raw = nullptr;
            check(uc_run(cfg.get(), run_index, &raw));
            TracePtr trace(raw);
            if (run_out.empty()) {
                size_t needed = 0;
                check(uc_trace_text(trace.get(), nullptr, 0, &needed));
                std::string text(needed, '\0');
                check(uc_trace_text(trace.get(), text.data(), text.size(), &needed));
                std::fwrite(text.data(), 1, needed - 1, stdout);
            } else {
                check(uc_trace_write(trace.get(), run_out.c_str()));
                uc_run_metrics m{};
                check(uc_trace_metrics(trace.get(), &m));
                std::printf("scheme=%s events=%zu reselections=%g degraded=%g", config_value(cfg.get(), "scheme").c_str(),
                            uc_trace_event_count(trace.get()), m.reselections, m.degraded);
                if (m.has_snr) std::printf(" mean_snr=%.6g", m.mean_snr);
                std::printf("\n");
            }
        } else if (compare->parsed() || sweep->parsed()) {
            const bool is_sweep = sweep->parsed();
            auto cfg = (is_sweep ? sw_opts : cmp_opts).build();
            uc_experiment* raw = nullptr;
            check(uc_experiment_create(cfg.get(), &raw));
            ExperimentPtr exp(raw);
            check(uc_experiment_set_schemes(exp.get(), (is_sweep ? sw_schemes : cmp_schemes).c_str()));
            check(uc_experiment_set_runs(exp.get(), is_sweep ? sw_runs : cmp_runs));
            check(uc_experiment_set_workers(exp.get(), is_sweep ? sw_workers : cmp_workers));
            if (is_sweep) {
                const auto values = parse_values(sw_values);
                check(uc_experiment_set_sweep(exp.get(), sw_var.c_str(), values.data(), values.size()));
            }
            uc_summary* sraw = nullptr;
            check(uc_experiment_execute(exp.get(), (is_sweep ? sw_out : cmp_out).c_str(), &sraw));
            SummaryPtr summary(sraw);
            print_summary(summary.get(), sw_var);
        } else if (metrics->parsed()) {
            uc_summary* sraw = nullptr;
            check(uc_reaggregate(met_in.c_str(), (met_out.empty() ? met_in : met_out).c_str(), &sraw));
            SummaryPtr summary(sraw);
            print_summary(summary.get(), "");
        } else if (config->parsed()) {
            auto cfg = conf_opts.build();
            size_t needed = 0;
            check(uc_config_format(cfg.get(), nullptr, 0, &needed));
            std::string text(needed, '\0');
            check(uc_config_format(cfg.get(), text.data(), text.size(), &needed));
            std::fwrite(text.data(), 1, needed - 1, stdout);
        }
    } catch (const Failure& e) {
        std::fprintf(stderr, "uavclust: %s\n", e.what());
        return 1;
    }
    return 0;
}
