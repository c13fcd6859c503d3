#include "uavclust/uavclust.h"

#include <cmath>
#include <cstring>
#include <fstream>
#include <limits>
#include <new>
#include <sstream>
#include <stdexcept>
#include <string>

#include <fmt/format.h>

#include "uavclust/config.hpp"
#include "uavclust/engine.hpp"
#include "uavclust/experiment.hpp"
#include "uavclust/metrics.hpp"
#include "uavclust/trace_io.hpp"

struct uc_config {
    uavclust::SimConfig value;
};

struct uc_trace {
    uavclust::Trace value;
};

struct uc_experiment {
    uavclust::ExperimentSpec spec;
};

struct uc_summary {
    std::vector<uavclust::PointResult> points;
};

namespace {

thread_local std::string last_error;
thread_local std::string last_field;

uc_status fail(uc_status status, std::string message, std::string field = {}) {
    last_error = std::move(message);
    last_field = std::move(field);
    return status;
}

uc_status ok() {
    last_error.clear();
    last_field.clear();
    return UC_OK;
}

// Maps the exception in flight to a status.
uc_status translate() {
    try {
        throw;
    } catch (const uavclust::ConfigError& e) {
        return fail(UC_ERR_CONFIG, e.what(), e.field());
    } catch (const std::filesystem::filesystem_error& e) {
        return fail(UC_ERR_IO, e.what());
    } catch (const std::domain_error& e) {
        return fail(UC_ERR_DOMAIN, e.what());
    } catch (const std::invalid_argument& e) {
        return fail(UC_ERR_ARGUMENT, e.what());
    } catch (const std::bad_alloc&) {
        return fail(UC_ERR_INTERNAL, "out of memory");
    } catch (const std::runtime_error& e) {
        return fail(UC_ERR_IO, e.what());
    } catch (const std::exception& e) {
        return fail(UC_ERR_INTERNAL, e.what());
    } catch (...) {
        return fail(UC_ERR_INTERNAL, "unknown error");
    }
}

template <typename F>
uc_status guard(F&& f) {
    try {
        f();
        return ok();
    } catch (...) {
        return translate();
    }
}

uc_status null_arg(const char* name) { return fail(UC_ERR_ARGUMENT, fmt::format("{} must not be null", name)); }

uc_status copy_out(const std::string& text, char* buf, size_t cap, size_t* needed) {
    if (needed) *needed = text.size() + 1;
    if (!buf) {
        if (needed) return ok();
        return null_arg("buf");
    }
    if (cap < text.size() + 1) return fail(UC_ERR_ARGUMENT, fmt::format("buffer too small: need {} bytes", text.size() + 1));
    std::memcpy(buf, text.c_str(), text.size() + 1);
    return ok();
}

std::vector<uavclust::Scheme> parse_scheme_list(std::string_view text) {
    std::vector<uavclust::Scheme> out;
    while (!text.empty()) {
        const auto comma = text.find(',');
        auto item = text.substr(0, comma);
        while (!item.empty() && item.front() == ' ') item.remove_prefix(1);
        while (!item.empty() && item.back() == ' ') item.remove_suffix(1);
        const auto s = uavclust::parse_scheme(item);
        if (!s) throw uavclust::ConfigError("scheme", fmt::format("unknown scheme '{}'", item));
        out.push_back(*s);
        if (comma == std::string_view::npos) break;
        text.remove_prefix(comma + 1);
    }
    return out;
}

}  // namespace

extern "C" {

const char* uc_last_error(void) { return last_error.c_str(); }
const char* uc_last_error_field(void) { return last_field.c_str(); }

const char* uc_status_name(uc_status status) {
    switch (status) {
        case UC_OK: return "ok";
        case UC_ERR_ARGUMENT: return "invalid argument";
        case UC_ERR_CONFIG: return "configuration error";
        case UC_ERR_IO: return "i/o error";
        case UC_ERR_DOMAIN: return "domain error";
        case UC_ERR_INTERNAL: return "internal error";
    }
    return "unknown status";
}

const char* uc_version(void) { return "1.0.0"; }

uc_status uc_config_create(uc_config** out) {
    if (!out) return null_arg("out");
    return guard([&] { *out = new uc_config{}; });
}

uc_status uc_config_load(const char* path, uc_config** out) {
    if (!path) return null_arg("path");
    if (!out) return null_arg("out");
    return guard([&] { *out = new uc_config{uavclust::load_config(path)}; });
}

uc_status uc_config_parse(const char* text, uc_config** out) {
    if (!text) return null_arg("text");
    if (!out) return null_arg("out");
    return guard([&] { *out = new uc_config{uavclust::parse_config(text)}; });
}

uc_status uc_config_clone(const uc_config* config, uc_config** out) {
    if (!config) return null_arg("config");
    if (!out) return null_arg("out");
    return guard([&] { *out = new uc_config{config->value}; });
}

void uc_config_destroy(uc_config* config) { delete config; }

uc_status uc_config_set(uc_config* config, const char* key, const char* value) {
    if (!config) return null_arg("config");
    if (!key) return null_arg("key");
    if (!value) return null_arg("value");
    return guard([&] { uavclust::set_config_value(config->value, key, value); });
}

uc_status uc_config_get(const uc_config* config, const char* key, char* buf, size_t cap, size_t* needed) {
    if (!config) return null_arg("config");
    if (!key) return null_arg("key");
    std::string text;
    if (const auto st = guard([&] { text = uavclust::get_config_value(config->value, key); }); st != UC_OK) return st;
    return copy_out(text, buf, cap, needed);
}

uc_status uc_config_validate(const uc_config* config) {
    if (!config) return null_arg("config");
    return guard([&] { (void)uavclust::validate(config->value); });
}

uc_status uc_config_format(const uc_config* config, char* buf, size_t cap, size_t* needed) {
    if (!config) return null_arg("config");
    return copy_out(uavclust::format_config(config->value), buf, cap, needed);
}

uc_status uc_config_write(const uc_config* config, const char* path) {
    if (!config) return null_arg("config");
    if (!path) return null_arg("path");
    return guard([&] {
        std::ofstream out(path, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error(fmt::format("cannot write {}", path));
        out << uavclust::format_config(config->value);
        if (!out.flush()) throw std::runtime_error(fmt::format("write failed: {}", path));
    });
}

size_t uc_config_key_count(void) { return uavclust::config_keys().size(); }

const char* uc_config_key_name(size_t index) {
    const auto& keys = uavclust::config_keys();
    // Keys are views into string literals.
    return index < keys.size() ? keys[index].data() : nullptr;
}

uc_status uc_run(const uc_config* config, uint32_t run_index, uc_trace** out) {
    if (!config) return null_arg("config");
    if (!out) return null_arg("out");
    return guard([&] {
        const auto& c = config->value;
        *out = new uc_trace{uavclust::run(c, uavclust::derive_run_seeds(c.seed, run_index, c.scheme), run_index)};
    });
}

uc_status uc_trace_read(const char* path, uc_trace** out) {
    if (!path) return null_arg("path");
    if (!out) return null_arg("out");
    return guard([&] { *out = new uc_trace{uavclust::read_trace_file(path)}; });
}

uc_status uc_trace_write(const uc_trace* trace, const char* path) {
    if (!trace) return null_arg("trace");
    if (!path) return null_arg("path");
    return guard([&] {
        std::ofstream out(path, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error(fmt::format("cannot write {}", path));
        uavclust::write_trace(out, trace->value);
        if (!out.flush()) throw std::runtime_error(fmt::format("write failed: {}", path));
    });
}

uc_status uc_trace_text(const uc_trace* trace, char* buf, size_t cap, size_t* needed) {
    if (!trace) return null_arg("trace");
    return copy_out(uavclust::format_trace(trace->value), buf, cap, needed);
}

size_t uc_trace_event_count(const uc_trace* trace) { return trace ? trace->value.events.size() : 0; }

void uc_trace_destroy(uc_trace* trace) { delete trace; }

uc_status uc_trace_metrics(const uc_trace* trace, uc_run_metrics* out) {
    if (!trace) return null_arg("trace");
    if (!out) return null_arg("out");
    return guard([&] {
        const auto m = uavclust::run_metrics(trace->value);
        out->reselections = m.total;
        out->has_snr = m.mean_snr.has_value() ? 1 : 0;
        out->mean_snr = m.mean_snr.value_or(0.0);
        out->degraded = m.degraded;
        out->tenures = static_cast<uint32_t>(m.tenures);
    });
}

uc_status uc_experiment_create(const uc_config* base, uc_experiment** out) {
    if (!base) return null_arg("base");
    if (!out) return null_arg("out");
    return guard([&] {
        auto* e = new uc_experiment{};
        e->spec.base = base->value;
        e->spec.seed = base->value.seed;
        *out = e;
    });
}

void uc_experiment_destroy(uc_experiment* experiment) { delete experiment; }

uc_status uc_experiment_set_schemes(uc_experiment* experiment, const char* schemes) {
    if (!experiment) return null_arg("experiment");
    if (!schemes) return null_arg("schemes");
    return guard([&] { experiment->spec.schemes = parse_scheme_list(schemes); });
}

uc_status uc_experiment_set_runs(uc_experiment* experiment, uint32_t runs) {
    if (!experiment) return null_arg("experiment");
    if (runs == 0) return fail(UC_ERR_CONFIG, "runs: must be >= 1", "runs");
    experiment->spec.runs = runs;
    return ok();
}

uc_status uc_experiment_set_seed(uc_experiment* experiment, uint64_t seed) {
    if (!experiment) return null_arg("experiment");
    experiment->spec.seed = seed;
    experiment->spec.base.seed = seed;
    return ok();
}

uc_status uc_experiment_set_workers(uc_experiment* experiment, uint32_t workers) {
    if (!experiment) return null_arg("experiment");
    if (workers == 0) return fail(UC_ERR_CONFIG, "workers: must be >= 1", "workers");
    experiment->spec.workers = workers;
    return ok();
}

uc_status uc_experiment_set_sweep(uc_experiment* experiment, const char* var, const double* values, size_t count) {
    if (!experiment) return null_arg("experiment");
    if (!var) return null_arg("var");
    if (count > 0 && !values) return null_arg("values");
    const auto parsed = uavclust::parse_sweep_var(var);
    if (!parsed) return fail(UC_ERR_CONFIG, fmt::format("var: unknown sweep variable '{}'", var), "var");
    return guard([&] {
        experiment->spec.sweep = *parsed;
        experiment->spec.values.assign(values, values + count);
    });
}

uc_status uc_experiment_execute(uc_experiment* experiment, const char* out_dir, uc_summary** summary) {
    if (!experiment) return null_arg("experiment");
    if (!out_dir) return null_arg("out_dir");
    return guard([&] {
        auto spec = experiment->spec;
        spec.out = out_dir;
        auto points = uavclust::execute(spec);
        if (summary) *summary = new uc_summary{std::move(points)};
    });
}

uc_status uc_reaggregate(const char* in_dir, const char* out_dir, uc_summary** summary) {
    if (!in_dir) return null_arg("in_dir");
    if (!out_dir) return null_arg("out_dir");
    return guard([&] {
        auto agg = uavclust::reaggregate(in_dir, out_dir);
        if (summary) {
            auto* s = new uc_summary{};
            s->points.push_back({std::nullopt, std::move(agg)});
            *summary = s;
        }
    });
}

size_t uc_summary_point_count(const uc_summary* summary) { return summary ? summary->points.size() : 0; }

double uc_summary_point_value(const uc_summary* summary, size_t point) {
    if (!summary || point >= summary->points.size() || !summary->points[point].value) {
        return std::numeric_limits<double>::quiet_NaN();
    }
    return *summary->points[point].value;
}

size_t uc_summary_scheme_count(const uc_summary* summary, size_t point) {
    if (!summary || point >= summary->points.size()) return 0;
    return summary->points[point].aggregate.schemes.size();
}

uc_status uc_summary_scheme(const uc_summary* summary, size_t point, size_t index, uc_scheme_stats* out) {
    if (!summary) return null_arg("summary");
    if (!out) return null_arg("out");
    if (point >= summary->points.size()) return fail(UC_ERR_ARGUMENT, "point index out of range");
    const auto& schemes = summary->points[point].aggregate.schemes;
    if (index >= schemes.size()) return fail(UC_ERR_ARGUMENT, "scheme index out of range");
    const auto& s = schemes[index];
    out->scheme = uavclust::to_string(s.scheme).data();
    out->runs = static_cast<uint32_t>(s.runs.size());
    out->reselections_mean = s.total.mean;
    out->reselections_ci95 = s.total.half_width;
    out->snr_mean = s.snr.mean;
    out->snr_ci95 = s.snr.half_width;
    out->normalized_reselections = s.normalized_reselections;
    out->normalized_snr = s.normalized_snr;
    out->likelihood = s.likelihood;
    out->degraded = s.degraded;
    return ok();
}

void uc_summary_destroy(uc_summary* summary) { delete summary; }

}  // extern "C"
