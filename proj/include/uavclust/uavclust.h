#ifndef UAVCLUST_H
#define UAVCLUST_H

#include <stddef.h>
#include <stdint.h>

#if defined(UAVCLUST_BUILDING)
#define UC_API __attribute__((visibility("default")))
#else
#define UC_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum uc_status {
    UC_OK = 0,
    UC_ERR_ARGUMENT = 1, /* null handle, bad buffer, unknown name */
    UC_ERR_CONFIG = 2,   /* a configuration value or invariant; see uc_last_error_field */
    UC_ERR_IO = 3,       /* file system or trace format */
    UC_ERR_DOMAIN = 4,   /* inputs outside a function's domain */
    UC_ERR_INTERNAL = 5
} uc_status;

typedef struct uc_config uc_config;
typedef struct uc_trace uc_trace;
typedef struct uc_experiment uc_experiment;
typedef struct uc_summary uc_summary;

/* Message and offending config key of the last failure on this thread.
   Both are "" after a success. */
UC_API const char* uc_last_error(void);
UC_API const char* uc_last_error_field(void);
UC_API const char* uc_status_name(uc_status status);
UC_API const char* uc_version(void);

/* Text getters copy a NUL-terminated string into buf when cap allows and
   always report the required size (including the NUL) through *needed.
   A short buffer yields UC_ERR_ARGUMENT. */

/* ---- configuration ---- */

UC_API uc_status uc_config_create(uc_config** out);
UC_API uc_status uc_config_load(const char* path, uc_config** out);
UC_API uc_status uc_config_parse(const char* text, uc_config** out);
UC_API uc_status uc_config_clone(const uc_config* config, uc_config** out);
UC_API void uc_config_destroy(uc_config* config);

/* Values take optional unit tags, e.g. "50 km/h", "-70 dBm". */
UC_API uc_status uc_config_set(uc_config* config, const char* key, const char* value);
UC_API uc_status uc_config_get(const uc_config* config, const char* key, char* buf, size_t cap, size_t* needed);
UC_API uc_status uc_config_validate(const uc_config* config);
UC_API uc_status uc_config_format(const uc_config* config, char* buf, size_t cap, size_t* needed);
UC_API uc_status uc_config_write(const uc_config* config, const char* path);

UC_API size_t uc_config_key_count(void);
UC_API const char* uc_config_key_name(size_t index); /* NULL past the end */

/* ---- single runs ---- */

/* Runs config.scheme with seeds derived from (config.seed, run_index). */
UC_API uc_status uc_run(const uc_config* config, uint32_t run_index, uc_trace** out);
UC_API uc_status uc_trace_read(const char* path, uc_trace** out);
UC_API uc_status uc_trace_write(const uc_trace* trace, const char* path);
UC_API uc_status uc_trace_text(const uc_trace* trace, char* buf, size_t cap, size_t* needed);
UC_API size_t uc_trace_event_count(const uc_trace* trace);
UC_API void uc_trace_destroy(uc_trace* trace);

typedef struct uc_run_metrics {
    double reselections;  /* total over clusters */
    double mean_snr;      /* linear; 0 when has_snr is 0 */
    int has_snr;
    double degraded;
    uint32_t tenures;
} uc_run_metrics;

UC_API uc_status uc_trace_metrics(const uc_trace* trace, uc_run_metrics* out);

/* ---- experiments ---- */

UC_API uc_status uc_experiment_create(const uc_config* base, uc_experiment** out);
UC_API void uc_experiment_destroy(uc_experiment* experiment);

/* Comma-separated subset of "proposed,vmasc,random". */
UC_API uc_status uc_experiment_set_schemes(uc_experiment* experiment, const char* schemes);
UC_API uc_status uc_experiment_set_runs(uc_experiment* experiment, uint32_t runs);
UC_API uc_status uc_experiment_set_seed(uc_experiment* experiment, uint64_t seed);
UC_API uc_status uc_experiment_set_workers(uc_experiment* experiment, uint32_t workers);
/* var is "none", "vehicles" or "duration". */
UC_API uc_status uc_experiment_set_sweep(uc_experiment* experiment, const char* var, const double* values,
                                         size_t count);

/* Writes the output directory. summary may be NULL. */
UC_API uc_status uc_experiment_execute(uc_experiment* experiment, const char* out_dir, uc_summary** summary);

/* Recomputes aggregates and plots of an existing output from its traces. */
UC_API uc_status uc_reaggregate(const char* in_dir, const char* out_dir, uc_summary** summary);

/* ---- summaries ---- */

typedef struct uc_scheme_stats {
    const char* scheme; /* static string */
    uint32_t runs;
    double reselections_mean;
    double reselections_ci95;
    double snr_mean;
    double snr_ci95;
    double normalized_reselections;
    double normalized_snr;
    double likelihood;
    double degraded;
} uc_scheme_stats;

UC_API size_t uc_summary_point_count(const uc_summary* summary);
/* Sweep value of a point; NaN when the experiment had no sweep. */
UC_API double uc_summary_point_value(const uc_summary* summary, size_t point);
UC_API size_t uc_summary_scheme_count(const uc_summary* summary, size_t point);
UC_API uc_status uc_summary_scheme(const uc_summary* summary, size_t point, size_t index, uc_scheme_stats* out);
UC_API void uc_summary_destroy(uc_summary* summary);

#ifdef __cplusplus
}
#endif

#endif
