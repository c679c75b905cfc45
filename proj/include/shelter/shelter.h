/*
 * C interface to the shelter simulation library.
 *
 * All objects are opaque handles created by a *_new / *_load / shelter_run_*
 * call and released with the matching *_free. Every fallible function
 * returns a shelter_status; on failure, shelter_last_error() describes the
 * problem (for configuration errors: one "path: message" line per violated
 * constraint). Strings returned through char** out-parameters are owned by
 * the caller and released with shelter_string_free.
 *
 * Undefined statistics (no served requests, a single replication for a
 * confidence half-width) are reported as NaN.
 *
 * Handles are not internally synchronized. Distinct handles may be used from
 * different threads.
 */
#ifndef SHELTER_SHELTER_H
#define SHELTER_SHELTER_H

#include <stddef.h>
#include <stdint.h>

#if defined(SHELTER_BUILDING_LIBRARY)
#define SHELTER_API __attribute__((visibility("default")))
#else
#define SHELTER_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum shelter_status {
    SHELTER_OK = 0,
    SHELTER_ERR_INVALID_ARGUMENT = 1,
    SHELTER_ERR_CONFIG = 2,
    SHELTER_ERR_IO = 3,
    SHELTER_ERR_RUNTIME = 4
} shelter_status;

typedef struct shelter_config shelter_config;
typedef struct shelter_summary shelter_summary;
typedef struct shelter_sweep shelter_sweep;

typedef struct shelter_resource_stats {
    const char* name; /* borrowed; valid while the summary lives */
    int capacity;
    double avg_wait_days;            /* mean over replications of the per-replication average served wait */
    double avg_wait_ci_half_width;   /* 95% Student-t */
    double max_wait_days;            /* largest served wait in any replication */
    double utilization;              /* fraction in [0, 1] */
    double utilization_ci_half_width;
    double pct_reneged;              /* percent of requests issued in the window */
    double pct_reneged_ci_half_width;
} shelter_resource_stats;

typedef struct shelter_flow_value {
    double mean;
    double ci_half_width;
} shelter_flow_value;

typedef struct shelter_flow_stats {
    shelter_flow_value arrivals;
    shelter_flow_value bsy_arrivals;
    shelter_flow_value served;
    shelter_flow_value left_unserved;
    shelter_flow_value still_in_system;
    shelter_flow_value bed_renege_exit;
    shelter_flow_value bed_renege_stayed;
} shelter_flow_stats;

SHELTER_API const char* shelter_version(void);

/* Message for the most recent failure on the calling thread. */
SHELTER_API const char* shelter_last_error(void);

SHELTER_API void shelter_string_free(char* s);

/* ---- configuration ---------------------------------------------------- */

/* The built-in baseline scenario. */
SHELTER_API shelter_status shelter_config_new_default(shelter_config** out);

/* Reads a JSON config file, fills absent fields with defaults, applies the
 * `key=value` overrides in order, and validates the result. */
SHELTER_API shelter_status shelter_config_load(const char* path, const char* const* overrides, size_t n_overrides,
                                               shelter_config** out);

/* As shelter_config_load, from JSON text. */
SHELTER_API shelter_status shelter_config_parse(const char* json_text, const char* const* overrides,
                                                size_t n_overrides, shelter_config** out);

/* Applies one `key=value` override and re-validates. The config is left
 * unchanged on failure. */
SHELTER_API shelter_status shelter_config_set(shelter_config* config, const char* assignment);

SHELTER_API shelter_status shelter_config_to_json(const shelter_config* config, char** out_json);

/* 64 lowercase hex characters plus terminator. */
SHELTER_API shelter_status shelter_config_digest(const shelter_config* config, char out[65]);

SHELTER_API shelter_status shelter_config_master_seed(const shelter_config* config, uint64_t* out);
SHELTER_API shelter_status shelter_config_replications(const shelter_config* config, int* out);

SHELTER_API void shelter_config_free(shelter_config* config);

/* ---- scenarios ---------------------------------------------------------- */

/* jobs bounds concurrent replications; 0 means one per hardware thread. */
SHELTER_API shelter_status shelter_run_scenario(const shelter_config* config, unsigned jobs, shelter_summary** out);

SHELTER_API size_t shelter_summary_resource_count(const shelter_summary* summary);
SHELTER_API shelter_status shelter_summary_resource(const shelter_summary* summary, size_t index,
                                                    shelter_resource_stats* out);
SHELTER_API shelter_status shelter_summary_flow(const shelter_summary* summary, shelter_flow_stats* out);
SHELTER_API size_t shelter_summary_replication_count(const shelter_summary* summary);

SHELTER_API shelter_status shelter_summary_csv(const shelter_summary* summary, char** out_csv);
SHELTER_API shelter_status shelter_summary_table(const shelter_summary* summary, char** out_text);
/* Writes the CSV atomically: nothing is left at `path` on failure. */
SHELTER_API shelter_status shelter_summary_write_csv(const shelter_summary* summary, const char* path);

SHELTER_API void shelter_summary_free(shelter_summary* summary);

/* ---- sweeps ------------------------------------------------------------- */

/* `start:stop:step` or a comma list. Release *out_values with shelter_values_free. */
SHELTER_API shelter_status shelter_parse_values(const char* text, int** out_values, size_t* out_count);
SHELTER_API void shelter_values_free(int* values);

/* parameter is "bed_capacity" or "service:<name>". */
SHELTER_API shelter_status shelter_run_sweep(const shelter_config* config, const char* parameter, const int* values,
                                             size_t n_values, unsigned jobs, shelter_sweep** out);

SHELTER_API size_t shelter_sweep_size(const shelter_sweep* sweep);
SHELTER_API shelter_status shelter_sweep_value(const shelter_sweep* sweep, size_t index, int* out);
/* Borrowed; valid while the sweep lives. NULL if index is out of range. */
SHELTER_API const shelter_summary* shelter_sweep_summary(const shelter_sweep* sweep, size_t index);

SHELTER_API shelter_status shelter_sweep_csv(const shelter_sweep* sweep, char** out_csv);
SHELTER_API shelter_status shelter_sweep_write_csv(const shelter_sweep* sweep, const char* path);

SHELTER_API void shelter_sweep_free(shelter_sweep* sweep);

#ifdef __cplusplus
}
#endif

#endif /* SHELTER_SHELTER_H */
