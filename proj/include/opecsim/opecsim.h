/*
 * opecsim — OPEC drift-plus-penalty scheduling for incentive WiFi
 * offloading under an average-energy constraint, plus a seeded
 * time-slotted simulator and V-sweep experiment harness.
 *
 * C interface of the shared library. All objects are opaque handles owned
 * by the library. Every fallible call returns an opecsim_status; on
 * failure, opecsim_last_error() carries a human-readable diagnostic for
 * the most recent error on the calling thread.
 */
#ifndef OPECSIM_H
#define OPECSIM_H

#include <stddef.h>
#include <stdint.h>

#ifdef _WIN32
#define OPECSIM_API __declspec(dllexport)
#else
#define OPECSIM_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum opecsim_status {
  OPECSIM_OK = 0,
  OPECSIM_ERROR_INVALID_ARGUMENT = 1, /* null handle or out-of-contract value */
  OPECSIM_ERROR_IO = 2,               /* missing or unwritable file */
  OPECSIM_ERROR_PARSE = 3,            /* malformed scenario file */
  OPECSIM_ERROR_VALIDATION = 4,       /* well-formed input breaking an invariant */
  OPECSIM_ERROR_UNKNOWN_POLICY = 5
} opecsim_status;

typedef struct opecsim_scenario opecsim_scenario;
typedef struct opecsim_metrics opecsim_metrics;
typedef struct opecsim_sweep opecsim_sweep;

OPECSIM_API const char* opecsim_version(void);
OPECSIM_API const char* opecsim_status_name(opecsim_status status);
OPECSIM_API const char* opecsim_last_error(void);

/* NULL-terminated array of accepted policy names. */
OPECSIM_API const char* const* opecsim_policy_names(void);

/* ---- Scenario ------------------------------------------------------- */

/* Parses a scenario file (flat key = value format; see README). The file
 * may carry an optional sweep plan via its v_list / policies keys, picked
 * up by opecsim_sweep_run. */
OPECSIM_API opecsim_status opecsim_scenario_load(const char* path,
                                                 opecsim_scenario** out);

/* Built-in two-link reference scenario (cellular + intermittent WiFi). */
OPECSIM_API opecsim_status opecsim_scenario_reference(opecsim_scenario** out);

OPECSIM_API void opecsim_scenario_free(opecsim_scenario* scenario);

OPECSIM_API opecsim_status opecsim_scenario_set_v(opecsim_scenario* scenario,
                                                  double v);
OPECSIM_API opecsim_status opecsim_scenario_set_horizon(
    opecsim_scenario* scenario, uint64_t slots);
OPECSIM_API opecsim_status opecsim_scenario_set_seed(
    opecsim_scenario* scenario, uint64_t seed);
OPECSIM_API opecsim_status opecsim_scenario_set_trace_every(
    opecsim_scenario* scenario, uint64_t every);

OPECSIM_API uint32_t opecsim_scenario_links(const opecsim_scenario* scenario);
OPECSIM_API uint64_t opecsim_scenario_horizon(const opecsim_scenario* scenario);
OPECSIM_API uint64_t opecsim_scenario_seed(const opecsim_scenario* scenario);
OPECSIM_API double opecsim_scenario_v(const opecsim_scenario* scenario);
OPECSIM_API double opecsim_scenario_energy_budget(
    const opecsim_scenario* scenario);

/* ---- Single run ------------------------------------------------------ */

/* Runs one simulation under the named policy. trace_path may be NULL; when
 * given, one t,Q,Z,decision,b,p,r row is written every trace_every slots
 * (every slot if the scenario leaves trace_every at 0). */
OPECSIM_API opecsim_status opecsim_run(const opecsim_scenario* scenario,
                                       const char* policy,
                                       const char* trace_path,
                                       opecsim_metrics** out);

OPECSIM_API void opecsim_metrics_free(opecsim_metrics* metrics);

OPECSIM_API uint64_t opecsim_metrics_slots(const opecsim_metrics* metrics);
OPECSIM_API double opecsim_metrics_avg_queue(const opecsim_metrics* metrics);
OPECSIM_API double opecsim_metrics_avg_reward(const opecsim_metrics* metrics);
OPECSIM_API double opecsim_metrics_avg_energy(const opecsim_metrics* metrics);
OPECSIM_API double opecsim_metrics_final_queue(const opecsim_metrics* metrics);
OPECSIM_API double opecsim_metrics_final_virtual_queue(
    const opecsim_metrics* metrics);
/* final_Q/T and final_Z/T; both vanish for a stable, within-budget run. */
OPECSIM_API double opecsim_metrics_queue_growth(const opecsim_metrics* metrics);
OPECSIM_API double opecsim_metrics_virtual_queue_growth(
    const opecsim_metrics* metrics);
/* 1 when the run's average energy is within the scenario budget. */
OPECSIM_API int opecsim_metrics_energy_ok(const opecsim_metrics* metrics);

/* One-row CSV with the same schema as the sweep table. */
OPECSIM_API opecsim_status opecsim_metrics_write_csv(
    const opecsim_metrics* metrics, const char* path);

/* ---- V sweep --------------------------------------------------------- */

/* Runs one simulation per (policy, V) pair, all against the same master
 * seed so every point observes identical sampled environments. policies is
 * comma-separated; pass NULL to use the scenario file's plan (default
 * "opec"). Pass v_count = 0 to use the file's plan or, failing that, the
 * default grid 1,5,10,20,50,100,150,200. */
OPECSIM_API opecsim_status opecsim_sweep_run(const opecsim_scenario* scenario,
                                             const char* policies,
                                             const double* v_values,
                                             size_t v_count,
                                             opecsim_sweep** out);

OPECSIM_API void opecsim_sweep_free(opecsim_sweep* sweep);

OPECSIM_API size_t opecsim_sweep_rows(const opecsim_sweep* sweep);
OPECSIM_API const char* opecsim_sweep_row_policy(const opecsim_sweep* sweep,
                                                 size_t row);
OPECSIM_API double opecsim_sweep_row_v(const opecsim_sweep* sweep, size_t row);
OPECSIM_API double opecsim_sweep_row_avg_queue(const opecsim_sweep* sweep,
                                               size_t row);
OPECSIM_API double opecsim_sweep_row_avg_reward(const opecsim_sweep* sweep,
                                                size_t row);
OPECSIM_API double opecsim_sweep_row_avg_energy(const opecsim_sweep* sweep,
                                                size_t row);
OPECSIM_API double opecsim_sweep_row_queue_growth(const opecsim_sweep* sweep,
                                                  size_t row);
OPECSIM_API double opecsim_sweep_row_virtual_queue_growth(
    const opecsim_sweep* sweep, size_t row);
OPECSIM_API int opecsim_sweep_row_energy_ok(const opecsim_sweep* sweep,
                                            size_t row);

/* Writes the table: header policy,V,avg_Q,avg_r,avg_p,Q_over_T,Z_over_T,
 * energy_ok, then one row per (policy, V). Byte-deterministic. */
OPECSIM_API opecsim_status opecsim_sweep_write_csv(const opecsim_sweep* sweep,
                                                   const char* path);

#ifdef __cplusplus
}
#endif

#endif /* OPECSIM_H */
