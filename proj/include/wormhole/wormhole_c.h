/* C interface to the wave-map simulation library.
 *
 * Usage: create a config, set key=value parameters (or load a file), then
 * invoke one of the wm_run_* entry points, which write their CSV/JSON
 * artifacts to the paths named in the config. All functions return WM_OK on
 * success; on failure wm_last_error() describes the problem (thread-local).
 */
#ifndef WORMHOLE_C_H
#define WORMHOLE_C_H

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum wm_status {
  WM_OK = 0,
  WM_ERR_INVALID_ARGUMENT = 1, /* bad key, value, or missing parameter */
  WM_ERR_IO = 2,               /* file could not be read or written */
  WM_ERR_RUNTIME = 3,          /* solver or fit failure */
} wm_status;

typedef struct wm_config wm_config;

wm_config* wm_config_create(void);
void wm_config_destroy(wm_config* cfg);

/* key=value file; '#' comments; later assignments (and wm_config_set calls
 * made afterwards) win. */
wm_status wm_config_load_file(wm_config* cfg, const char* path);
wm_status wm_config_set(wm_config* cfg, const char* key, const char* value);

/* Returns the stored value or NULL; the pointer is valid until the next
 * mutation of cfg. */
const char* wm_config_get(const wm_config* cfg, const char* key);

/* One PDE evolution with diagnostics (keys: family, b, n, s_end, out_csv,
 * out_json, out_field_csv, tolerances). */
wm_status wm_run_evolve(const wm_config* cfg);

/* Threshold bisection (keys: family, blo, bhi, eps, n, s_end, out_json,
 * probe_dir). */
wm_status wm_run_bisect(const wm_config* cfg);

/* Expansion-law fit of a trajectory CSV (keys: input_csv, exponent or
 * family, window_tmin/window_tmax overrides, out_json). */
wm_status wm_run_fit(const wm_config* cfg);

/* Reduced chain-model integration (keys: N, t0, t1, c or r0/rdot0, out_csv,
 * out_json). */
wm_status wm_run_ode_integrate(const wm_config* cfg);

/* Asymptotic series tabulation for N=4,5 (keys: N, c, t0, t1, num_samples,
 * out_csv, out_json). */
wm_status wm_run_ode_series(const wm_config* cfg);

/* Aggregates JSON manifests into a comparison table (keys: inputs as a
 * comma-separated path list, out_json, out_text). */
wm_status wm_run_report(const wm_config* cfg);

/* On success, copies the one-line summary of the most recent wm_run_* call
 * on this thread into buf (truncating); returns the full length. */
size_t wm_last_summary(char* buf, size_t buflen);

/* Message for the most recent failure on this thread; never NULL. */
const char* wm_last_error(void);

const char* wm_version(void);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* WORMHOLE_C_H */
