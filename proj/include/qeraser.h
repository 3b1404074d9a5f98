/* qeraser: delayed-choice coincidence pattern engine, C interface.
 *
 * All functions are thread-compatible; the error string is thread-local.
 * Every entry point returns a qe_status; on failure qe_last_error() holds a
 * human-readable message until the next call on the same thread.
 */
#ifndef QERASER_H
#define QERASER_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum qe_status {
  QE_OK = 0,
  QE_ERROR_PARSE = 1,            /* config text/file could not be parsed */
  QE_ERROR_INVALID_ARGUMENT = 2, /* bad handle, null pointer, bad value */
  QE_ERROR_RUNTIME = 3,          /* engine failure during a run */
  QE_ERROR_IO = 4                /* file could not be read or written */
} qe_status;

typedef enum qe_detector {
  QE_D1 = 0,
  QE_D2 = 1,
  QE_D3 = 2,
  QE_D4 = 3
} qe_detector;

/* Opaque configuration handle. */
typedef struct qe_config qe_config;

/* Library version string, e.g. "1.0.0". Never fails. */
const char* qe_version(void);

/* Message for the most recent failure on this thread; "" if none. */
const char* qe_last_error(void);

/* Fresh config with built-in defaults. Returns NULL on allocation failure. */
qe_config* qe_config_default(void);

/* Parse config text / load a config file into a new handle. On failure
 * *out is set to NULL. */
qe_status qe_config_parse(const char* text, qe_config** out);
qe_status qe_config_load(const char* path, qe_config** out);

/* Apply one "key" / "value" assignment, same keys as the config file. */
qe_status qe_config_set(qe_config* cfg, const char* key, const char* value);

/* Serialize the full config. Writes at most buf_size bytes including the
 * terminator; *needed (optional) receives the full length excluding the
 * terminator. A NULL buf with buf_size 0 just measures. */
qe_status qe_config_write(const qe_config* cfg, char* buf, size_t buf_size,
                          size_t* needed);

void qe_config_free(qe_config* cfg);

/* Report-line callback used by qe_run. */
typedef void (*qe_report_fn)(const char* line, void* user);

/* Execute the configured run. out_path, when non-NULL, overrides the
 * configured output path. report may be NULL. */
qe_status qe_run(const qe_config* cfg, const char* out_path,
                 qe_report_fn report, void* user);

/* Analytic transaction probability density for one detector channel at
 * screen position x [m], using the config's geometry, efficiency and
 * overlap phase (bandwidth-averaged when a bandwidth is configured). */
qe_status qe_ti_pattern(const qe_config* cfg, qe_detector d, double x,
                        double* out);

/* Time-averaged two-photon coincidence rate from the operator engine. */
qe_status qe_oracle_rate(const qe_config* cfg, qe_detector d, double x,
                         double* out);

/* Idler wave-packet intensity at D1 for screen position x [m] at the
 * configured evaluation time, honoring the suppress-advanced switch. */
qe_status qe_wavepacket_intensity(const qe_config* cfg, double x, double* out);

#ifdef __cplusplus
}
#endif

#endif /* QERASER_H */
