#ifndef QGWA_H
#define QGWA_H

/* Generated by cbindgen from the qgwa-ffi crate; do not edit by hand. */

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

// Status codes returned by the entry points. The nonzero values mirror the
// CLI exit codes so embedders can treat them uniformly.
#define QGWA_STATUS_OK 0

// The configuration violates a structural hypothesis (for example
// `gcd(m, n) != 1`); the report still contains the stages that ran.
#define QGWA_STATUS_HYPOTHESIS 2

// The input document failed to parse; the report contains the error.
#define QGWA_STATUS_PARSE 3

// A cross-check or brute-force verification failed.
#define QGWA_STATUS_CROSS_CHECK 4

// A null pointer, invalid UTF-8, or an internal panic.
#define QGWA_STATUS_INTERNAL -1

// Opaque analysis report. Created by [`qgwa_analyze`], released by
// [`qgwa_report_free`].
typedef struct QgwaReport QgwaReport;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Parses and analyzes one input document.
//
// `input` must be a NUL-terminated UTF-8 input document. On return `*out`
// holds a report handle (even when the status is nonzero, so diagnostics can
// be read from it), or null on `QGWA_STATUS_INTERNAL`. The returned status
// is the report's exit code.
//
// # Safety
// `input` must point to a valid NUL-terminated string and `out` to a valid
// pointer slot; both must stay valid for the duration of the call.
int32_t qgwa_analyze(const char *input, QgwaReport **out);

// Returns the report's exit code (see the status constants), or
// `QGWA_STATUS_INTERNAL` for a null handle.
//
// # Safety
// `report` must be null or a handle returned by [`qgwa_analyze`] that has
// not been freed.
int32_t qgwa_report_status(const QgwaReport *report);

// Renders the report as deterministic pretty-printed JSON. The returned
// string must be released with [`qgwa_string_free`]. Null on failure.
//
// # Safety
// `report` must be null or a handle returned by [`qgwa_analyze`] that has
// not been freed.
char *qgwa_report_json(const QgwaReport *report);

// Renders the report in the human-readable text format. The returned string
// must be released with [`qgwa_string_free`]. Null on failure.
//
// # Safety
// Same as [`qgwa_report_json`].
char *qgwa_report_text(const QgwaReport *report);

// Releases a report handle. Null is a no-op.
//
// # Safety
// `report` must be null or a handle returned by [`qgwa_analyze`] that has
// not already been freed.
void qgwa_report_free(QgwaReport *report);

// Releases a string returned by this library. Null is a no-op.
//
// # Safety
// `s` must be null or a string returned by this library that has not
// already been freed.
void qgwa_string_free(char *s);

// Returns the library version as a static string. Do not free it.
const char *qgwa_version(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* QGWA_H */
