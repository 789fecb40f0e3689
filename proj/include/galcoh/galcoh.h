/*
 * C interface to the galcoh library: group cohomology of finite groups,
 * p-adic square classes and the surface analysis job runner.
 *
 * All handles are opaque. Functions return a galcoh_status; on failure the
 * context keeps a message available through galcoh_last_error(). Strings
 * returned by the library are owned by the handle they came from.
 */
#ifndef GALCOH_GALCOH_H
#define GALCOH_GALCOH_H

#include <stddef.h>
#include <stdint.h>

#if defined(GALCOH_BUILDING_LIBRARY)
#define GALCOH_API __attribute__((visibility("default")))
#else
#define GALCOH_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

/* Status codes double as CLI exit codes. */
typedef enum galcoh_status {
  GALCOH_OK = 0,
  GALCOH_BAD_ARGUMENT = 1,  /* null pointer or out-of-range argument */
  GALCOH_INVALID_INPUT = 2, /* mathematically invalid input */
  GALCOH_PRECISION = 3,     /* p-adic decision not certified within the cap */
  GALCOH_SCHEMA = 4,        /* malformed job document */
  GALCOH_INTERNAL = 5
} galcoh_status;

typedef enum galcoh_format { GALCOH_FORMAT_JSON = 0, GALCOH_FORMAT_TEXT = 1 } galcoh_format;

typedef struct galcoh_context galcoh_context;
typedef struct galcoh_report galcoh_report;

GALCOH_API const char* galcoh_version(void);
GALCOH_API const char* galcoh_status_string(galcoh_status status);

GALCOH_API galcoh_status galcoh_context_create(galcoh_context** out);
GALCOH_API void galcoh_context_destroy(galcoh_context* ctx);
/* Message of the last failed call on this context ("" if none). */
GALCOH_API const char* galcoh_last_error(const galcoh_context* ctx);

/* Initial working precision in uniformizer digits; 0 restores the default. */
GALCOH_API galcoh_status galcoh_context_set_precision(galcoh_context* ctx, long digits);
/* Seed for randomized self-check jobs. */
GALCOH_API galcoh_status galcoh_context_set_seed(galcoh_context* ctx, uint64_t seed);

/*
 * Runs a JSON job document. A report is produced whenever the document
 * could be read; per-job failures are recorded in it and reflected in
 * galcoh_report_exit_code(). The return value is GALCOH_OK unless no report
 * could be produced.
 */
GALCOH_API galcoh_status galcoh_run_jobs(galcoh_context* ctx, const char* document, galcoh_format format,
                                         int trace, galcoh_report** out);
GALCOH_API const char* galcoh_report_text(const galcoh_report* report);
GALCOH_API int galcoh_report_exit_code(const galcoh_report* report);
GALCOH_API void galcoh_report_destroy(galcoh_report* report);

/*
 * Invariant factors of a rows x cols integer matrix (row-major), written to
 * `factors` (capacity min(rows, cols)); `rank` receives their count.
 * GALCOH_INVALID_INPUT if a factor does not fit in a long.
 */
GALCOH_API galcoh_status galcoh_smith_invariants(galcoh_context* ctx, size_t rows, size_t cols,
                                                 const long* entries, long* factors, size_t* rank);

/*
 * Square test in a local field given as JSON ({"p": 2, "tower": [...]}) for
 * an element in the expression grammar (integers, a/b, t1, t2, + - * ^).
 */
GALCOH_API galcoh_status galcoh_is_square(galcoh_context* ctx, const char* field_json, const char* element,
                                          int* is_square);

#ifdef __cplusplus
}
#endif

#endif /* GALCOH_GALCOH_H */
