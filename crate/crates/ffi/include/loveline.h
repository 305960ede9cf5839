#ifndef LOVELINE_H
#define LOVELINE_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum LovelineStatus {
  LOVELINE_STATUS_OK = 0,
  LOVELINE_STATUS_NULL_ARGUMENT = 1,
  LOVELINE_STATUS_INVALID_UTF8 = 2,
  LOVELINE_STATUS_PARSE_ERROR = 3,
  LOVELINE_STATUS_QUERY_OUT_OF_RANGE = 4,
  LOVELINE_STATUS_EVAL_ERROR = 5,
  /**
   * A rational does not fit the fixed-width fields of [`LovelineRational`].
   */
  LOVELINE_STATUS_OVERFLOW = 6,
  LOVELINE_STATUS_INVALID_ARGUMENT = 7,
} LovelineStatus;

/**
 * Opaque handle to a parsed and validated timeline document.
 */
typedef struct LovelineDocument LovelineDocument;

/**
 * `numer / denom` in lowest terms, `denom > 0`.
 */
typedef struct LovelineRational {
  int64_t numer;
  int64_t denom;
} LovelineRational;

typedef struct LovelineVerdict {
  bool holds;
  /**
   * Loving sum.
   */
  struct LovelineRational s;
  /**
   * Loving complement.
   */
  struct LovelineRational c;
  struct LovelineRational threshold;
} LovelineVerdict;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message describing the last failure on this thread, or null. The pointer
 * stays valid until the next call into this library on the same thread.
 */
const char *loveline_last_error(void);

/**
 * Parses `text` as a loveline v1 document and stores a new handle in `*out`.
 * On `LOVELINE_STATUS_PARSE_ERROR` the last error holds every diagnostic,
 * one per line, and `*out` is set to null.
 *
 * # Safety
 * `text` must be a valid NUL-terminated string and `out` a valid pointer.
 */
enum LovelineStatus loveline_document_parse(const char *text, struct LovelineDocument **out);

/**
 * # Safety
 * `doc` must be null or a handle from [`loveline_document_parse`] not yet freed.
 */
void loveline_document_free(struct LovelineDocument *doc);

/**
 * Number of queries in the document; 0 for a null handle.
 *
 * # Safety
 * `doc` must be null or a live handle.
 */
size_t loveline_document_query_count(const struct LovelineDocument *doc);

/**
 * Evaluates query `index` (0-based) into `*out`.
 *
 * # Safety
 * `doc` must be a live handle and `out` a valid pointer.
 */
enum LovelineStatus loveline_document_evaluate(const struct LovelineDocument *doc,
                                               size_t index,
                                               struct LovelineVerdict *out);

/**
 * All verdicts as a JSON array (same schema as `loveline eval --format json`),
 * or null on failure.
 *
 * # Safety
 * `doc` must be a live handle.
 */
char *loveline_document_eval_json(const struct LovelineDocument *doc);

/**
 * Text trace for query `index` (0-based), or null on failure.
 *
 * # Safety
 * `doc` must be a live handle.
 */
char *loveline_document_explain(const struct LovelineDocument *doc, size_t index);

/**
 * The BFO export lines for the document, or null on failure.
 *
 * # Safety
 * `doc` must be a live handle.
 */
char *loveline_document_export_bfo(const struct LovelineDocument *doc);

/**
 * Compares query `index` (0-based) against the tick oracle at `granularity`
 * (a rational literal such as `"1/2"`); `*agree` receives the outcome.
 *
 * # Safety
 * `doc` must be a live handle, `granularity` a NUL-terminated string and
 * `agree` a valid pointer.
 */
enum LovelineStatus loveline_document_oracle(const struct LovelineDocument *doc,
                                             size_t index,
                                             const char *granularity,
                                             bool *agree);

/**
 * Releases a string returned by this library. Null is ignored.
 *
 * # Safety
 * `s` must be null or a pointer returned by this library and not yet freed.
 */
void loveline_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* LOVELINE_H */
