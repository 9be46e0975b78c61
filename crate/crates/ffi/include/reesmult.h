#ifndef REESMULT_H
#define REESMULT_H

/* Generated by cbindgen; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result of every call.
 */
typedef enum ReesmultStatus {
  REESMULT_STATUS_OK = 0,
  REESMULT_STATUS_NULL_POINTER = 1,
  REESMULT_STATUS_INVALID_UTF8 = 2,
  REESMULT_STATUS_PARSE_ERROR = 3,
  REESMULT_STATUS_INVALID_ARGUMENT = 4,
  REESMULT_STATUS_NOT_M_PRIMARY = 5,
  REESMULT_STATUS_OVERFLOW = 6,
  REESMULT_STATUS_STABILIZATION_FAILURE = 7,
  REESMULT_STATUS_VIOLATION = 8,
  REESMULT_STATUS_PANIC = 9,
} ReesmultStatus;

/**
 * Opaque parsed session.
 */
typedef struct ReesmultSession ReesmultSession;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Parses DSL `text` into a new session stored in `*out`.
 *
 * # Safety
 * `text` must be a NUL-terminated string and `out` a valid pointer.
 */
enum ReesmultStatus reesmult_session_parse(const char *text, struct ReesmultSession **out);

/**
 * Releases a session; null is ignored.
 *
 * # Safety
 * `session` must come from [`reesmult_session_parse`] and not be used again.
 */
void reesmult_session_free(struct ReesmultSession *session);

/**
 * Writes the analysis of the comma-separated ideals as a JSON document to
 * `*out_json`. A nonzero `oracle` enables the graded-piece cross-check.
 * Returns `Violation` (with the JSON still written) when a check fails or
 * the oracle disagrees.
 *
 * # Safety
 * Pointers must be valid; `ideals_csv` NUL-terminated.
 */
enum ReesmultStatus reesmult_analyze_json(const struct ReesmultSession *session_ptr,
                                          const char *ideals_csv,
                                          int32_t oracle,
                                          char **out_json);

/**
 * `e(I₁^{[w₁]}|…|I_g^{[w_g]})` for the comma-separated ideals and `len`
 * weights.
 *
 * # Safety
 * `weights` must point to `len` readable values; other pointers valid.
 */
enum ReesmultStatus reesmult_mixed_multiplicity(const struct ReesmultSession *session_ptr,
                                                const char *ideals_csv,
                                                const uint32_t *weights,
                                                size_t len,
                                                uint64_t *out);

/**
 * `ℓ(R/I)`; `NotMPrimary` when infinite.
 *
 * # Safety
 * Pointers must be valid; `ideal` NUL-terminated.
 */
enum ReesmultStatus reesmult_colength(const struct ReesmultSession *session_ptr,
                                      const char *ideal,
                                      uint64_t *out);

/**
 * Releases a string returned by this library; null is ignored.
 *
 * # Safety
 * `s` must come from this library and not be used again.
 */
void reesmult_string_free(char *s);

/**
 * Message for the last failed call on this thread ("" after success). The
 * pointer stays valid until the next call on the same thread.
 */
const char *reesmult_last_error(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* REESMULT_H */
