#ifndef INTERVALFMT_H
#define INTERVALFMT_H

/* Generated by cbindgen from intervalfmt-ffi; do not edit by hand. */

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result of every FFI call.
 */
typedef enum {
  IVF_STATUS_OK = 0,
  /**
   * A required pointer argument was NULL.
   */
  IVF_STATUS_NULL_POINTER = 1,
  /**
   * Input text was not valid UTF-8.
   */
  IVF_STATUS_INVALID_UTF8 = 2,
  /**
   * Input text failed to parse; see `ivf_last_error_message`.
   */
  IVF_STATUS_SYNTAX = 3,
  /**
   * The notation is not allowed under the selected convention mode.
   */
  IVF_STATUS_MODE_MISMATCH = 4,
  /**
   * Reconstructed bounds were out of order.
   */
  IVF_STATUS_BOUNDS_REVERSED = 5,
  /**
   * A value does not fit in the binary format.
   */
  IVF_STATUS_OVERFLOW = 6,
  /**
   * The operation needs bounded interval sides.
   */
  IVF_STATUS_UNBOUNDED = 7,
  /**
   * An argument was outside its valid range.
   */
  IVF_STATUS_INVALID_ARGUMENT = 8,
  /**
   * An internal error was caught at the FFI boundary.
   */
  IVF_STATUS_INTERNAL = 9,
} IvfStatus;

/**
 * Meaning of a bare numeral on input.
 */
typedef enum {
  IVF_MODE_POINT = 0,
  IVF_MODE_PHYSICS = 1,
  IVF_MODE_SINGLE_NUMBER = 2,
  IVF_MODE_CLIP = 3,
} IvfMode;

/**
 * Output styles for `ivf_format`.
 */
typedef enum {
  IVF_STYLE_FACTORED = 0,
  IVF_STYLE_PLAIN = 1,
  IVF_STYLE_CENTER_ANGLE = 2,
  IVF_STYLE_CENTER_PLUS = 3,
  IVF_STYLE_SINGLE_NUMBER = 4,
} IvfStyle;

/**
 * Opaque interval handle.
 */
typedef struct IvfInterval IvfInterval;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Parses an interval notation under a convention mode into a new handle.
 * The handle must be freed with `ivf_interval_free`.
 *
 * # Safety
 * `text` must be a valid NUL-terminated string and `out` a valid pointer.
 */
IvfStatus ivf_parse(const char *text, IvfMode mode, IvfInterval **out);

/**
 * Builds an interval from two decimal bound texts (point convention).
 *
 * # Safety
 * Both bound strings must be valid NUL-terminated strings; `out` must be
 * a valid pointer.
 */
IvfStatus ivf_interval_from_bounds(const char *lower, const char *upper, IvfInterval **out);

/**
 * Releases a handle returned by `ivf_parse` or `ivf_interval_from_bounds`.
 * NULL is accepted and ignored.
 *
 * # Safety
 * `ptr` must be NULL or a handle previously returned by this library, and
 * must not be used afterwards.
 */
void ivf_interval_free(IvfInterval *ptr);

/**
 * Renders an interval. `digits` selects the bracket digit count: a
 * positive value is used as-is, 0 picks the default (three, capped), and
 * any negative value keeps every available digit. The single-number style
 * ignores `digits`.
 *
 * # Safety
 * `handle` must be a live handle and `out` a valid pointer; the returned
 * string must be freed with `ivf_string_free`.
 */
IvfStatus ivf_format(const IvfInterval *handle, IvfStyle style, int32_t digits, char **out);

/**
 * Renders the full widening sequence, one row per line.
 *
 * # Safety
 * `handle` must be a live handle and `out` a valid pointer; the returned
 * string must be freed with `ivf_string_free`.
 */
IvfStatus ivf_pyramid(const IvfInterval *handle, char **out);

/**
 * Uncertainty of the interval in dits (log10 of the width). Point
 * intervals give negative infinity, unbounded ones positive infinity.
 *
 * # Safety
 * `handle` must be a live handle and `out` a valid pointer.
 */
IvfStatus ivf_uncertainty(const IvfInterval *handle, double *out);

/**
 * Information yield in dits of the k-th bracket digit.
 *
 * # Safety
 * `handle` must be a live handle and `out` a valid pointer.
 */
IvfStatus ivf_marginal_yield(const IvfInterval *handle, uint32_t k, double *out);

/**
 * Recommended bracket digit count. A positive `threshold` runs the
 * yield-threshold policy (in dits); zero or below picks the default
 * (three digits, capped at the available count).
 *
 * # Safety
 * `handle` must be a live handle and `out` a valid pointer.
 */
IvfStatus ivf_select_digits(const IvfInterval *handle, double threshold, uint32_t *out);

/**
 * Number of rows `ivf_pyramid` will produce.
 *
 * # Safety
 * `handle` must be a live handle and `out` a valid pointer.
 */
IvfStatus ivf_pyramid_height(const IvfInterval *handle, uint32_t *out);

/**
 * Frees a string returned by this library. NULL is accepted and ignored.
 *
 * # Safety
 * `ptr` must be NULL or a string previously returned by this library, and
 * must not be used afterwards.
 */
void ivf_string_free(char *ptr);

/**
 * Static name of a status code.
 */
const char *ivf_status_name(IvfStatus status);

/**
 * Detail text for the most recent error on this thread, or NULL. The
 * caller owns the string and frees it with `ivf_string_free`.
 */
char *ivf_last_error_message(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* INTERVALFMT_H */
