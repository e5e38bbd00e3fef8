#ifndef HSL_H
#define HSL_H

/* Generated from the Rust sources by the build script; do not edit by hand. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Status of a C-interface call.
 */
typedef enum HslStatus {
  /**
   * Success.
   */
  HSL_OK = 0,
  /**
   * The script ran into an engine-level failure; partial results (ending
   * with an error document) are still returned.
   */
  HSL_ERR_ENGINE = 1,
  /**
   * The script does not parse; details via `hsl_last_error`.
   */
  HSL_ERR_SYNTAX = 2,
  /**
   * A required pointer argument was NULL.
   */
  HSL_ERR_NULL_ARG = 3,
  /**
   * The script bytes are not valid UTF-8.
   */
  HSL_ERR_UTF8 = 4,
  /**
   * An internal panic was caught at the boundary.
   */
  HSL_ERR_PANIC = 5,
} HslStatus;

/**
 * Opaque evaluation session. Holds options and the last error message.
 */
typedef struct HslSession HslSession;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Creates a session. Never returns NULL; release with `hsl_session_free`.
 */
struct HslSession *hsl_session_new(void);

/**
 * Releases a session created by `hsl_session_new`. NULL is a no-op.
 *
 * # Safety
 * `session` must be a pointer returned by `hsl_session_new` that has not
 * been freed already.
 */
void hsl_session_free(struct HslSession *session);

/**
 * Sets the Groebner pair-step budget for subsequent evaluations
 * (0 restores the default).
 *
 * # Safety
 * `session` must be a live session pointer.
 */
enum HslStatus hsl_set_max_steps(struct HslSession *session, uint64_t n);

/**
 * Evaluates a script. On `HSL_OK` and `HSL_ERR_ENGINE`, `*out_json`
 * receives a newly allocated JSON array of result documents (free it
 * with `hsl_string_free`); on other statuses it is set to NULL.
 *
 * # Safety
 * `session` must be a live session pointer, `script` a NUL-terminated
 * string, and `out_json` a valid destination pointer.
 */
enum HslStatus hsl_eval(struct HslSession *session, const char *script, char **out_json);

/**
 * The last error message of this session, or NULL when the previous call
 * succeeded. The pointer is owned by the session and is valid until the
 * next call on it.
 *
 * # Safety
 * `session` must be a live session pointer.
 */
const char *hsl_last_error(const struct HslSession *session);

/**
 * Releases a string returned through `out_json`. NULL is a no-op.
 *
 * # Safety
 * `s` must be a pointer produced by this library that has not been freed.
 */
void hsl_string_free(char *s);

/**
 * Engine version as a static NUL-terminated string.
 */
const char *hsl_version(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* HSL_H */
