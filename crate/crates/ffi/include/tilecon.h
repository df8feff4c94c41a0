/* C interface for the tilecon connectedness engine. */

#ifndef TILECON_H
#define TILECON_H

/* Generated by cbindgen; edit src/lib.rs instead. */

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

/*
 Status code returned by every fallible function.
 */
typedef enum TcStatus {
  /*
   Success.
   */
  TC_OK = 0,
  /*
   Malformed or out-of-domain input.
   */
  TC_INVALID_INPUT = 1,
  /*
   The automaton state limit was exceeded.
   */
  TC_RESOURCE_LIMIT = 2,
  /*
   Internal failure; see `tc_last_error_message`.
   */
  TC_INTERNAL = 3,
  /*
   A required pointer argument was null.
   */
  TC_NULL_ARGUMENT = 4,
} TcStatus;

/*
 Opaque handle: a digit system plus decision options and a cached
 membership automaton.
 */
typedef struct TcSystem TcSystem;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/*
 Build a digit system for `f(x) = x^2 + px + q` with the comma-separated
 digit coefficients in `digits_csv`. On success `*out_system` owns the new
 handle; release it with [`tc_system_free`].

 # Safety
 `digits_csv` must be a valid NUL-terminated string and `out_system` a
 valid pointer.
 */
enum TcStatus tc_system_new(int64_t p,
                            int64_t q,
                            const char *digits_csv,
                            struct TcSystem **out_system);

/*
 Release a handle created by [`tc_system_new`]. Null is a no-op.

 # Safety
 `system` must be a pointer previously returned by [`tc_system_new`] that
 has not been freed already.
 */
void tc_system_free(struct TcSystem *system);

/*
 Override the number of explicitly summed tail-bound terms (default 13).
 Resets the cached automaton.

 # Safety
 `system` must be a live handle.
 */
enum TcStatus tc_system_set_bound_terms(struct TcSystem *system, uintptr_t terms);

/*
 Override the automaton state limit (default 10^7). Resets the cached
 automaton.

 # Safety
 `system` must be a live handle.
 */
enum TcStatus tc_system_set_state_limit(struct TcSystem *system, uintptr_t limit);

/*
 Decide connectedness and return the JSON report (schema 1, identical to
 the CLI `analyze` output). The returned string is owned by the caller;
 free it with [`tc_string_free`].

 # Safety
 `system` must be a live handle and `out_json` a valid pointer.
 */
enum TcStatus tc_analyze_json(const struct TcSystem *system, char **out_json);

/*
 Decide whether `gamma v + delta Av` (rationals as text) lies in `T - T`.
 `*out_member` receives 0 or 1. When the point is a member and
 `out_witness` is non-null, `*out_witness` receives the digit witness in
 the expansion grammar (free with [`tc_string_free`]); otherwise it is set
 to null.

 # Safety
 `system` must be a live handle; `gamma`, `delta` valid strings;
 `out_member` a valid pointer; `out_witness` null or valid.
 */
enum TcStatus tc_is_member(const struct TcSystem *system,
                           const char *gamma,
                           const char *delta,
                           int32_t *out_member,
                           char **out_witness);

/*
 Evaluate `expansion` (grammar `int.(pre)[period]`) in base
 `x^2 + px + q` and compare with the target point. When `digits_csv` is
 non-null the fractional digits must also come from the difference set of
 those digits. `*out_verified` receives 0 or 1.

 # Safety
 String arguments must be valid NUL-terminated strings (or null where
 documented); `out_verified` must be a valid pointer.
 */
enum TcStatus tc_verify_expansion(int64_t p,
                                  int64_t q,
                                  const char *expansion,
                                  const char *gamma,
                                  const char *delta,
                                  const char *digits_csv,
                                  int32_t *out_verified);

/*
 Run the three-digit sweep `D = {0, 1, b}` over the comma-separated `b`
 samples and return the CSV (same layout as the CLI `sweep` output).

 # Safety
 `b_values_csv` must be a valid string and `out_csv` a valid pointer.
 */
enum TcStatus tc_sweep_csv(int64_t p, int64_t q, const char *b_values_csv, char **out_csv);

/*
 Enumerate the attractor and write a binary PGM image. `depth = 0` picks
 the default rule (smallest depth with at least 10^5 points). `basis` is
 an optional `"x,y"` vector, defaulting to `(1, 0)`.

 # Safety
 `system` must be a live handle; `path` a valid string; `basis` null or a
 valid string.
 */
enum TcStatus tc_render_pgm(const struct TcSystem *system,
                            uintptr_t depth,
                            uint32_t width,
                            uint32_t height,
                            double margin,
                            const char *basis,
                            const char *path);

/*
 Number of tail-bound terms the library uses by default.
 */
uintptr_t tc_default_bound_terms(void);

/*
 Default automaton state limit.
 */
uintptr_t tc_default_state_limit(void);

/*
 Release a string returned by this library. Null is a no-op.

 # Safety
 `s` must be a pointer previously returned by a `tc_*` function and not
 yet freed.
 */
void tc_string_free(char *s);

/*
 Message describing the most recent failure on this thread. The pointer
 stays valid until the next failing `tc_*` call on the same thread.
 */
const char *tc_last_error_message(void);

#ifdef __cplusplus
} // extern "C"
#endif // __cplusplus

#endif /* TILECON_H */
