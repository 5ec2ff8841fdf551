#ifndef VAMZ_H
#define VAMZ_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum VamzStatus {
  VAMZ_STATUS_OK = 0,
  VAMZ_STATUS_NULL_POINTER = 1,
  VAMZ_STATUS_INVALID_UTF8 = 2,
  VAMZ_STATUS_PARSE_ERROR = 3,
  VAMZ_STATUS_INVALID_ARGUMENT = 4,
  VAMZ_STATUS_WEIGHT_CAP_EXCEEDED = 5,
  VAMZ_STATUS_IO = 6,
  VAMZ_STATUS_PANIC = 7,
} VamzStatus;

/**
 * Opaque handle to a state of the Fock space.
 */
typedef struct VamzState VamzState;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failed call on this thread, or NULL. The pointer is
 * valid until the next library call on the same thread.
 */
const char *vamz_last_error_message(void);

/**
 * Parses a state such as `a(-1)^2|0> - 1/2*a(-2)|0>`.
 *
 * # Safety
 * `text` must be NUL-terminated; `out` must be writable.
 */
enum VamzStatus vamz_state_parse(const char *text, struct VamzState **out);

/**
 * Canonical text of a state; free with `vamz_string_free`.
 *
 * # Safety
 * `s` must be a live handle; `out` must be writable.
 */
enum VamzStatus vamz_state_format(const struct VamzState *s, char **out);

/**
 * Exact equality of two states.
 *
 * # Safety
 * Both handles must be live; `out` must be writable.
 */
enum VamzStatus vamz_state_equal(const struct VamzState *a, const struct VamzState *b, bool *out);

/**
 * # Safety
 * `s` must be NULL or a handle from this library not yet freed.
 */
void vamz_state_free(struct VamzState *s);

/**
 * # Safety
 * `s` must be NULL or a string from this library not yet freed.
 */
void vamz_string_free(char *s);

/**
 * `A(n)w` by the memoized recursion.
 *
 * # Safety
 * Handles must be live; `out` must be writable.
 */
enum VamzStatus vamz_mode_product(const struct VamzState *a,
                                  int64_t n,
                                  const struct VamzState *w,
                                  struct VamzState **out);

/**
 * `A(n)w` by normal-ordered coefficient extraction.
 *
 * # Safety
 * Handles must be live; `out` must be writable.
 */
enum VamzStatus vamz_mode_product_oracle(const struct VamzState *a,
                                         int64_t n,
                                         const struct VamzState *w,
                                         struct VamzState **out);

/**
 * `a(n)w`.
 *
 * # Safety
 * `w` must be live; `out` must be writable.
 */
enum VamzStatus vamz_apply_alpha(int64_t n, const struct VamzState *w, struct VamzState **out);

/**
 * `D w`.
 *
 * # Safety
 * `w` must be live; `out` must be writable.
 */
enum VamzStatus vamz_translate_d(const struct VamzState *w, struct VamzState **out);

/**
 * `L(n) w`.
 *
 * # Safety
 * `w` must be live; `out` must be writable.
 */
enum VamzStatus vamz_virasoro_l(int64_t n, const struct VamzState *w, struct VamzState **out);

/**
 * Zhu star product `a ⋆ b`.
 *
 * # Safety
 * Handles must be live; `out` must be writable.
 */
enum VamzStatus vamz_zhu_star(const struct VamzState *a,
                              const struct VamzState *b,
                              struct VamzState **out);

/**
 * Mathieu-Zhao decision for a subspace spec such as
 * `lengths mod 3 in {1,2}`. Writes `{"reason", "verdict", "witness_d"?}`.
 *
 * # Safety
 * `space` must be NUL-terminated; `out_json` must be writable.
 */
enum VamzStatus vamz_mz_decide(const char *space, char **out_json);

/**
 * Same decision for a set such as `mod 2 in {0}`.
 *
 * # Safety
 * `set` must be NUL-terminated; `out_json` must be writable.
 */
enum VamzStatus vamz_set_mz_decide(const char *set, char **out_json);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* VAMZ_H */
