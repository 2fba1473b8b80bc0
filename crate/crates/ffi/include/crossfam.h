#ifndef CROSSFAM_H
#define CROSSFAM_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

#define XF_ARG_N 1

#define XF_ARG_A 2

#define XF_ARG_B 4

#define XF_ARG_T 8

#define XF_ARG_S 16

#define XF_ARG_K 32

typedef enum XfStatus {
  XF_STATUS_OK = 0,
  XF_STATUS_NULL_POINTER = 1,
  XF_STATUS_INVALID_UTF8 = 2,
  XF_STATUS_INVALID_ARGUMENT = 3,
  XF_STATUS_PARSE = 4,
  XF_STATUS_TOO_LARGE = 5,
  XF_STATUS_NOT_CROSS_INTERSECTING = 6,
  XF_STATUS_CONTRADICTORY = 7,
  XF_STATUS_FORM_MISMATCH = 8,
  /**
   * A panic was caught at the boundary.
   */
  XF_STATUS_INTERNAL = 9,
} XfStatus;

/**
 * Opaque cross-intersecting pair handle.
 */
typedef struct XfCrossPair XfCrossPair;

/**
 * Opaque family handle.
 */
typedef struct XfFamily XfFamily;

/**
 * Construction parameters; 0 marks a parameter as absent.
 */
typedef struct XfParams {
  uint32_t n;
  uint32_t a;
  uint32_t b;
  uint32_t t;
  uint32_t s;
  uint32_t k;
  uint32_t i;
} XfParams;

/**
 * Formula arguments; `present` is an OR of `XF_ARG_*` bits.
 */
typedef struct XfCountArgs {
  int64_t n;
  int64_t a;
  int64_t b;
  int64_t t;
  int64_t s;
  int64_t k;
  uint32_t present;
} XfCountArgs;

/**
 * Covering-number constraints for [`xf_search_cross_sum`].
 */
typedef struct XfConstraint {
  uint32_t f_value;
  /**
   * Nonzero: `τ(F)` must equal `f_value`; zero: at least.
   */
  uint8_t f_exact;
  uint32_t g_value;
  uint8_t g_exact;
  /**
   * Nonzero: only initial families.
   */
  uint8_t initial_only;
} XfConstraint;

/**
 * Search options; a null pointer means defaults.
 */
typedef struct XfSearchOptions {
  uint8_t force;
  /**
   * Worker threads; 0 uses the global pool.
   */
  uint32_t threads;
  /**
   * Nonzero: omit `nodes` and `elapsed_ms` from the JSON.
   */
  uint8_t stable;
} XfSearchOptions;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failed call on this thread, or null. Valid until the
 * next call on this thread.
 */
const char *xf_last_error(void);

/**
 * Library version as a static string.
 */
const char *xf_version(void);

/**
 * # Safety
 * `s` must come from this library or be null.
 */
void xf_string_free(char *s);

/**
 * Parses the family text format.
 *
 * # Safety
 * `text` must be a nul-terminated string; `out` must be writable.
 */
enum XfStatus xf_family_from_text(const char *text, struct XfFamily **out_family);

/**
 * Builds a family from member bitmasks (element `e` is bit `e-1`).
 * `k < 0` leaves the family non-uniform.
 *
 * # Safety
 * `masks` must point to `len` values (or be null with `len == 0`).
 */
enum XfStatus xf_family_from_masks(uint32_t n,
                                   int32_t k,
                                   const uint64_t *masks,
                                   size_t len,
                                   struct XfFamily **out_family);

/**
 * # Safety
 * `family` must be a live handle; `out_text` must be writable.
 */
enum XfStatus xf_family_to_text(const struct XfFamily *family, char **out_text);

/**
 * # Safety
 * `family` must be a live handle.
 */
enum XfStatus xf_family_len(const struct XfFamily *family, size_t *out_len);

/**
 * # Safety
 * `family` must be a live handle.
 */
enum XfStatus xf_family_n(const struct XfFamily *family, uint32_t *out_n);

/**
 * Bitmask of member `index` in sorted order.
 *
 * # Safety
 * `family` must be a live handle.
 */
enum XfStatus xf_family_get(const struct XfFamily *family, size_t index, uint64_t *out_mask);

/**
 * # Safety
 * `family` must be null or a handle not yet freed.
 */
void xf_family_free(struct XfFamily *family);

/**
 * Covering number.
 *
 * # Safety
 * `family` must be a live handle.
 */
enum XfStatus xf_family_tau(const struct XfFamily *family, size_t *out_tau);

/**
 * # Safety
 * `family` must be a live handle.
 */
enum XfStatus xf_family_is_initial(const struct XfFamily *family, uint8_t *out_flag);

/**
 * Left-compresses to an initial family; the result is a new handle.
 *
 * # Safety
 * `family` must be a live handle.
 */
enum XfStatus xf_family_compress(const struct XfFamily *family, struct XfFamily **out_family);

/**
 * Pairs two uniform families (copied); fails unless cross-intersecting.
 *
 * # Safety
 * `f` and `g` must be live handles.
 */
enum XfStatus xf_pair_new(const struct XfFamily *f,
                          const struct XfFamily *g,
                          struct XfCrossPair **out_pair);

/**
 * Copy of the `F` side.
 *
 * # Safety
 * `pair` must be a live handle.
 */
enum XfStatus xf_pair_f(const struct XfCrossPair *pair, struct XfFamily **out_family);

/**
 * Copy of the `G` side.
 *
 * # Safety
 * `pair` must be a live handle.
 */
enum XfStatus xf_pair_g(const struct XfCrossPair *pair, struct XfFamily **out_family);

/**
 * `|F| + |G|`.
 *
 * # Safety
 * `pair` must be a live handle.
 */
enum XfStatus xf_pair_total(const struct XfCrossPair *pair, size_t *out_total);

/**
 * Compresses both sides with shared shifts; the result is a new handle.
 *
 * # Safety
 * `pair` must be a live handle.
 */
enum XfStatus xf_pair_compress(const struct XfCrossPair *pair, struct XfCrossPair **out_pair);

/**
 * # Safety
 * `pair` must be null or a handle not yet freed.
 */
void xf_pair_free(struct XfCrossPair *pair);

/**
 * Builds a named construction. Single families are returned through
 * `out_family`, pairs through `out_pair`; the other out-pointer is set to
 * null. Either out-pointer may be null if that kind is not expected.
 *
 * # Safety
 * `tag` must be a nul-terminated string and `p` a valid pointer.
 */
enum XfStatus xf_construct(const char *tag,
                           const struct XfParams *p,
                           struct XfFamily **out_family,
                           struct XfCrossPair **out_pair);

/**
 * Evaluates a named closed form exactly; the result is a decimal string.
 *
 * # Safety
 * `formula` must be a nul-terminated string and `args` a valid pointer.
 */
enum XfStatus xf_count(const char *formula, const struct XfCountArgs *args, char **out_decimal);

/**
 * Exhaustive search for the largest `|F| + |G|`; writes the JSON report.
 *
 * # Safety
 * `spec` must be valid; `opts` may be null.
 */
enum XfStatus xf_search_cross_sum(uint32_t n,
                                  uint32_t a,
                                  uint32_t b,
                                  const struct XfConstraint *spec,
                                  const struct XfSearchOptions *opts,
                                  char **out_json);

/**
 * Largest intersecting `k`-uniform family on `[n]` with `τ >= s`.
 *
 * # Safety
 * `opts` may be null; `out_json` must be writable.
 */
enum XfStatus xf_search_intersecting(uint32_t n,
                                     uint32_t k,
                                     uint32_t s,
                                     const struct XfSearchOptions *opts,
                                     char **out_json);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* CROSSFAM_H */
