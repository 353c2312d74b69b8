#ifndef LIEPOSET_H
#define LIEPOSET_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum LpFamily {
  LP_FAMILY_B = 0,
  LP_FAMILY_C = 1,
  LP_FAMILY_D = 2,
} LpFamily;

typedef enum LpStatus {
  LP_STATUS_OK = 0,
  LP_STATUS_NULL_ARGUMENT = 1,
  LP_STATUS_INVALID_UTF8 = 2,
  LP_STATUS_INVALID_POSET = 3,
  LP_STATUS_HEIGHT_ERROR = 4,
  LP_STATUS_INCONSISTENCY = 5,
  LP_STATUS_INVALID_ARGUMENT = 6,
  LP_STATUS_PANIC = 7,
} LpStatus;

/**
 * A validated signed poset.
 */
typedef struct LpPoset LpPoset;

/**
 * A classification report.
 */
typedef struct LpReport LpReport;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failing call on this thread, or null. Owned by the
 * library.
 */
const char *lp_last_error(void);

/**
 * Library version, static.
 */
const char *lp_version(void);

/**
 * Parse `{"family": "C", "n": 3, "relations": [[-1, 2], ...]}`.
 *
 * # Safety
 * `json` must be a NUL-terminated string and `out` a writable pointer.
 */
enum LpStatus lp_poset_from_json(const char *json, struct LpPoset **out);

/**
 * Build from `pair_count` generator pairs stored flat in `pairs`
 * (`x0, y0, x1, y1, ...`, each meaning `x ≺ y`).
 *
 * # Safety
 * `pairs` must point to `2 * pair_count` integers (or be null when
 * `pair_count` is 0) and `out` must be writable.
 */
enum LpStatus lp_poset_new(enum LpFamily family,
                           size_t n,
                           const int32_t *pairs,
                           size_t pair_count,
                           struct LpPoset **out);

/**
 * # Safety
 * `p` must come from this library and not be used afterwards. Null is a no-op.
 */
void lp_poset_free(struct LpPoset *p);

/**
 * Height of the poset (longest chain length minus one).
 *
 * # Safety
 * `p` must be a live handle.
 */
size_t lp_poset_height(const struct LpPoset *p);

/**
 * Number of strict relations.
 *
 * # Safety
 * `p` must be a live handle.
 */
size_t lp_poset_relation_count(const struct LpPoset *p);

/**
 * Sampled index with `samples` random functionals mod `prime`.
 *
 * # Safety
 * `p` must be a live handle, `out_dim` and `out_index` writable.
 */
enum LpStatus lp_index(const struct LpPoset *p,
                       size_t samples,
                       uint64_t prime,
                       uint64_t seed,
                       size_t *out_dim,
                       size_t *out_index);

/**
 * Full classification with default sampling and the given seed.
 *
 * # Safety
 * `p` must be a live handle and `out` writable.
 */
enum LpStatus lp_analyze(const struct LpPoset *p, uint64_t seed, struct LpReport **out);

/**
 * # Safety
 * `r` must come from [`lp_analyze`] and not be used afterwards.
 */
void lp_report_free(struct LpReport *r);

/**
 * # Safety
 * `r` must be a live handle.
 */
size_t lp_report_dim(const struct LpReport *r);

/**
 * # Safety
 * `r` must be a live handle.
 */
size_t lp_report_index(const struct LpReport *r);

/**
 * # Safety
 * `r` must be a live handle.
 */
bool lp_report_frobenius(const struct LpReport *r);

/**
 * 1 contact, 0 not contact, -1 not decided (height above one).
 *
 * # Safety
 * `r` must be a live handle.
 */
int32_t lp_report_contact(const struct LpReport *r);

/**
 * Report as JSON; release with [`lp_string_free`]. Null on a null handle.
 *
 * # Safety
 * `r` must be a live handle.
 */
char *lp_report_to_json(const struct LpReport *r);

/**
 * # Safety
 * `s` must come from this library. Null is a no-op.
 */
void lp_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* LIEPOSET_H */
