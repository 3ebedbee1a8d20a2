#ifndef GRAY2_H
#define GRAY2_H

/* Generated by cbindgen from src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

// Result codes.
typedef enum Gray2Status {
  GRAY2_STATUS_OK = 0,
  GRAY2_STATUS_NULL_POINTER = 1,
  GRAY2_STATUS_INVALID_UTF8 = 2,
  GRAY2_STATUS_PARSE = 3,
  GRAY2_STATUS_INVALID = 4,
  GRAY2_STATUS_BUDGET_EXCEEDED = 5,
  GRAY2_STATUS_CHECK_FAILED = 6,
  GRAY2_STATUS_PANIC = 7,
} Gray2Status;

// Opaque handle to a finite strict 2-category.
typedef struct Gray2TwoCat Gray2TwoCat;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message for the last failed call on this thread; empty after a success.
// The pointer stays valid until the next call into this library on the same thread.
const char *gray2_last_error(void);

// Realization of a Theta_2 object written as `[k](n_1,...,n_k)`.
//
// # Safety
// `obj` must be a NUL-terminated string; `out` must be writable.
enum Gray2Status gray2_realize(const char *obj, struct Gray2TwoCat **out);

// Colax Gray tensor product of two realizations.
//
// # Safety
// `left` and `right` must be NUL-terminated strings; `out` must be writable.
enum Gray2Status gray2_gray_colax(const char *left, const char *right, struct Gray2TwoCat **out);

// Lax Gray tensor product of two realizations.
//
// # Safety
// As for [`gray2_gray_colax`].
enum Gray2Status gray2_gray_lax(const char *left, const char *right, struct Gray2TwoCat **out);

// The cylinder object on `obj` with `m` steps.
//
// # Safety
// `obj` must be a NUL-terminated string; `out` must be writable.
enum Gray2Status gray2_phi_obj(const char *obj, size_t m, struct Gray2TwoCat **out);

// Parses and validates a 2-category from its JSON form.
//
// # Safety
// `json` must be a NUL-terminated string; `out` must be writable.
enum Gray2Status gray2_twocat_from_json(const char *json, struct Gray2TwoCat **out);

// # Safety
// `h` must be a live handle; `out` must be writable. Free the result with [`gray2_string_free`].
enum Gray2Status gray2_twocat_to_json(const struct Gray2TwoCat *h, char **out);

// # Safety
// As for [`gray2_twocat_to_json`].
enum Gray2Status gray2_twocat_to_dot(const struct Gray2TwoCat *h, char **out);

// Numbers of objects, 1-cells and 2-cells.
//
// # Safety
// `h` must be a live handle; each out-pointer must be writable.
enum Gray2Status gray2_twocat_counts(const struct Gray2TwoCat *h,
                                     size_t *objects,
                                     size_t *one_cells,
                                     size_t *two_cells);

// Number of strict 2-functors `src -> tgt`, exploring at most `budget` search nodes.
//
// # Safety
// Both handles must be live; `out` must be writable.
enum Gray2Status gray2_count_two_functors(const struct Gray2TwoCat *src,
                                          const struct Gray2TwoCat *tgt,
                                          uint64_t budget,
                                          uint64_t *out);

// Whether two 2-categories are isomorphic.
//
// # Safety
// Both handles must be live; `out` must be writable.
enum Gray2Status gray2_twocat_isomorphic(const struct Gray2TwoCat *a,
                                         const struct Gray2TwoCat *b,
                                         uint64_t budget,
                                         bool *out);

// Runs a verification suite with the default probes and writes its JSON report.
//
// `suite` is one of `segal`, `graytenscolim`, `phieq`, `odot`, `mates`, `all`.
// `corrupt` is null, `extra-object` or `collapse2-cells`. Returns
// [`Gray2Status::CheckFailed`] when some check does not pass; the report is written anyway.
//
// # Safety
// `suite` must be a NUL-terminated string, `corrupt` null or NUL-terminated; `out` must be writable.
enum Gray2Status gray2_verify_suite(const char *suite,
                                    const char *corrupt,
                                    uint64_t budget,
                                    char **out);

// Maximal chains of the `k x m` grid as JSON nodes and cover edges.
//
// # Safety
// `out` must be writable.
enum Gray2Status gray2_shuffles_json(size_t k, size_t m, char **out);

// # Safety
// `s` must be null or a string returned by this library, not yet freed.
void gray2_string_free(char *s);

// # Safety
// `h` must be null or a handle returned by this library, not yet freed.
void gray2_twocat_free(struct Gray2TwoCat *h);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* GRAY2_H */
