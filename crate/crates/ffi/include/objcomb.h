#ifndef OBJCOMB_H
#define OBJCOMB_H

/* Generated by cbindgen from src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Outcome of every call.
 */
typedef enum ObjcombStatus {
  OBJCOMB_STATUS_OK = 0,
  OBJCOMB_STATUS_NULL_POINTER = 1,
  OBJCOMB_STATUS_INVALID_UTF8 = 2,
  OBJCOMB_STATUS_MISMATCH = 3,
  OBJCOMB_STATUS_OUT_OF_RANGE = 4,
  OBJCOMB_STATUS_NOT_SURJECTIVE = 5,
  OBJCOMB_STATUS_INVALID_PARTITION = 6,
  OBJCOMB_STATUS_BOUND_EXCEEDED = 7,
  OBJCOMB_STATUS_PARSE = 8,
  OBJCOMB_STATUS_NONZERO_CONSTANT_TERM = 9,
  OBJCOMB_STATUS_INVALID_SIMPLEX = 10,
  OBJCOMB_STATUS_PRECONDITION = 11,
  OBJCOMB_STATUS_PANIC = 12,
} ObjcombStatus;

/**
 * Opaque polynomial in the generators.
 */
typedef struct ObjcombPoly ObjcombPoly;

/**
 * Opaque coproduct: a finite sum of `coeff · left ⊗ right`.
 */
typedef struct ObjcombTensor ObjcombTensor;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Library version as a static NUL-terminated string.
 */
const char *objcomb_version(void);

/**
 * Message of the last failed call on this thread, or NULL. Valid until the
 * next call on the same thread.
 */
const char *objcomb_last_error(void);

/**
 * `Δ(Aₙ)` in the Faà di Bruno bialgebra.
 *
 * # Safety
 * `out` must be a valid pointer to writable storage for one handle.
 */
enum ObjcombStatus objcomb_fdb_coproduct(size_t n, struct ObjcombTensor **out);

/**
 * `Δ(A_λ)` in the plethystic bialgebra; `lambda` as `{2:1,3:1}` or `[[0,1],[2]]`.
 *
 * # Safety
 * `lambda` must be NUL-terminated; `out` must be valid for one handle.
 */
enum ObjcombStatus objcomb_plethystic_coproduct(const char *lambda, struct ObjcombTensor **out);

/**
 * Partial Bell polynomial `B_{n,k}`.
 *
 * # Safety
 * `out` must be valid for one handle.
 */
enum ObjcombStatus objcomb_bell_polynomial(size_t n, size_t k, struct ObjcombPoly **out);

/**
 * Number of labelled transversals of a partition given as `[[0,1],[2]]`.
 *
 * # Safety
 * `sigma` must be NUL-terminated; `count` must be writable.
 */
enum ObjcombStatus objcomb_transversal_count(const char *sigma, size_t *count);

/**
 * Duality of `Δ(Aₙ)` with composition on `trials` seeded random series pairs.
 *
 * # Safety
 * `passed` must be writable.
 */
enum ObjcombStatus objcomb_fdb_duality_check(size_t n, size_t trials, uint64_t seed, bool *passed);

/**
 * Duality of `Δ(A_λ)` with plethystic substitution on seeded random series.
 *
 * # Safety
 * `lambda` must be NUL-terminated; `passed` must be writable.
 */
enum ObjcombStatus objcomb_plethystic_duality_check(const char *lambda,
                                                    size_t trials,
                                                    uint64_t seed,
                                                    bool *passed);

/**
 * Number of terms.
 *
 * # Safety
 * `t` must be a live handle or NULL (which gives 0).
 */
size_t objcomb_tensor_len(const struct ObjcombTensor *t);

/**
 * JSON array of `{left, right, coeff}`; free with [`objcomb_string_free`].
 *
 * # Safety
 * `t` must be a live handle; `out` must be writable.
 */
enum ObjcombStatus objcomb_tensor_to_json(const struct ObjcombTensor *t, char **out);

/**
 * JSON array of `{monomial, coeff}`; free with [`objcomb_string_free`].
 *
 * # Safety
 * `p` must be a live handle; `out` must be writable.
 */
enum ObjcombStatus objcomb_poly_to_json(const struct ObjcombPoly *p, char **out);

/**
 * # Safety
 * `t` must come from this library and not be freed twice. NULL is ignored.
 */
void objcomb_tensor_free(struct ObjcombTensor *t);

/**
 * # Safety
 * `p` must come from this library and not be freed twice. NULL is ignored.
 */
void objcomb_poly_free(struct ObjcombPoly *p);

/**
 * # Safety
 * `s` must be a string returned by this library. NULL is ignored.
 */
void objcomb_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* OBJCOMB_H */
