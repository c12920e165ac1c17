#ifndef SHARPGPT_H
#define SHARPGPT_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Status codes returned by every fallible function.
 */
typedef enum SgStatus {
  SG_STATUS_OK = 0,
  SG_STATUS_NULL_POINTER = 1,
  SG_STATUS_INVALID_ARGUMENT = 2,
  SG_STATUS_DIMENSION_MISMATCH = 3,
  SG_STATUS_KIND_MISMATCH = 4,
  SG_STATUS_NUMERICAL_FAILURE = 5,
  SG_STATUS_PANIC = 6,
} SgStatus;

/**
 * Algebra families of the catalog.
 */
typedef enum SgKind {
  SG_KIND_CLASSICAL = 0,
  SG_KIND_REAL_SYMMETRIC = 1,
  SG_KIND_COMPLEX_HERMITIAN = 2,
  SG_KIND_QUATERNIONIC_HERMITIAN = 3,
  SG_KIND_SPIN_FACTOR = 4,
} SgKind;

/**
 * An element of a Jordan algebra in orthonormal coordinates.
 */
typedef struct SgElement SgElement;

/**
 * A Jordan algebra of the catalog.
 */
typedef struct SgSystem SgSystem;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Copies the last error message of this thread into `buf` (NUL-terminated,
 * truncated to `len`). Returns the full message length plus one, or 0 if
 * there is no message.
 *
 * # Safety
 * `buf` must be null or valid for `len` bytes.
 */
size_t sg_last_error_message(char *buf, size_t len);

/**
 * Creates the algebra `kind(size)`: `d` for classical, `n` for matrix
 * kinds, `m` for spin factors.
 *
 * # Safety
 * `out` must be valid for writes.
 */
enum SgStatus sg_system_new(enum SgKind kind, size_t size, struct SgSystem **out);

/**
 * # Safety
 * `sys` must be null or a handle from `sg_system_new` not yet freed.
 */
void sg_system_free(struct SgSystem *sys);

/**
 * Frame size, or 0 for a null handle.
 *
 * # Safety
 * `sys` must be null or a live handle.
 */
size_t sg_system_rank(const struct SgSystem *sys);

/**
 * Real dimension (coordinate count), or 0 for a null handle.
 *
 * # Safety
 * `sys` must be null or a live handle.
 */
size_t sg_system_dim(const struct SgSystem *sys);

/**
 * Creates an element from `len == dim` coordinates.
 *
 * # Safety
 * `coords` must be valid for `len` reads and `out` for writes.
 */
enum SgStatus sg_element_new(const struct SgSystem *sys,
                             const double *coords,
                             size_t len,
                             struct SgElement **out);

/**
 * The unit element of `sys`.
 *
 * # Safety
 * `out` must be valid for writes.
 */
enum SgStatus sg_element_unit(const struct SgSystem *sys, struct SgElement **out);

/**
 * # Safety
 * `el` must be null or a live element handle.
 */
void sg_element_free(struct SgElement *el);

/**
 * Copies the coordinates into `out`, which must hold exactly `dim` values.
 *
 * # Safety
 * `out` must be valid for `len` writes.
 */
enum SgStatus sg_element_coords(const struct SgElement *el, double *out, size_t len);

/**
 * `x ∘ y` as a new element.
 *
 * # Safety
 * Handles must be live; `out` valid for writes.
 */
enum SgStatus sg_jordan_product(const struct SgElement *x,
                                const struct SgElement *y,
                                struct SgElement **out);

/**
 * `⟨x, y⟩ = tr(x ∘ y)`.
 *
 * # Safety
 * Handles must be live; `out` valid for writes.
 */
enum SgStatus sg_inner_product(const struct SgElement *x, const struct SgElement *y, double *out);

/**
 * Eigenvalues in descending order; `out` must hold exactly `rank` values.
 *
 * # Safety
 * `out` must be valid for `len` writes.
 */
enum SgStatus sg_eigenvalues(const struct SgElement *el, double *out, size_t len);

/**
 * Whether every eigenvalue is at least `-tol · max(1, radius)`.
 *
 * # Safety
 * `out` must be valid for writes.
 */
enum SgStatus sg_cone_contains(const struct SgElement *el, double tol, bool *out);

/**
 * Operational norm `Σ|λᵢ|` and dagger norm `√Σλᵢ²`.
 *
 * # Safety
 * Output pointers must be valid for writes.
 */
enum SgStatus sg_norms(const struct SgElement *el, double *operational, double *dagger);

/**
 * `I_n` from `2^n − 1` detection probabilities; `values[mask − 1]` is the
 * probability for the slit subset whose bit `i` marks slit `i + 1`.
 *
 * # Safety
 * `values` must be valid for `len` reads and `out` for writes.
 */
enum SgStatus sg_sorkin_i(size_t n, const double *values, size_t len, double *out);

/**
 * `‖D_n‖` on a seeded random frame split into `order` slits.
 *
 * # Safety
 * `out` must be valid for writes.
 */
enum SgStatus sg_defect_norm(const struct SgSystem *sys, size_t order, uint64_t seed, double *out);

/**
 * Largest `|I_order|` found by the seeded alternating search.
 *
 * # Safety
 * `out` must be valid for writes.
 */
enum SgStatus sg_maximize_interference(const struct SgSystem *sys,
                                       size_t order,
                                       size_t trials,
                                       size_t iters,
                                       uint64_t seed,
                                       double *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* SHARPGPT_H */
