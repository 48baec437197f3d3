#ifndef BOHR_H
#define BOHR_H

/* Generated by cbindgen from src/lib.rs; do not edit. */

#include <stddef.h>
#include <stdint.h>

/*
 Result code of every exported function.
 */
typedef enum BohrStatus {
  BOHR_STATUS_OK = 0,
  BOHR_STATUS_NULL_POINTER = 1,
  BOHR_STATUS_INVALID_ARGUMENT = 2,
  BOHR_STATUS_PARSE = 3,
  BOHR_STATUS_UNRESOLVED = 4,
  BOHR_STATUS_GUARD_VIOLATED = 5,
  BOHR_STATUS_UTF8 = 6,
  BOHR_STATUS_PANIC = 7,
} BohrStatus;

/*
 Homogeneous polynomial with `±` multinomial coefficients.
 */
typedef struct BohrPoly BohrPoly;

/*
 Truncated power series in `n` variables.
 */
typedef struct BohrSeries BohrSeries;

/*
 Message for the last failure on this thread, or null. The pointer stays
 valid until the next failing call on the same thread.
 */
const char *bohr_last_error(void);

/*
 `1/(3√n)`.

 # Safety

 Pointer arguments must be null or valid for the reads and writes above;
 handles must come from this library and not be freed yet.
 */
enum BohrStatus bohr_naive_lower(uint64_t n, double *value);

/*
 Certified enclosure `[lo, hi]` of the refined lower bound.

 # Safety

 Pointer arguments must be null or valid for the reads and writes above;
 handles must come from this library and not be freed yet.
 */
enum BohrStatus bohr_refined_lower(uint64_t n, double tol, double *lo, double *hi);

/*
 Explicit upper bound for `n ≥ 189` and the degree it used.

 # Safety

 Pointer arguments must be null or valid for the reads and writes above;
 handles must come from this library and not be freed yet.
 */
enum BohrStatus bohr_theoretical_upper(uint64_t n, double *value, uint32_t *degree);

/*
 Bohr radius `1/(1+2a)` of `(a − z)/(1 − a z)` for `0 < a < 1`.

 # Safety

 Pointer arguments must be null or valid for the reads and writes above;
 handles must come from this library and not be freed yet.
 */
enum BohrStatus bohr_mobius_bohr_radius(double a, double *value);

/*
 Parses a series from its text form (one `exponents re im` line per term).

 # Safety

 Pointer arguments must be null or valid for the reads and writes above;
 handles must come from this library and not be freed yet.
 */
enum BohrStatus bohr_series_parse(const char *text, struct BohrSeries **series);

/*
 Taylor series of `(a − z)/(1 − a z)` up to order `cap`.

 # Safety

 Pointer arguments must be null or valid for the reads and writes above;
 handles must come from this library and not be freed yet.
 */
enum BohrStatus bohr_series_mobius(double a, uint32_t cap, struct BohrSeries **series);

/*
 Number of variables of a series.

 # Safety

 Pointer arguments must be null or valid for the reads and writes above;
 handles must come from this library and not be freed yet.
 */
enum BohrStatus bohr_series_dim(const struct BohrSeries *series, size_t *dim);

/*
 `Σ |c_α| z^α` at the moduli `z[0..len]`.

 # Safety

 Pointer arguments must be null or valid for the reads and writes above;
 handles must come from this library and not be freed yet.
 */
enum BohrStatus bohr_series_majorant(const struct BohrSeries *series,
                                     const double *z,
                                     size_t len,
                                     double *value);

/*
 Compares `‖c_k‖₂` with `1 − |c_0|²`; `holds` is 1 when within `tol`.

 # Safety

 Pointer arguments must be null or valid for the reads and writes above;
 handles must come from this library and not be freed yet.
 */
enum BohrStatus bohr_series_wiener_check(const struct BohrSeries *series,
                                         uint32_t k,
                                         double tol,
                                         double *lhs,
                                         double *rhs,
                                         int32_t *holds);

/*
 Releases a series; null is ignored.

 # Safety

 Pointer arguments must be null or valid for the reads and writes above;
 handles must come from this library and not be freed yet.
 */
void bohr_series_free(struct BohrSeries *series);

/*
 Random-sign polynomial of the given degree in `n` variables.

 # Safety

 Pointer arguments must be null or valid for the reads and writes above;
 handles must come from this library and not be freed yet.
 */
enum BohrStatus bohr_poly_random_signs(size_t n,
                                       uint32_t degree,
                                       uint64_t seed,
                                       struct BohrPoly **poly);

/*
 Certified enclosure of the sup norm on the torus from a grid with
 `points_per_axis` points per free angle.

 # Safety

 Pointer arguments must be null or valid for the reads and writes above;
 handles must come from this library and not be freed yet.
 */
enum BohrStatus bohr_poly_sup_norm(const struct BohrPoly *poly,
                                   size_t points_per_axis,
                                   double *lo,
                                   double *hi);

/*
 Certified upper bound on `K_n` from one polynomial, using
 `grid_divisor · degree` points per free angle.

 # Safety

 Pointer arguments must be null or valid for the reads and writes above;
 handles must come from this library and not be freed yet.
 */
enum BohrStatus bohr_poly_kn_upper(const struct BohrPoly *poly,
                                   uint32_t grid_divisor,
                                   double *value);

/*
 Releases a polynomial; null is ignored.

 # Safety

 Pointer arguments must be null or valid for the reads and writes above;
 handles must come from this library and not be freed yet.
 */
void bohr_poly_free(struct BohrPoly *poly);

/*
 Best certified bound over `trials` random-sign polynomials. `poly` may
 be null; otherwise it receives the witness, owned by the caller.

 # Safety

 Pointer arguments must be null or valid for the reads and writes above;
 handles must come from this library and not be freed yet.
 */
enum BohrStatus bohr_search_upper(size_t n,
                                  uint32_t degree,
                                  uint64_t trials,
                                  uint64_t seed,
                                  uint32_t grid_divisor,
                                  double *bound,
                                  uint64_t *trial,
                                  struct BohrPoly **poly);

#endif  /* BOHR_H */
