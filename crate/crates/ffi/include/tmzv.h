#ifndef TMZV_H
#define TMZV_H

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

// Status codes returned by every fallible call.
typedef enum TmzvStatus {
  TMZV_STATUS_OK = 0,
  TMZV_STATUS_NULL_ARGUMENT = 1,
  TMZV_STATUS_PARSE_ERROR = 2,
  TMZV_STATUS_DOMAIN_ERROR = 3,
  TMZV_STATUS_NOT_ADMISSIBLE = 4,
  TMZV_STATUS_SUBALGEBRA_ERROR = 5,
  TMZV_STATUS_POLE = 6,
  TMZV_STATUS_NO_CONVERGENCE = 7,
  TMZV_STATUS_INTERNAL_ERROR = 8,
} TmzvStatus;

// Opaque handle to a combination of zeta symbols.
typedef struct TmzvCombination TmzvCombination;

// Opaque handle to an element of the word algebra.
typedef struct TmzvElement TmzvElement;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Parses an element from text ("xyy", "z2z1", "xy + t*xx").
//
// # Safety
// `text` must be a valid NUL-terminated string and `out` a valid pointer.
enum TmzvStatus tmzv_element_parse(const char *text, struct TmzvElement **out);

// Frees an element handle. Passing NULL is a no-op.
//
// # Safety
// `e` must come from this library and not be freed twice.
void tmzv_element_free(struct TmzvElement *e);

// Renders an element; `as_z` selects z-notation. The result must be freed
// with tmzv_string_free. Returns NULL on invalid input.
//
// # Safety
// `e` must be a live element handle.
char *tmzv_element_to_string(const struct TmzvElement *e, int as_z);

// Multiplies two elements with the selected product.
//
// # Safety
// `a`, `b` must be live element handles and `out` a valid pointer.
enum TmzvStatus tmzv_product(int kind,
                             const struct TmzvElement *a,
                             const struct TmzvElement *b,
                             struct TmzvElement **out);

// Expands the t-MZV at an admissible index given as an array of parts.
//
// # Safety
// `parts` must point to `len` valid entries and `out` must be valid.
enum TmzvStatus tmzv_expand(const uint32_t *parts, uintptr_t len, struct TmzvCombination **out);

// Regularized evaluation of an h^1 element; `kind` is 0 for the shuffle
// map, 1 for the harmonic map.
//
// # Safety
// `e` must be a live element handle and `out` a valid pointer.
enum TmzvStatus tmzv_reg_eval(int kind, const struct TmzvElement *e, struct TmzvCombination **out);

// Frees a combination handle. Passing NULL is a no-op.
//
// # Safety
// `c` must come from this library and not be freed twice.
void tmzv_combination_free(struct TmzvCombination *c);

// Renders a combination as JSON. Free with tmzv_string_free.
//
// # Safety
// `c` must be a live combination handle.
char *tmzv_combination_to_json(const struct TmzvCombination *c);

// Evaluates the interpolated multiple zeta value at t = t_num/t_den.
// Writes the value and an error bound estimate on success.
//
// # Safety
// Pointer arguments must be valid; `parts` must hold `len` entries.
enum TmzvStatus tmzv_eval(const uint32_t *parts,
                          uintptr_t len,
                          int64_t t_num,
                          int64_t t_den,
                          uintptr_t precision_bits,
                          double tol,
                          uint64_t max_cutoff,
                          double *value,
                          double *error_bound);

// Frees a string returned by this library. Passing NULL is a no-op.
//
// # Safety
// `s` must come from this library and not be freed twice.
void tmzv_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* TMZV_H */
