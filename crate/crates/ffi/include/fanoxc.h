#ifndef FANOXC_H
#define FANOXC_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum FanoxcStatus {
  FANOXC_STATUS_OK = 0,
  FANOXC_STATUS_NULL_POINTER = 1,
  FANOXC_STATUS_INVALID_UTF8 = 2,
  FANOXC_STATUS_PARAMETER = 3,
  FANOXC_STATUS_MODEL_MISMATCH = 4,
  FANOXC_STATUS_NOT_HOMOGENEOUS = 5,
  FANOXC_STATUS_SYNTAX = 6,
  FANOXC_STATUS_CONSISTENCY = 7,
  FANOXC_STATUS_PRESENTATION = 8,
  FANOXC_STATUS_LEDGER = 9,
  FANOXC_STATUS_IO = 10,
  FANOXC_STATUS_PANIC = 11,
} FanoxcStatus;

/**
 * Opaque handle to a normal-form Chow ring element.
 */
typedef struct FanoxcElement FanoxcElement;

/**
 * Opaque handle to one threefold X_c.
 */
typedef struct FanoxcModel FanoxcModel;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failing call on this thread; empty after a success.
 * The pointer stays valid until the next library call on the same thread.
 */
const char *fanoxc_last_error_message(void);

/**
 * Releases a string returned by this library. Null is ignored.
 */
void fanoxc_string_free(char *s);

/**
 * Creates the model for `0 <= c <= 4`.
 */
enum FanoxcStatus fanoxc_model_new(int64_t c, struct FanoxcModel **out);

void fanoxc_model_free(struct FanoxcModel *model);

/**
 * The parameter c of the model, or -1 for a null handle.
 */
int32_t fanoxc_model_c(const struct FanoxcModel *model);

/**
 * Parses an expression in `xi`, `f`, `h`, `K` and rationals.
 */
enum FanoxcStatus fanoxc_element_parse(const struct FanoxcModel *model,
                                       const char *expr,
                                       struct FanoxcElement **out);

void fanoxc_element_free(struct FanoxcElement *element);

/**
 * Product of two elements of the same model.
 */
enum FanoxcStatus fanoxc_element_mul(const struct FanoxcElement *a,
                                     const struct FanoxcElement *b,
                                     struct FanoxcElement **out);

/**
 * Normal form, e.g. `2*xi*f - f^2`. Free with `fanoxc_string_free`.
 */
enum FanoxcStatus fanoxc_element_to_string(const struct FanoxcElement *element, char **out);

/**
 * Degree of the top component as an exact "p/q" or integer string.
 */
enum FanoxcStatus fanoxc_element_degree(const struct FanoxcElement *element, char **out);

/**
 * Exact Euler characteristic of a class given by expressions. `c3` and
 * `twist_by` may be null.
 */
enum FanoxcStatus fanoxc_euler_characteristic(const struct FanoxcModel *model,
                                              uint32_t rank,
                                              const char *c1,
                                              const char *c2,
                                              const char *c3,
                                              const char *twist_by,
                                              char **out);

/**
 * `h^i(X_c, O(l1 xi + l2 f))` as JSON: `{"exact":true,"h":[..]}` or bounds.
 */
enum FanoxcStatus fanoxc_line_cohomology(int64_t c, int64_t l1, int64_t l2, char **out);

/**
 * `h^i(P^2, S^m F_c (b))` as JSON, same shape as the line table.
 */
enum FanoxcStatus fanoxc_sym_cohomology(int64_t c, int64_t m, int64_t b, char **out);

/**
 * Instanton invariants of `c2 = alpha xi f + beta f^2` as a JSON object.
 */
enum FanoxcStatus fanoxc_instanton_invariants(int64_t c, int64_t alpha, int64_t beta, char **out);

/**
 * Runs a ledger given as JSON text, or the bundled ledger when `ledger_json`
 * is null, and writes the JSON report. Failing entries still return
 * `FANOXC_STATUS_OK`; inspect `"failed"` in the report.
 */
enum FanoxcStatus fanoxc_verify(const char *ledger_json, bool parallel, char **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* FANOXC_H */
