#ifndef INCGAMMA_H
#define INCGAMMA_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum IgStatus {
  IG_STATUS_OK = 0,
  IG_STATUS_DOMAIN = 1,
  IG_STATUS_VALIDITY = 2,
  IG_STATUS_BUDGET = 3,
  IG_STATUS_DEGENERATE = 4,
  IG_STATUS_INDEX = 5,
  IG_STATUS_NON_CONVERGENCE = 6,
  IG_STATUS_PARAMETER = 7,
  IG_STATUS_NULL_POINTER = 8,
  IG_STATUS_PANIC = 9,
} IgStatus;

typedef enum IgRegime {
  IG_REGIME_OUTER_LOWER = 0,
  IG_REGIME_OUTER_UPPER = 1,
  IG_REGIME_OUTER_NEGATIVE = 2,
  IG_REGIME_TRANSITION_POINT = 3,
  IG_REGIME_TRANSITION = 4,
  IG_REGIME_UNIFORM = 5,
  IG_REGIME_REFERENCE = 6,
} IgRegime;

// Opaque evaluation context.
typedef struct IgContext IgContext;

typedef struct IgEval {
  double value;
  double error_estimate;
  size_t terms_used;
  enum IgRegime regime;
} IgEval;

typedef struct IgQuantile {
  double x;
  double tau0;
  // Error estimate carried over to Q.
  double error_estimate;
  size_t terms_used;
} IgQuantile;

typedef struct IgZero {
  double x_minus;
  double tau1;
  double error_estimate;
  size_t terms_used;
} IgZero;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// New context with default settings; free with `ig_context_free`.
struct IgContext *ig_context_new(void);

// # Safety
// `ctx` must come from `ig_context_new` and not be used afterwards. Null is ignored.
void ig_context_free(struct IgContext *ctx);

// Dispatch settings for `ig_q`: transition region |τ| ≤ factor·a^{1/6},
// reference evaluation below `reference_below`, at most `max_terms` terms.
//
// # Safety
// `ctx` must be a live context.
enum IgStatus ig_context_configure(struct IgContext *ctx,
                                   double transition_factor,
                                   double reference_below,
                                   size_t max_terms);

// Q(a,x) for a > 0, x >= 0.
//
// # Safety
// `ctx` must be a live context and `out` writable.
enum IgStatus ig_q(struct IgContext *ctx, double a, double x, struct IgEval *out);

// x with Q(a,x) = q. `terms` < 0 picks the number of terms automatically.
//
// # Safety
// `ctx` must be a live context and `out` writable.
enum IgStatus ig_quantile(struct IgContext *ctx,
                          double a,
                          double q,
                          int32_t terms,
                          struct IgQuantile *out);

// Negative zero x₋(a) of γ*(a,x) for a < 0 away from the integers.
//
// # Safety
// `ctx` must be a live context and `out` writable.
enum IgStatus ig_negative_zero(struct IgContext *ctx, double a, int32_t terms, struct IgZero *out);

// The two-term approximation a − τ₁√(−a) − τ₁²/3 − 1/3 to x₋(a).
//
// # Safety
// `ctx` must be a live context and `out` writable.
enum IgStatus ig_thompson(struct IgContext *ctx, double a, double *out);

// Message for the last failed call on `ctx`, or null. Owned by the context.
//
// # Safety
// `ctx` must be a live context or null.
const char *ig_last_error(const struct IgContext *ctx);

// Static description of a status code.
const char *ig_status_str(enum IgStatus status);

const char *ig_version(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* INCGAMMA_H */
