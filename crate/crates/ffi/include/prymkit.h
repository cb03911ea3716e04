#ifndef PRYMKIT_H
#define PRYMKIT_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum PrymStatus {
  PRYM_STATUS_OK = 0,
  PRYM_STATUS_NULL_POINTER = 1,
  PRYM_STATUS_INVALID_UTF8 = 2,
  /**
   * Malformed JSON or a field of the wrong shape.
   */
  PRYM_STATUS_SCHEMA = 3,
  PRYM_STATUS_INVALID_INPUT = 4,
  /**
   * A mathematical invariant failed to hold; never caused by valid input.
   */
  PRYM_STATUS_INVARIANT_VIOLATION = 5,
  /**
   * Any other computational error, such as a failed precondition.
   */
  PRYM_STATUS_COMPUTE = 6,
  /**
   * The value does not fit the requested integer type.
   */
  PRYM_STATUS_OVERFLOW = 7,
  PRYM_STATUS_OUT_OF_RANGE = 8,
} PrymStatus;

/**
 * Spectral cover descriptor.
 */
typedef struct PrymDescriptor PrymDescriptor;

/**
 * Component group of a Prym variety.
 */
typedef struct PrymGroup PrymGroup;

typedef struct PrymVariantBound {
  uint64_t smallest_prime;
  uint64_t codimension;
  uint64_t bound;
} PrymVariantBound;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failure on this thread, or null. The pointer stays
 * valid until the next failing call on the same thread.
 */
const char *prym_last_error(void);

/**
 * Static, nul-terminated version string.
 */
const char *prym_version(void);

/**
 * # Safety
 * `s` must be null or a string returned by this library, not yet freed.
 */
void prym_string_free(char *s);

/**
 * Parses a descriptor from JSON.
 *
 * # Safety
 * `json` must be a nul-terminated string and `out` writable.
 */
enum PrymStatus prym_descriptor_from_json(const char *json, struct PrymDescriptor **out);

/**
 * The multiple curve `C_n` over a base of genus `g`.
 *
 * # Safety
 * `out` must be writable.
 */
enum PrymStatus prym_descriptor_multiple_curve(uint64_t n, uint32_t g, struct PrymDescriptor **out);

/**
 * # Safety
 * `d` must be null or a live descriptor handle.
 */
void prym_descriptor_free(struct PrymDescriptor *d);

/**
 * Component group of the Prym variety of `d`.
 *
 * # Safety
 * `d` must be a live descriptor handle and `out` writable.
 */
enum PrymStatus prym_descriptor_pi0(const struct PrymDescriptor *d, struct PrymGroup **out);

/**
 * # Safety
 * `d` must be a live descriptor handle and `out` writable.
 */
enum PrymStatus prym_descriptor_is_cn(const struct PrymDescriptor *d, bool *out);

/**
 * # Safety
 * `g` must be null or a live group handle.
 */
void prym_group_free(struct PrymGroup *g);

/**
 * Number of invariant factors.
 *
 * # Safety
 * `g` must be a live group handle and `out` writable.
 */
enum PrymStatus prym_group_rank(const struct PrymGroup *g, size_t *out);

/**
 * The `i`-th invariant factor, in divisibility order.
 *
 * # Safety
 * `g` must be a live group handle and `out` writable.
 */
enum PrymStatus prym_group_invariant_factor(const struct PrymGroup *g, size_t i, uint64_t *out);

/**
 * Group order as a decimal string, freed with [`prym_string_free`].
 *
 * # Safety
 * `g` must be a live group handle and `out` writable.
 */
enum PrymStatus prym_group_order(const struct PrymGroup *g, char **out);

/**
 * `dim A_Gamma` for a cyclic group of order `d` dividing `n`.
 *
 * # Safety
 * `out` must be writable.
 */
enum PrymStatus prym_endoscopic_dim(uint64_t n, uint64_t d, uint64_t g, uint64_t *out);

/**
 * # Safety
 * `out` must be writable.
 */
enum PrymStatus prym_variant_bound(uint64_t n, uint64_t g, struct PrymVariantBound *out);

/**
 * Runs a batch command (`pi0`, `norm`, `factor` or `galois`) on a JSON
 * input and returns the JSON report, freed with [`prym_string_free`].
 *
 * # Safety
 * `command` and `input` must be nul-terminated strings and `out` writable.
 */
enum PrymStatus prym_run_json(const char *command, const char *input, char **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* PRYMKIT_H */
