#ifndef UNIT_ORDER_LAB_H
#define UNIT_ORDER_LAB_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Report file format.
 */
typedef enum UolFormat {
  UOL_FORMAT_CSV = 0,
  UOL_FORMAT_JSON = 1,
} UolFormat;

/**
 * Result code of every fallible call.
 */
typedef enum UolStatus {
  UOL_STATUS_OK = 0,
  UOL_STATUS_INVALID_INPUT = 1,
  UOL_STATUS_RESOURCE_LIMIT = 2,
  UOL_STATUS_OVERFLOW = 3,
  UOL_STATUS_INCOMPLETE_FACTORIZATION = 4,
  UOL_STATUS_IO = 5,
  UOL_STATUS_CONFIG = 6,
  /**
   * The scan stopped early; the returned report is partial.
   */
  UOL_STATUS_PARTIAL = 7,
  UOL_STATUS_NULL_POINTER = 8,
  UOL_STATUS_PANIC = 9,
} UolStatus;

/**
 * Opaque hyperbolic SL2(Z) matrix.
 */
typedef struct UolMatrix UolMatrix;

/**
 * Opaque experiment report.
 */
typedef struct UolReport UolReport;

/**
 * Field data of the eigenvalue field of a matrix.
 */
typedef struct UolFieldInfo {
  int64_t trace;
  /**
   * t^2 - 4.
   */
  int64_t disc;
  int64_t field_disc;
  uint64_t conductor;
  int8_t unit_norm;
  uint32_t power_index;
} UolFieldInfo;

/**
 * Order of a matrix or integer modulo a prime.
 */
typedef struct UolPrimeRecord {
  uint64_t p;
  /**
   * 'S', 'I' or 'R'.
   */
  char class_code;
  /**
   * p - 1 or p + 1; 0 for ramified primes.
   */
  uint64_t torus_order;
  uint64_t ord;
  /**
   * Index in the torus; 0 for ramified primes.
   */
  uint64_t index;
  bool is_bad;
} UolPrimeRecord;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failed call on this thread, or null. The pointer is
 * valid until the next call into this library on the same thread.
 */
const char *uol_last_error(void);

/**
 * Deterministic primality test for 64-bit integers.
 */
bool uol_is_prime(uint64_t n);

/**
 * `base^exp mod modulus`.
 *
 * # Safety
 * `out` must be null or valid for writes.
 */
enum UolStatus uol_pow_mod(uint64_t base, uint64_t exp, uint64_t modulus, uint64_t *out);

/**
 * Multiplicative order of `base` modulo `n`.
 *
 * # Safety
 * `out` must be null or valid for writes.
 */
enum UolStatus uol_integer_order(int64_t base, uint64_t n, uint64_t *out);

/**
 * Carmichael lambda of `n >= 1`.
 *
 * # Safety
 * `out` must be null or valid for writes.
 */
enum UolStatus uol_carmichael_lambda(uint64_t n, uint64_t *out);

/**
 * New hyperbolic matrix `[[a, b], [c, d]]` with determinant 1.
 *
 * # Safety
 * `out` must be null or valid for writes.
 */
enum UolStatus uol_matrix_new(int64_t a, int64_t b, int64_t c, int64_t d, struct UolMatrix **out);

/**
 * Companion matrix `[[t, -1], [1, 0]]`.
 *
 * # Safety
 * `out` must be null or valid for writes.
 */
enum UolStatus uol_matrix_from_trace(int64_t trace, struct UolMatrix **out);

/**
 * Releases a matrix. Null is ignored.
 *
 * # Safety
 * `matrix` must be null or a handle from this library not yet freed.
 */
void uol_matrix_free(struct UolMatrix *matrix);

/**
 * Field data of the matrix eigenvalue.
 *
 * # Safety
 * `matrix` must be null or a live handle; `out` null or valid for writes.
 */
enum UolStatus uol_matrix_field_info(const struct UolMatrix *matrix, struct UolFieldInfo *out);

/**
 * Order record of the matrix modulo the prime `p`.
 *
 * # Safety
 * `matrix` must be null or a live handle; `out` null or valid for writes.
 */
enum UolStatus uol_matrix_order_mod_p(const struct UolMatrix *matrix,
                                      uint64_t p,
                                      struct UolPrimeRecord *out);

/**
 * Order of the matrix modulo `n >= 2`.
 *
 * # Safety
 * `matrix` must be null or a live handle; `out` null or valid for writes.
 */
enum UolStatus uol_matrix_order_mod_n(const struct UolMatrix *matrix, uint64_t n, uint64_t *out);

/**
 * Prime scan of the matrix up to `limit`. `workers` 0 means available
 * parallelism. Results do not depend on `workers`.
 *
 * # Safety
 * `matrix` must be null or a live handle; `out` null or valid for writes.
 */
enum UolStatus uol_scan_primes(const struct UolMatrix *matrix,
                               uint64_t limit,
                               size_t workers,
                               struct UolReport **out);

/**
 * Prime scan of the integer `base` up to `limit`.
 *
 * # Safety
 * `out` must be null or valid for writes.
 */
enum UolStatus uol_scan_primes_base(int64_t base,
                                    uint64_t limit,
                                    size_t workers,
                                    struct UolReport **out);

/**
 * Composite scan of the matrix over `N` in `[2, limit]`.
 *
 * # Safety
 * `matrix` must be null or a live handle; `out` null or valid for writes.
 */
enum UolStatus uol_scan_composites(const struct UolMatrix *matrix,
                                   uint64_t limit,
                                   size_t workers,
                                   struct UolReport **out);

/**
 * Number of prime records in a report.
 *
 * # Safety
 * `report` must be null or a live handle.
 */
size_t uol_report_prime_count(const struct UolReport *report);

/**
 * The `index`-th prime record of a report.
 *
 * # Safety
 * `report` must be null or a live handle; `out` null or valid for writes.
 */
enum UolStatus uol_report_prime_record(const struct UolReport *report,
                                       size_t index,
                                       struct UolPrimeRecord *out);

/**
 * Report as a JSON string; release it with [`uol_string_free`].
 *
 * # Safety
 * `report` must be null or a live handle; `out` null or valid for writes.
 */
enum UolStatus uol_report_to_json(const struct UolReport *report, char **out);

/**
 * Writes the report to the file at `path`.
 *
 * # Safety
 * `report` must be null or a live handle; `path` null or a nul-terminated string.
 */
enum UolStatus uol_report_write(const struct UolReport *report,
                                enum UolFormat format,
                                const char *path);

/**
 * Releases a report. Null is ignored.
 *
 * # Safety
 * `report` must be null or a handle from this library not yet freed.
 */
void uol_report_free(struct UolReport *report);

/**
 * Releases a string returned by this library. Null is ignored.
 *
 * # Safety
 * `s` must be null or a string from this library not yet freed.
 */
void uol_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* UNIT_ORDER_LAB_H */
