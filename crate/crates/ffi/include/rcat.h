#ifndef RCAT_H
#define RCAT_H

/* Generated by cbindgen from the rcat-ffi sources. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum RcatStatus {
  RCAT_STATUS_OK = 0,
  RCAT_STATUS_NULL_POINTER = 1,
  RCAT_STATUS_INVALID_UTF8 = 2,
  RCAT_STATUS_INVALID_SLOPE = 3,
  RCAT_STATUS_INVALID_PARTITION = 4,
  RCAT_STATUS_INVALID_PATH = 5,
  RCAT_STATUS_INVALID_ARGUMENT = 6,
  RCAT_STATUS_BUFFER_TOO_SMALL = 7,
  RCAT_STATUS_OVERFLOW = 8,
  RCAT_STATUS_PANIC = 9,
} RcatStatus;

typedef enum RcatMethod {
  RCAT_METHOD_RECONSTRUCTION = 0,
  RCAT_METHOD_KREWERAS = 1,
  RCAT_METHOD_RANK_ORBIT = 2,
} RcatMethod;

/**
 * A set partition of `[n]`.
 */
typedef struct RcatPartition RcatPartition;

/**
 * A rational Dyck path.
 */
typedef struct RcatPath RcatPath;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * The message for the most recent failure on this thread, or null. The
 * pointer stays valid until the next failing call on the same thread.
 */
const char *rcat_last_error(void);

/**
 * # Safety
 * `s` must be null or a string returned by this library, not yet freed.
 */
void rcat_string_free(char *s);

/**
 * `Cat(a,b)` for coprime `a, b`.
 *
 * # Safety
 * `out` must be valid for writes.
 */
enum RcatStatus rcat_catalan(uint32_t a, uint32_t b, uint64_t *out);

/**
 * `|NC(a,b)|` by enumeration.
 *
 * # Safety
 * `out` must be valid for writes.
 */
enum RcatStatus rcat_nc_count(uint32_t a, uint32_t b, uint64_t *out);

/**
 * Parses a partition such as `"1,3,7|2|4,5,6"`.
 *
 * # Safety
 * `text` must be a nul-terminated string; `out` must be valid for writes.
 */
enum RcatStatus rcat_partition_parse(const char *text, struct RcatPartition **out);

/**
 * # Safety
 * `p` must be null or a live handle from this library.
 */
void rcat_partition_free(struct RcatPartition *p);

/**
 * The canonical text form; free with `rcat_string_free`.
 *
 * # Safety
 * `p` must be a live handle; `out` must be valid for writes.
 */
enum RcatStatus rcat_partition_to_string(const struct RcatPartition *p, char **out);

/**
 * # Safety
 * `p` must be a live handle; `out` must be valid for writes.
 */
enum RcatStatus rcat_partition_num_blocks(const struct RcatPartition *p, size_t *out);

/**
 * Kreweras complement of a noncrossing partition.
 *
 * # Safety
 * `p` must be a live handle; `out` must be valid for writes.
 */
enum RcatStatus rcat_partition_kreweras(const struct RcatPartition *p, struct RcatPartition **out);

/**
 * Rotation `i -> i + k` modulo `n`; negative `k` rotates backwards.
 *
 * # Safety
 * `p` must be a live handle; `out` must be valid for writes.
 */
enum RcatStatus rcat_partition_rotate(const struct RcatPartition *p,
                                      int64_t k,
                                      struct RcatPartition **out);

/**
 * Membership of a partition of `[b-1]` in `NC(a,b)`.
 *
 * # Safety
 * `p` must be a live handle; `out` must be valid for writes.
 */
enum RcatStatus rcat_is_member(const struct RcatPartition *p,
                               uint32_t a,
                               uint32_t b,
                               enum RcatMethod method,
                               bool *out);

/**
 * Writes the rank sequence (length `b - 1`) of a member partition into `buf`.
 *
 * # Safety
 * `p` must be a live handle; `buf` must be valid for `len` writes.
 */
enum RcatStatus rcat_rank_sequence(const struct RcatPartition *p,
                                   uint32_t a,
                                   uint32_t b,
                                   uint32_t *buf,
                                   size_t len);

/**
 * A Dyck path from its run vector (`runs[x]` north steps in column `x`).
 *
 * # Safety
 * `runs` must be valid for `len` reads; `out` must be valid for writes.
 */
enum RcatStatus rcat_path_new(uint32_t a,
                              uint32_t b,
                              const uint32_t *runs,
                              size_t len,
                              struct RcatPath **out);

/**
 * # Safety
 * `p` must be null or a live handle from this library.
 */
void rcat_path_free(struct RcatPath *p);

/**
 * The laser partition of a path with `a < b`.
 *
 * # Safety
 * `path` must be a live handle; `out` must be valid for writes.
 */
enum RcatStatus rcat_path_partition(const struct RcatPath *path, struct RcatPartition **out);

/**
 * Runs the Catalan cyclic sieving check; `out` receives the verdict.
 *
 * # Safety
 * `out` must be valid for writes.
 */
enum RcatStatus rcat_csp_catalan(uint32_t a, uint32_t b, bool *out);

/**
 * Brute and predicted parking character at `(w, g^d)`; `w` is one-line notation on `[a]`.
 *
 * # Safety
 * `w` must be valid for `len` reads; both outputs must be valid for writes.
 */
enum RcatStatus rcat_park_character(uint32_t a,
                                    uint32_t b,
                                    const uint32_t *w,
                                    size_t len,
                                    uint32_t d,
                                    uint64_t *brute,
                                    uint64_t *predicted);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* RCAT_H */
