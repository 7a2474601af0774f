#ifndef PARTAVOID_H
#define PARTAVOID_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

#define PA_METHOD_ORACLE 0

#define PA_METHOD_FORMULA 1

#define PA_METHOD_GF 2

typedef enum PaStatus {
  PA_STATUS_OK = 0,
  PA_STATUS_NULL_POINTER = 1,
  PA_STATUS_PARSE_ERROR = 2,
  PA_STATUS_INVALID_ARGUMENT = 3,
  PA_STATUS_METHOD_UNAVAILABLE = 4,
  PA_STATUS_PANIC = 5,
} PaStatus;

/**
 * Opaque set partition.
 */
typedef struct PaPartition PaPartition;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * The message for the last failed call on this thread, or an empty string.
 * Valid until the next call into the library on the same thread.
 */
const char *pa_last_error(void);

/**
 * Parses `"1 3/2 4"` or `"13/24"`.
 *
 * # Safety
 * `text` must be a NUL-terminated string and `out` a valid pointer.
 */
enum PaStatus pa_partition_parse(const char *text, struct PaPartition **out);

/**
 * # Safety
 * `p` must be null or a handle returned by this library, not yet freed.
 */
void pa_partition_free(struct PaPartition *p);

/**
 * # Safety
 * `s` must be null or a string returned by this library, not yet freed.
 */
void pa_string_free(char *s);

/**
 * Size of the ground set, or 0 for a null handle.
 *
 * # Safety
 * `p` must be null or a live handle.
 */
size_t pa_partition_size(const struct PaPartition *p);

/**
 * # Safety
 * `p` must be null or a live handle.
 */
size_t pa_partition_block_count(const struct PaPartition *p);

/**
 * Spaced standard form, e.g. `"1 3/2 4"`.
 *
 * # Safety
 * `p` must be a live handle and `out` a valid pointer.
 */
enum PaStatus pa_partition_to_string(const struct PaPartition *p, char **out);

/**
 * Restricted growth word, e.g. `"1212"`.
 *
 * # Safety
 * `p` must be a live handle and `out` a valid pointer.
 */
enum PaStatus pa_partition_to_rgf(const struct PaPartition *p, char **out);

/**
 * Replaces every element `x` by `n + 1 - x`.
 *
 * # Safety
 * `p` must be a live handle and `out` a valid pointer.
 */
enum PaStatus pa_partition_complement(const struct PaPartition *p, struct PaPartition **out);

/**
 * Sets `*out` to whether `sigma` contains `tau`.
 *
 * # Safety
 * Both handles must be live and `out` a valid pointer.
 */
enum PaStatus pa_contains(const struct PaPartition *sigma,
                          const struct PaPartition *tau,
                          bool *out);

/**
 * Number of partitions of `[n]` avoiding `tau`, as a decimal string.
 * `method` is one of the `PA_METHOD_*` constants; `shards` of 0 means 1.
 *
 * # Safety
 * `tau` must be a live handle and `out` a valid pointer.
 */
enum PaStatus pa_count_avoiders(const struct PaPartition *tau,
                                size_t n,
                                uint32_t method,
                                size_t shards,
                                char **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* PARTAVOID_H */
