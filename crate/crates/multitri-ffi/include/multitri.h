#ifndef MULTITRI_H
#define MULTITRI_H

/* Generated by cbindgen from the multitri-ffi crate. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum MtStatus {
  MT_STATUS_OK = 0,
  MT_STATUS_NULL_POINTER = 1,
  MT_STATUS_INVALID_PARAMETER = 2,
  MT_STATUS_INVALID_INPUT = 3,
  MT_STATUS_LIMIT_EXCEEDED = 4,
  MT_STATUS_BUFFER_TOO_SMALL = 5,
  MT_STATUS_OVERFLOW = 6,
  MT_STATUS_PANIC = 7,
} MtStatus;

/**
 * A k-triangulation of a convex polygon.
 */
typedef struct MtTriangulation MtTriangulation;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failure on this thread, NUL terminated and truncated
 * to `cap`. `len` receives the untruncated byte length.
 *
 * # Safety
 * `buf` must point to `cap` writable bytes; `len` must be valid or null.
 */
enum MtStatus mt_last_error(char *buf, size_t cap, size_t *len);

/**
 * Builds a triangulation from `num_edges` relevant edges given as pairs.
 *
 * # Safety
 * `edges` must hold `2 * num_edges` values; `out` must be valid.
 */
enum MtStatus mt_triangulation_new(size_t n,
                                   size_t k,
                                   const uint32_t *edges,
                                   size_t num_edges,
                                   struct MtTriangulation **out);

/**
 * The minimal triangulation (fans at the first k vertices).
 *
 * # Safety
 * `out` must be valid.
 */
enum MtStatus mt_triangulation_min(size_t n, size_t k, struct MtTriangulation **out);

/**
 * # Safety
 * `t` must come from this library and not be freed twice. Null is ignored.
 */
void mt_triangulation_free(struct MtTriangulation *t);

/**
 * # Safety
 * `t`, `n` and `k` must be valid.
 */
enum MtStatus mt_triangulation_size(const struct MtTriangulation *t, size_t *n, size_t *k);

/**
 * Relevant edges as `u0 v0 u1 v1 ...`; `len` counts values, not edges.
 *
 * # Safety
 * `buf` must hold `cap` values.
 */
enum MtStatus mt_triangulation_edges(const struct MtTriangulation *t,
                                     uint32_t *buf,
                                     size_t cap,
                                     size_t *len);

/**
 * Flips the relevant edge `[u, v]` into a new handle and reports the
 * inserted edge in `inserted[0..2]`.
 *
 * # Safety
 * `t` and `out` must be valid; `inserted` may be null.
 */
enum MtStatus mt_triangulation_flip(const struct MtTriangulation *t,
                                    uint32_t u,
                                    uint32_t v,
                                    struct MtTriangulation **out,
                                    uint32_t *inserted);

/**
 * Beam vector, one entry per beam.
 *
 * # Safety
 * `buf` must hold `cap` values.
 */
enum MtStatus mt_beam_vector(const struct MtTriangulation *t,
                             uint64_t *buf,
                             size_t cap,
                             size_t *len);

/**
 * Dyck k-path of the star coloring as `N`/`E` words separated by spaces,
 * NUL terminated. `len` excludes the terminator.
 *
 * # Safety
 * `buf` must hold `cap` bytes.
 */
enum MtStatus mt_dyck_path(const struct MtTriangulation *t, char *buf, size_t cap, size_t *len);

/**
 * Number of k-triangulations of the n-gon, if it fits in 64 bits.
 *
 * # Safety
 * `out` must be valid.
 */
enum MtStatus mt_count(size_t n, size_t k, uint64_t *out);

/**
 * Order and diameter of the flip graph. `max_nodes = 0` means unlimited.
 *
 * # Safety
 * `nodes` and `diameter` must be valid.
 */
enum MtStatus mt_flip_graph_diameter(size_t n,
                                     size_t k,
                                     size_t max_nodes,
                                     size_t *nodes,
                                     size_t *diameter);

/**
 * f-vector of the beam polytope, `f_0` first. `max_nodes = 0` means unlimited.
 *
 * # Safety
 * `buf` must hold `cap` values.
 */
enum MtStatus mt_f_vector(size_t n,
                          size_t k,
                          size_t max_nodes,
                          uint64_t *buf,
                          size_t cap,
                          size_t *len);

#ifdef __cplusplus
} // extern "C"
#endif // __cplusplus

#endif /* MULTITRI_H */
