#ifndef GREENSEQ_H
#define GREENSEQ_H

/* Generated by cbindgen from src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Bumped on any incompatible change to this interface.
 */
#define GS_ABI_VERSION 1

typedef enum GsStatus {
  GS_STATUS_OK = 0,
  GS_STATUS_NULL_POINTER = 1,
  GS_STATUS_INVALID_UTF8 = 2,
  GS_STATUS_PARSE_ERROR = 3,
  GS_STATUS_INVALID_QUIVER = 4,
  GS_STATUS_INVALID_ARGUMENT = 5,
  GS_STATUS_UNKNOWN_SHAPE = 6,
  GS_STATUS_OVERFLOW = 7,
  GS_STATUS_INTERNAL = 8,
  GS_STATUS_PANIC = 9,
} GsStatus;

typedef enum GsColor {
  GS_COLOR_GREEN = 0,
  GS_COLOR_RED = 1,
} GsColor;

/**
 * Opaque cluster quiver.
 */
typedef struct GsClusterQuiver GsClusterQuiver;

/**
 * Opaque ice quiver.
 */
typedef struct GsIceQuiver GsIceQuiver;

/**
 * Opaque enumeration result.
 */
typedef struct GsSpectrumReport GsSpectrumReport;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

uint32_t gs_abi_version(void);

/**
 * Message of the last failed call on this thread, or null. Valid until the
 * next call into this library on the same thread.
 */
const char *gs_last_error_message(void);

/**
 * # Safety
 * `s` must be null or a string returned by this library.
 */
void gs_string_free(char *s);

/**
 * Parses the plain-text quiver format; the file must not declare frozen
 * vertices.
 *
 * # Safety
 * `text` must be a NUL-terminated string and `out` a valid pointer.
 */
enum GsStatus gs_cluster_quiver_parse(const char *text, struct GsClusterQuiver **out);

/**
 * Builds a cluster quiver on `n` vertices from `arrow_count` pairs
 * `(arrows[2i], arrows[2i+1])` of 0-based indices.
 *
 * # Safety
 * `arrows` must point to `2 * arrow_count` values (or be null when
 * `arrow_count` is 0) and `out` must be valid.
 */
enum GsStatus gs_cluster_quiver_new(size_t n,
                                    const size_t *arrows,
                                    size_t arrow_count,
                                    struct GsClusterQuiver **out);

/**
 * `Ã_(n,1)` with vertices `0..=n`.
 *
 * # Safety
 * `out` must be valid.
 */
enum GsStatus gs_affine_quiver_new(size_t n, struct GsClusterQuiver **out);

/**
 * # Safety
 * `q` must be null or a handle from this library, freed at most once.
 */
void gs_cluster_quiver_free(struct GsClusterQuiver *q);

/**
 * # Safety
 * `q` must be a valid handle.
 */
size_t gs_cluster_quiver_vertex_count(const struct GsClusterQuiver *q);

/**
 * The framed quiver; frozen copy of vertex `i` at index `n + i`.
 *
 * # Safety
 * `q` must be a valid handle and `out` a valid pointer.
 */
enum GsStatus gs_framed(const struct GsClusterQuiver *q, struct GsIceQuiver **out);

/**
 * # Safety
 * `r` must be null or a handle from this library, freed at most once.
 */
void gs_ice_quiver_free(struct GsIceQuiver *r);

/**
 * # Safety
 * `r` must be a valid handle.
 */
size_t gs_ice_quiver_size(const struct GsIceQuiver *r);

/**
 * Number of arrows `u -> v` (0-based indices).
 *
 * # Safety
 * `r` must be a valid handle and `out` a valid pointer.
 */
enum GsStatus gs_ice_quiver_multiplicity(const struct GsIceQuiver *r,
                                         size_t u,
                                         size_t v,
                                         uint32_t *out);

/**
 * Mutation at the non-frozen vertex index `k`, as a new handle.
 *
 * # Safety
 * `r` must be a valid handle and `out` a valid pointer.
 */
enum GsStatus gs_ice_quiver_mutate(const struct GsIceQuiver *r, size_t k, struct GsIceQuiver **out);

/**
 * # Safety
 * `r` must be a valid handle and `out` a valid pointer.
 */
enum GsStatus gs_ice_quiver_color(const struct GsIceQuiver *r, size_t v, enum GsColor *out);

/**
 * The ice quiver in the plain-text format; free with [`gs_string_free`].
 *
 * # Safety
 * `r` must be a valid handle.
 */
char *gs_ice_quiver_to_text(const struct GsIceQuiver *r);

/**
 * The family's maximal green sequence length bound.
 *
 * # Safety
 * `q` must be a valid handle and `out` a valid pointer.
 */
enum GsStatus gs_default_depth_bound(const struct GsClusterQuiver *q, size_t *out);

/**
 * Enumerates maximal green sequences up to `depth_bound` (0: the family's
 * bound).
 *
 * # Safety
 * `q` must be a valid handle and `out` a valid pointer.
 */
enum GsStatus gs_enumerate_mgs(const struct GsClusterQuiver *q,
                               size_t depth_bound,
                               size_t threads,
                               bool memoize,
                               struct GsSpectrumReport **out);

/**
 * # Safety
 * `r` must be null or a handle from this library, freed at most once.
 */
void gs_spectrum_report_free(struct GsSpectrumReport *r);

/**
 * Copies up to `capacity` lengths in ascending order into `buf` and stores
 * the total number of lengths in `len`.
 *
 * # Safety
 * `r` must be a valid handle, `buf` must hold `capacity` values (or be null
 * when `capacity` is 0) and `len` must be valid.
 */
enum GsStatus gs_spectrum_report_lengths(const struct GsSpectrumReport *r,
                                         size_t *buf,
                                         size_t capacity,
                                         size_t *len);

/**
 * Number of maximal green sequences of the given length.
 *
 * # Safety
 * `r` must be a valid handle.
 */
uint64_t gs_spectrum_report_count(const struct GsSpectrumReport *r, size_t length);

/**
 * # Safety
 * `r` must be a valid handle.
 */
bool gs_spectrum_report_truncated(const struct GsSpectrumReport *r);

/**
 * # Safety
 * `r` must be a valid handle.
 */
uint64_t gs_spectrum_report_states_visited(const struct GsSpectrumReport *r);

/**
 * The report as JSON; free with [`gs_string_free`].
 *
 * # Safety
 * `r` must be a valid handle.
 */
char *gs_spectrum_report_to_json(const struct GsSpectrumReport *r);

/**
 * Whether `L(i, j)` and `L(k, l)` have no extensions either way over the
 * type-A orientation string (e.g. `"+-+"`).
 *
 * # Safety
 * `orientation` must be a NUL-terminated string and `out` valid.
 */
enum GsStatus gs_interval_compatible(const char *orientation,
                                     size_t i,
                                     size_t j,
                                     size_t k,
                                     size_t l,
                                     bool *out);

/**
 * Sincerity of `tau^{-r} P(i)` over `Ã_(n,1)` for all `i` and `1 <= r <= depth`.
 *
 * # Safety
 * `out` must be valid.
 */
enum GsStatus gs_affine_sincerity(size_t n, size_t depth, bool *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* GREENSEQ_H */
