#ifndef DRGKIT_H
#define DRGKIT_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum DrgStatus {
  DRG_STATUS_OK = 0,
  DRG_STATUS_NULL_POINTER = 1,
  DRG_STATUS_INVALID_UTF8 = 2,
  DRG_STATUS_INVALID_ARGUMENT = 3,
  DRG_STATUS_PARSE = 4,
  DRG_STATUS_NOT_DISTANCE_REGULAR = 5,
  DRG_STATUS_FLOAT_MODE = 6,
  DRG_STATUS_ANALYSIS = 7,
  DRG_STATUS_PANIC = 8,
} DrgStatus;

typedef enum DrgPvt {
  DRG_PVT_PVT = 0,
  DRG_PVT_NOT_PVT = 1,
  DRG_PVT_NECESSARY_CONDITIONS_PASS = 2,
} DrgPvt;

/**
 * Opaque graph handle.
 */
typedef struct DrgGraph DrgGraph;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Builds a member of a named family. `params` may be null when
 * `n_params` is 0.
 *
 * # Safety
 * `family` must be a NUL-terminated string, `params` must point to
 * `n_params` integers and `out` must be writable.
 */
enum DrgStatus drg_graph_construct(const char *family,
                                   const int64_t *params,
                                   size_t n_params,
                                   struct DrgGraph **out);

/**
 * Parses a graph from its JSON form.
 *
 * # Safety
 * `json` must be a NUL-terminated string and `out` must be writable.
 */
enum DrgStatus drg_graph_from_json(const char *json, struct DrgGraph **out);

/**
 * Builds a graph from a row-major `n`×`n` 0/1 matrix.
 *
 * # Safety
 * `adjacency` must point to `n * n` bytes and `out` must be writable.
 */
enum DrgStatus drg_graph_from_adjacency(const uint8_t *adjacency, size_t n, struct DrgGraph **out);

/**
 * Releases a graph handle. Null is ignored.
 *
 * # Safety
 * `g` must come from this library and not be used afterwards.
 */
void drg_graph_free(struct DrgGraph *g);

/**
 * # Safety
 * `g` must be a live handle and `out` writable.
 */
enum DrgStatus drg_graph_vertex_count(const struct DrgGraph *g, size_t *out);

/**
 * # Safety
 * `g` must be a live handle and `out` writable.
 */
enum DrgStatus drg_graph_to_json(const struct DrgGraph *g, char **out);

/**
 * Dimension of the Terwilliger algebra with respect to base vertex `x`.
 *
 * # Safety
 * `g` must be a live handle and `out` writable.
 */
enum DrgStatus drg_terwilliger_dim(const struct DrgGraph *g, size_t x, size_t *out);

/**
 * # Safety
 * `g` must be a live handle and `out` writable.
 */
enum DrgStatus drg_check_pvt(const struct DrgGraph *g, enum DrgPvt *out);

/**
 * Full analysis report as JSON. `base_vertex` < 0 analyzes every vertex.
 *
 * # Safety
 * `g` must be a live handle and `out` writable.
 */
enum DrgStatus drg_analyze_json(const struct DrgGraph *g,
                                int64_t base_vertex,
                                int allow_float,
                                char **out);

/**
 * Releases a string returned by this library. Null is ignored.
 *
 * # Safety
 * `s` must come from this library and not be used afterwards.
 */
void drg_string_free(char *s);

/**
 * Message for the last failed call on this thread, or null. The pointer
 * stays valid until the next call into the library on this thread.
 */
const char *drg_last_error(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* DRGKIT_H */
