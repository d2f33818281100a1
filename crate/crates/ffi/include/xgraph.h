#ifndef XGRAPH_H
#define XGRAPH_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result code of every fallible call.
 */
typedef enum XgStatus {
  XG_STATUS_OK = 0,
  /**
   * The graph is not valid where a valid graph is required.
   */
  XG_STATUS_INVALID = 1,
  XG_STATUS_NULL_POINTER = 2,
  XG_STATUS_UTF8 = 3,
  /**
   * Malformed or unsupported input.
   */
  XG_STATUS_INPUT = 4,
  XG_STATUS_CAP_EXCEEDED = 5,
  XG_STATUS_PRECONDITION = 6,
  XG_STATUS_INTERNAL = 7,
} XgStatus;

/**
 * Opaque graph handle.
 */
typedef struct XgGraph XgGraph;

typedef struct XgVerdict {
  bool is_valid;
  bool vacuous;
  size_t mu;
  size_t matching_count;
  size_t violation_count;
} XgVerdict;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failed call on this thread; empty after a success.
 * The pointer stays valid until the next call on the same thread.
 */
const char *xg_last_error_message(void);

/**
 * Library version as a static string.
 */
const char *xg_version(void);

/**
 * Parses a graph from its JSON text.
 *
 * # Safety
 * `json` must be a nul-terminated string and `out` a writable pointer.
 */
enum XgStatus xg_graph_from_json(const char *json, struct XgGraph **out);

/**
 * Releases a graph; null is ignored.
 *
 * # Safety
 * `g` must come from this library and not be used afterwards.
 */
void xg_graph_free(struct XgGraph *g);

/**
 * Releases a string returned by this library; null is ignored.
 *
 * # Safety
 * `s` must come from this library and not be used afterwards.
 */
void xg_string_free(char *s);

/**
 * # Safety
 * `g` must be a live handle or null (which yields 0).
 */
size_t xg_graph_vertex_count(const struct XgGraph *g);

/**
 * # Safety
 * `g` must be a live handle or null (which yields 0).
 */
size_t xg_graph_edge_count(const struct XgGraph *g);

/**
 * Serializes a graph to JSON.
 *
 * # Safety
 * `g` must be a live handle and `out` a writable pointer.
 */
enum XgStatus xg_graph_to_json(const struct XgGraph *g, char **out);

/**
 * Exact validity check. Returns `XG_STATUS_OK` for invalid graphs too;
 * inspect `out->is_valid`.
 *
 * # Safety
 * `g` must be a live handle and `out` a writable pointer.
 */
enum XgStatus xg_verify(const struct XgGraph *g, struct XgVerdict *out);

/**
 * Full verdict as JSON, including the weight table.
 *
 * # Safety
 * `g` must be a live handle and `out` a writable pointer.
 */
enum XgStatus xg_verify_json(const struct XgGraph *g, char **out);

/**
 * Prunes a valid graph to the fixpoint of the pruning rules. `trace_json`
 * may be null; otherwise it receives the trace.
 *
 * # Safety
 * `g` must be a live handle, `out` writable, `trace_json` writable or null.
 */
enum XgStatus xg_prune(const struct XgGraph *g, struct XgGraph **out, char **trace_json);

/**
 * Certificate report as JSON; `all_hold` (nullable) receives whether every
 * check holds.
 *
 * # Safety
 * `g` must be a live handle, `out` writable, `all_hold` writable or null.
 */
enum XgStatus xg_certify_json(const struct XgGraph *g, char **out, bool *all_hold);

/**
 * The validity conditions as polynomial equations, one per line.
 *
 * # Safety
 * `g` must be a live handle and `out` a writable pointer.
 */
enum XgStatus xg_export_poly(const struct XgGraph *g, char **out);

/**
 * Searches for maximum-dimension valid graphs; the result is JSON.
 * `weights` is `"pm1"`, `"i4"` or a comma-separated list.
 *
 * # Safety
 * `weights` must be a nul-terminated string and `out` a writable pointer.
 */
enum XgStatus xg_search_json(size_t n,
                             size_t max_colors,
                             const char *weights,
                             bool mono_only,
                             bool up_to_iso,
                             size_t min_mu,
                             uint64_t budget,
                             char **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* XGRAPH_H */
