#ifndef DIBRUSH_H
#define DIBRUSH_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum DibrushStatus {
  DIBRUSH_STATUS_OK = 0,
  DIBRUSH_STATUS_NULL_POINTER = 1,
  DIBRUSH_STATUS_INVALID_UTF8 = 2,
  DIBRUSH_STATUS_PARSE = 3,
  DIBRUSH_STATUS_INVALID_GRAPH = 4,
  DIBRUSH_STATUS_INVALID_PLAN = 5,
  DIBRUSH_STATUS_INSUFFICIENT_BRUSHES = 6,
  DIBRUSH_STATUS_TOO_LARGE = 7,
  DIBRUSH_STATUS_NOT_APPLICABLE = 8,
  DIBRUSH_STATUS_INVALID_ARGUMENT = 9,
  DIBRUSH_STATUS_PANIC = 10,
  DIBRUSH_STATUS_OTHER = 11,
} DibrushStatus;

// Opaque graph handle.
typedef struct DibrushGraph DibrushGraph;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Parses an edge list (`n m` header, then one `u v` pair per line).
//
// # Safety
// `edges` must be a nul-terminated string and `out` a valid pointer.
enum DibrushStatus dibrush_graph_parse(const char *edges, struct DibrushGraph **out);

// # Safety
// `g` must come from [`dibrush_graph_parse`] and not be used afterwards.
// Null is ignored.
void dibrush_graph_free(struct DibrushGraph *g);

// Vertex count, or 0 for a null handle.
//
// # Safety
// `g` must be null or a live handle.
size_t dibrush_graph_vertex_count(const struct DibrushGraph *g);

// Arc count, or 0 for a null handle.
//
// # Safety
// `g` must be null or a live handle.
size_t dibrush_graph_arc_count(const struct DibrushGraph *g);

// Exact brushing number. `cap` bounds the vertex count (0 for the
// default), `workers` the thread count (0 for one per core). The value is
// written to `value`; when `json` is not null it receives the full result
// `{value, witness, stats}`.
//
// # Safety
// `g` must be a live handle, `value` a valid pointer, `json` null or valid.
enum DibrushStatus dibrush_solve(const struct DibrushGraph *g,
                                 size_t cap,
                                 size_t workers,
                                 bool topo_only,
                                 uint64_t *value,
                                 char **json);

// Bound report as JSON.
//
// # Safety
// `g` must be a live handle and `json` a valid pointer.
enum DibrushStatus dibrush_bounds_json(const struct DibrushGraph *g, char **json);

// Plan from a named strategy (`auto`, `tt`, `tt-minus-arc`, `complete`,
// `rotational`, `tree`, `dag-recursive`, `path-decomp`) as JSON.
//
// # Safety
// `g` must be a live handle, `method` a nul-terminated string and `json` a
// valid pointer.
enum DibrushStatus dibrush_strategy_json(const struct DibrushGraph *g,
                                         const char *method,
                                         char **json);

// Runs a plan given as JSON (`{initial, order, flows?}`) and returns the
// trace as JSON.
//
// # Safety
// `g` must be a live handle, `plan` a nul-terminated string and `json` a
// valid pointer.
enum DibrushStatus dibrush_simulate_json(const struct DibrushGraph *g,
                                         const char *plan,
                                         char **json);

// # Safety
// `s` must be null or a string returned by this library, not yet freed.
void dibrush_string_free(char *s);

// Message for the last failed call on this thread, or null. The pointer
// stays valid until the next library call on the same thread.
const char *dibrush_last_error(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* DIBRUSH_H */
