#ifndef CSSG_H
#define CSSG_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

#define CSSG_LANGUAGE_PYTHON 0

#define CSSG_LANGUAGE_JAVA 1

#define CSSG_LANGUAGE_CPP 2

// Combined node count up to which the exact solver is tried.
#define CSSG_DEFAULT_EXACT_BUDGET 80

typedef enum CssgStatus {
  CSSG_STATUS_OK = 0,
  CSSG_STATUS_NULL_POINTER = 1,
  CSSG_STATUS_INVALID_UTF8 = 2,
  CSSG_STATUS_UNSUPPORTED_LANGUAGE = 3,
  CSSG_STATUS_PARSE_FAILURE = 4,
  CSSG_STATUS_INVALID_GRAPH = 5,
  CSSG_STATUS_INTERNAL = 6,
  CSSG_STATUS_PANIC = 7,
} CssgStatus;

typedef enum CssgSolver {
  CSSG_SOLVER_EXACT = 0,
  CSSG_SOLVER_APPROX = 1,
} CssgSolver;

// Opaque semantic graph.
typedef struct CssgGraph CssgGraph;

typedef struct CssgSimilarity {
  double score;
  size_t ged;
  size_t d_max;
  enum CssgSolver solver;
  // Both graphs held only the root node.
  bool degenerate;
} CssgSimilarity;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message for the last failed call on this thread, or null. The pointer
// stays valid until the next library call on the same thread.
const char *cssg_last_error_message(void);

// Library version as a static string.
const char *cssg_version(void);

// Builds the semantic graph of NUL-terminated UTF-8 `source`.
//
// # Safety
// `source` must be null or a valid C string; `out` must be null or
// writable.
enum CssgStatus cssg_graph_from_source(int32_t language,
                                       const char *source,
                                       struct CssgGraph **out);

// Parses the JSON graph format produced by [`cssg_graph_to_json`].
//
// # Safety
// As [`cssg_graph_from_source`].
enum CssgStatus cssg_graph_from_json(const char *json, struct CssgGraph **out);

// Serializes to JSON; free the result with [`cssg_string_free`].
//
// # Safety
// `graph` must be null or a live handle; `out` must be null or writable.
enum CssgStatus cssg_graph_to_json(const struct CssgGraph *graph, char **out);

// Serializes to Graphviz DOT; free the result with [`cssg_string_free`].
//
// # Safety
// As [`cssg_graph_to_json`].
enum CssgStatus cssg_graph_to_dot(const struct CssgGraph *graph, char **out);

// Node count, or 0 for a null handle.
//
// # Safety
// `graph` must be null or a live handle.
size_t cssg_graph_node_count(const struct CssgGraph *graph);

// Edge count, or 0 for a null handle.
//
// # Safety
// `graph` must be null or a live handle.
size_t cssg_graph_edge_count(const struct CssgGraph *graph);

// # Safety
// `graph` must be null or a handle not yet freed.
void cssg_graph_free(struct CssgGraph *graph);

// # Safety
// `s` must be null or a string returned by this library and not yet freed.
void cssg_string_free(char *s);

// CSSG score of two graphs. Pairs above `exact_budget` combined nodes
// use the approximate solver.
//
// # Safety
// `a` and `b` must be null or live handles; `out` must be null or
// writable.
enum CssgStatus cssg_similarity(const struct CssgGraph *a,
                                const struct CssgGraph *b,
                                size_t exact_budget,
                                struct CssgSimilarity *out);

// Builds both graphs and scores them in one call.
//
// # Safety
// Sources must be null or valid C strings; `out` must be null or writable.
enum CssgStatus cssg_compare_sources(int32_t language_a,
                                     const char *source_a,
                                     int32_t language_b,
                                     const char *source_b,
                                     size_t exact_budget,
                                     struct CssgSimilarity *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* CSSG_H */
