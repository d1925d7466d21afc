#ifndef EXPANDER_H
#define EXPANDER_H

#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>

typedef enum ExpanderStatus {
  EXPANDER_STATUS_OK = 0,
  EXPANDER_STATUS_NULL_POINTER = 1,
  EXPANDER_STATUS_INVALID_ARGUMENT = 2,
  EXPANDER_STATUS_EXACT_LIMIT = 3,
  EXPANDER_STATUS_PARSE = 4,
  EXPANDER_STATUS_NON_CONVERGENCE = 5,
  EXPANDER_STATUS_BUDGET_EXCEEDED = 6,
  EXPANDER_STATUS_CONTRADICTION = 7,
  EXPANDER_STATUS_HYPOTHESIS = 8,
  EXPANDER_STATUS_IO = 9,
  EXPANDER_STATUS_PANIC = 10,
  EXPANDER_STATUS_OTHER = 11,
} ExpanderStatus;

// Opaque graph handle.
typedef struct ExpanderGraph ExpanderGraph;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message of the last failed call on this thread. Owned by the library and
// valid until the next failing call on the same thread.
const char *expander_last_error(void);

// Builds a graph on `n` vertices from `m` pairs stored as `edges[2i]`,
// `edges[2i + 1]`.
//
// # Safety
// `edges` must point to `2 m` readable values (it may be null when `m` is 0)
// and `out` must be writable.
enum ExpanderStatus expander_graph_from_edges(size_t n,
                                              const size_t *edges,
                                              size_t m,
                                              struct ExpanderGraph **out);

// Parses an edge list (one `u v` pair per line).
//
// # Safety
// `text` must be a NUL-terminated string and `out` writable.
enum ExpanderStatus expander_graph_parse(const char *text, struct ExpanderGraph **out);

// Generates a graph from a JSON spec such as
// `{"kind": "random_regular", "n": 100, "d": 3, "seed": 7}`.
//
// # Safety
// `spec_json` must be a NUL-terminated string and `out` writable.
enum ExpanderStatus expander_graph_generate(const char *spec_json, struct ExpanderGraph **out);

// Releases a graph; null is ignored.
//
// # Safety
// `g` must come from this library and not be used afterwards.
void expander_graph_free(struct ExpanderGraph *g);

// Vertex count, or 0 for a null handle.
//
// # Safety
// `g` must be null or a live handle.
size_t expander_graph_n(const struct ExpanderGraph *g);

// Edge count, or 0 for a null handle.
//
// # Safety
// `g` must be null or a live handle.
size_t expander_graph_m(const struct ExpanderGraph *g);

// Order-independent hash of the edge list.
//
// # Safety
// `g` must be a live handle and `out` writable.
enum ExpanderStatus expander_graph_hash(const struct ExpanderGraph *g, uint64_t *out);

// Exact worst ratio `min |N(U)| / |U|` over `1 <= |U| <= n/2`; infinity
// when no set is admissible. Refuses graphs above the exact limit.
//
// # Safety
// `g` must be a live handle and `out` writable.
enum ExpanderStatus expander_alpha_star(const struct ExpanderGraph *g, double *out);

// Second-smallest normalized-Laplacian eigenvalue.
//
// # Safety
// `g` must be a live handle and `out` writable.
enum ExpanderStatus expander_mu(const struct ExpanderGraph *g, uint64_t seed, double *out);

// Expansion report as JSON; `exact` selects exhaustive certification.
//
// # Safety
// `g` must be a live handle and `out` writable; free the string with
// `expander_string_free`.
enum ExpanderStatus expander_certify_json(const struct ExpanderGraph *g, bool exact, char **out);

// Separator report as JSON.
//
// # Safety
// As for `expander_certify_json`.
enum ExpanderStatus expander_separator_json(const struct ExpanderGraph *g, char **out);

// Long path or non-expanding witness as JSON (natural vertex order).
//
// # Safety
// As for `expander_certify_json`.
enum ExpanderStatus expander_long_path_json(const struct ExpanderGraph *g,
                                            size_t k,
                                            size_t ell,
                                            char **out);

// Long cycle or violation as JSON (natural vertex order).
//
// # Safety
// As for `expander_certify_json`.
enum ExpanderStatus expander_long_cycle_json(const struct ExpanderGraph *g,
                                             size_t k,
                                             size_t ell,
                                             char **out);

// Clique minor as JSON. Zero for `b`, `k` or `walk_constant` keeps the
// derived default.
//
// # Safety
// As for `expander_certify_json`.
enum ExpanderStatus expander_clique_minor_json(const struct ExpanderGraph *g,
                                               double alpha,
                                               size_t b,
                                               size_t k,
                                               double walk_constant,
                                               uint64_t seed,
                                               char **out);

// Releases a string returned by this library; null is ignored.
//
// # Safety
// `s` must come from this library and not be used afterwards.
void expander_string_free(char *s);

// Library version, static.
const char *expander_version(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* EXPANDER_H */
