#ifndef ISF_H
#define ISF_H

/* Generated by cbindgen. Do not edit. */

#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>

/**
 * Result codes shared by every fallible entry point.
 */
typedef enum IsfStatus {
  ISF_STATUS_OK = 0,
  ISF_STATUS_NULL_POINTER = 1,
  ISF_STATUS_INVALID_INPUT = 2,
  ISF_STATUS_CYCLIC_INPUT = 3,
  ISF_STATUS_NOT_INCREASING = 4,
  ISF_STATUS_NOT_IN_GRAPH = 5,
  ISF_STATUS_SIZE_VIOLATION = 6,
  ISF_STATUS_INDEX_VIOLATION = 7,
  ISF_STATUS_BUFFER_TOO_SMALL = 8,
  ISF_STATUS_OVERFLOW = 9,
} IsfStatus;

/**
 * Which subset injection psi is built on.
 */
typedef enum IsfPhi {
  ISF_PHI_BRACKETING = 0,
  ISF_PHI_REVERSED_BRACKETING = 1,
} IsfPhi;

/**
 * Opaque forest handle.
 */
typedef struct IsfForest IsfForest;

/**
 * Opaque graph handle.
 */
typedef struct IsfGraph IsfGraph;

/**
 * Outcome of exhaustively checking psi on `IF_k x IF_l`.
 */
typedef struct IsfPsiSummary {
  size_t total_pairs;
  bool injective;
  bool local;
  bool weight_preserving;
  bool increasing;
} IsfPsiSummary;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message describing the last failure on this thread; empty if none.
 * The pointer stays valid until the next failing call on this thread.
 */
const char *isf_last_error_message(void);

/**
 * # Safety
 * `edges` must point to `2 * edge_count` readable `u32` values (or be NULL
 * when `edge_count == 0`), and `out` must be a valid pointer.
 */
enum IsfStatus isf_graph_new(uint32_t n,
                             const uint32_t *edges,
                             size_t edge_count,
                             struct IsfGraph **out);

struct IsfGraph *isf_graph_complete(uint32_t n);

/**
 * # Safety
 * `g` must come from this library and not be freed twice. NULL is ignored.
 */
void isf_graph_free(struct IsfGraph *g);

/**
 * # Safety
 * Same contract as [`isf_graph_new`].
 */
enum IsfStatus isf_forest_new(uint32_t n,
                              const uint32_t *edges,
                              size_t edge_count,
                              struct IsfForest **out);

/**
 * # Safety
 * `f` must come from this library and not be freed twice. NULL is ignored.
 */
void isf_forest_free(struct IsfForest *f);

/**
 * Number of connected components, or 0 for a NULL handle.
 *
 * # Safety
 * `f` must be a live handle or NULL.
 */
size_t isf_forest_component_count(const struct IsfForest *f);

/**
 * # Safety
 * `f` must be a live handle and `out` a valid pointer.
 */
enum IsfStatus isf_forest_is_increasing(const struct IsfForest *f, bool *out);

/**
 * Copies the sorted edge list into `buf` (capacity `cap` edges, i.e.
 * `2 * cap` values) and stores the edge count in `out_len`. When `cap` is
 * too small nothing is copied, `out_len` still receives the count and
 * `BufferTooSmall` is returned.
 *
 * # Safety
 * `buf` must have room for `2 * cap` values; `f` and `out_len` must be valid.
 */
enum IsfStatus isf_forest_edges(const struct IsfForest *f,
                                uint32_t *buf,
                                size_t cap,
                                size_t *out_len);

/**
 * Applies psi to `(a, b)`. On success the two new forests are returned as
 * fresh handles, `out_j` receives the selected vertex and `out_edge` the
 * moved edge as two values.
 *
 * # Safety
 * All handles must be live; every out pointer must be valid, `out_edge`
 * with room for 2 values.
 */
enum IsfStatus isf_psi(const struct IsfGraph *g,
                       const struct IsfForest *a,
                       const struct IsfForest *b,
                       enum IsfPhi phi,
                       struct IsfForest **out_a,
                       struct IsfForest **out_b,
                       uint32_t *out_j,
                       uint32_t *out_edge);

/**
 * # Safety
 * `g` must be a live handle and `out` a valid pointer.
 */
enum IsfStatus isf_verify_psi(const struct IsfGraph *g,
                              size_t k,
                              size_t l,
                              enum IsfPhi phi,
                              struct IsfPsiSummary *out);

/**
 * Unsigned Stirling numbers `c(n, 0..=n)` into `buf` (capacity `cap`).
 *
 * # Safety
 * `buf` must have room for `cap` values and `out_len` must be valid.
 */
enum IsfStatus isf_stirling_row(uint32_t n, uint64_t *buf, size_t cap, size_t *out_len);

/**
 * Chromatic polynomial coefficients (index = degree) into `buf`.
 * Returns `Overflow` if a coefficient does not fit in `i64`.
 *
 * # Safety
 * `g` must be live, `buf` must have room for `cap` values, `out_len` valid.
 */
enum IsfStatus isf_chromatic_polynomial(const struct IsfGraph *g,
                                        int64_t *buf,
                                        size_t cap,
                                        size_t *out_len);

/**
 * Runs one `isf` command line (without the program name) and hands back
 * its JSON report, to be released with `isf_string_free`. Returns the
 * command's exit status: 0 ok, 1 property failed, 2 usage or input error.
 *
 * # Safety
 * `argv` must hold `argc` valid NUL-terminated strings; `out_json` must be
 * a valid pointer.
 */
int32_t isf_command_json(const char *const *argv, size_t argc, char **out_json);

/**
 * # Safety
 * `s` must come from `isf_command_json` and not be freed twice.
 */
void isf_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* ISF_H */
