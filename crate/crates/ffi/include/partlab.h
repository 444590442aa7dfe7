#ifndef PARTLAB_H
#define PARTLAB_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum {
  PL_STATUS_OK = 0,
  PL_STATUS_NULL_POINTER = 1,
  PL_STATUS_INVALID_ARGUMENT = 2,
  PL_STATUS_PARSE_ERROR = 3,
  PL_STATUS_CAP_EXCEEDED = 4,
  PL_STATUS_NOT_FOUND = 5,
  PL_STATUS_VERIFICATION_FAILED = 6,
  PL_STATUS_INTERNAL = 7,
} PlStatus;

/**
 * A coloring of level sets of the full binary tree.
 */
typedef struct PlColoring PlColoring;

/**
 * An ordinal below ω^ω.
 */
typedef struct PlOrdinal PlOrdinal;

/**
 * A finite 0/1 tree.
 */
typedef struct PlTree PlTree;

/**
 * A walk trace.
 */
typedef struct PlWalk PlWalk;

/**
 * Witness colorings for the walk colorings.
 */
typedef struct PlWitnesses PlWitnesses;

/**
 * Message for the last failed call on this thread, or null after a success.
 * The pointer stays valid until the next call into the library on this thread.
 */
const char *pl_last_error_message(void);

/**
 * # Safety
 * `s` is null or a string returned by this library and not yet freed.
 */
void pl_string_free(char *s);

/**
 * Parse an ordinal such as `w^2+w*3+1`.
 *
 * # Safety
 * `text` is a nul-terminated string; `out` is writable.
 */
PlStatus pl_ordinal_parse(const char *text, PlOrdinal **out);

/**
 * # Safety
 * `o` is a live ordinal handle; `out` is writable. Free the result with [`pl_string_free`].
 */
PlStatus pl_ordinal_to_string(const PlOrdinal *o, char **out);

/**
 * Writes -1, 0 or 1 to `out`.
 *
 * # Safety
 * `a` and `b` are live ordinal handles; `out` is writable.
 */
PlStatus pl_ordinal_compare(const PlOrdinal *a, const PlOrdinal *b, int *out);

/**
 * # Safety
 * `o` is null or a handle from this library, not yet freed.
 */
void pl_ordinal_free(PlOrdinal *o);

/**
 * The walk from `beta` down to `alpha`.
 *
 * # Safety
 * `beta` and `alpha` are live ordinal handles; `out` is writable.
 */
PlStatus pl_walk_new(const PlOrdinal *beta, const PlOrdinal *alpha, PlWalk **out);

/**
 * The index `k` of the last step.
 *
 * # Safety
 * `w` is a live walk handle; `out` is writable.
 */
PlStatus pl_walk_length(const PlWalk *w, size_t *out);

/**
 * `γ⁺_step` as a new ordinal handle.
 *
 * # Safety
 * `w` is a live walk handle; `out` is writable.
 */
PlStatus pl_walk_gamma_plus(const PlWalk *w, size_t step, PlOrdinal **out);

/**
 * `γ⁻_step` as a new ordinal handle.
 *
 * # Safety
 * `w` is a live walk handle; `out` is writable.
 */
PlStatus pl_walk_gamma_minus(const PlWalk *w, size_t step, PlOrdinal **out);

/**
 * # Safety
 * `w` is null or a handle from this library, not yet freed.
 */
void pl_walk_free(PlWalk *w);

/**
 * Witness colorings from their JSON form.
 *
 * # Safety
 * `json` is a nul-terminated string; `out` is writable.
 */
PlStatus pl_witnesses_from_json(const char *json, PlWitnesses **out);

/**
 * Seeded witness colorings with `colors` colors.
 *
 * # Safety
 * `out` is writable.
 */
PlStatus pl_witnesses_seeded(uint64_t seed, uint32_t colors, PlWitnesses **out);

/**
 * # Safety
 * `w` is null or a handle from this library, not yet freed.
 */
void pl_witnesses_free(PlWitnesses *w);

/**
 * `d` on the strictly decreasing tuple `alphas[0] > … > alphas[len-1]`, `len ≥ 3`.
 *
 * # Safety
 * `alphas` points to `len` live ordinal handles; `w` is live; `out` is writable.
 */
PlStatus pl_d_color(const PlOrdinal *const *alphas,
                    size_t len,
                    const PlWitnesses *w,
                    uint32_t *out);

/**
 * The census count `h(n)` under the default reading.
 *
 * # Safety
 * `out` is writable.
 */
PlStatus pl_h_of_n(size_t n, uint64_t *out);

/**
 * The tree `T*_k`.
 *
 * # Safety
 * `out` is writable.
 */
PlStatus pl_tstar(uint32_t k, PlTree **out);

/**
 * # Safety
 * `t` is a live tree handle; `out` is writable.
 */
PlStatus pl_tree_node_count(const PlTree *t, size_t *out);

/**
 * `{"depth":D,"levels":[[...],...]}`.
 *
 * # Safety
 * `t` is a live tree handle; `out` is writable. Free the result with [`pl_string_free`].
 */
PlStatus pl_tree_to_json(const PlTree *t, char **out);

/**
 * # Safety
 * `t` is null or a handle from this library, not yet freed.
 */
void pl_tree_free(PlTree *t);

/**
 * A level coloring from its JSON form.
 *
 * # Safety
 * `json` is a nul-terminated string; `out` is writable.
 */
PlStatus pl_coloring_from_json(const char *json, PlColoring **out);

/**
 * A seeded coloring of `arity`-sets of levels `0..=depth`.
 *
 * # Safety
 * `out` is writable.
 */
PlStatus pl_coloring_seeded(uint64_t seed,
                            size_t arity,
                            uint32_t colors,
                            size_t depth,
                            PlColoring **out);

/**
 * # Safety
 * `d` is null or a handle from this library, not yet freed.
 */
void pl_coloring_free(PlColoring *d);

/**
 * Search for a certificate with `m` common split levels. On success the
 * certificate JSON is written to `out`; `PL_STATUS_NOT_FOUND` and
 * `PL_STATUS_CAP_EXCEEDED` report the other outcomes. `max_nodes = 0` uses
 * the default budget.
 *
 * # Safety
 * `d` is a live coloring handle; `out` is writable. Free the result with [`pl_string_free`].
 */
PlStatus pl_hl_search(const PlColoring *d, size_t m, uint64_t max_nodes, char **out);

/**
 * Check a certificate against `d`. A failing certificate gives
 * `PL_STATUS_VERIFICATION_FAILED` with the counterexample in the error message.
 *
 * # Safety
 * `d` is a live coloring handle; `cert_json` is a nul-terminated string.
 */
PlStatus pl_hl_verify(const PlColoring *d, const char *cert_json);

#endif  /* PARTLAB_H */
