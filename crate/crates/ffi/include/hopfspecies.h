#ifndef HOPFSPECIES_H
#define HOPFSPECIES_H

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum HsStatus {
  HS_STATUS_OK = 0,
  HS_STATUS_NULL_POINTER = 1,
  HS_STATUS_INVALID_UTF8 = 2,
  HS_STATUS_PARSE = 3,
  HS_STATUS_DOMAIN = 4,
  HS_STATUS_CAPACITY = 5,
  HS_STATUS_NOT_INVERTIBLE = 6,
  HS_STATUS_WRONG_KIND = 7,
  HS_STATUS_PANIC = 8,
} HsStatus;

/**
 * A block graph.
 */
typedef struct HsGraph HsGraph;

/**
 * A finite topology (quasi-poset).
 */
typedef struct HsPoset HsPoset;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Parses `{"blocks": [...], "edges": [...]}` into a new handle.
 *
 * # Safety
 * `json` must be a NUL-terminated string and `out` a valid pointer.
 */
enum HsStatus hs_graph_from_json(const char *json, struct HsGraph **out);

/**
 * # Safety
 * `g` must come from [`hs_graph_from_json`] and not be used afterwards.
 */
void hs_graph_free(struct HsGraph *g);

/**
 * Parses `{"classes": [...], "covers": [...]}` into a new handle.
 *
 * # Safety
 * `json` must be a NUL-terminated string and `out` a valid pointer.
 */
enum HsStatus hs_poset_from_json(const char *json, struct HsPoset **out);

/**
 * # Safety
 * `t` must come from [`hs_poset_from_json`] and not be used afterwards.
 */
void hs_poset_free(struct HsPoset *t);

/**
 * Chromatic polynomial as `{"coeffs": [...]}`, low degree first. `q` is
 * rational text such as `"1"` or `"-1/2"`.
 *
 * # Safety
 * Pointers must be valid; `*out` must be released with [`hs_string_free`].
 */
enum HsStatus hs_chromatic(const struct HsGraph *g, const char *q, char **out);

/**
 * Ehrhart polynomial as `{"coeffs": [...]}`.
 *
 * # Safety
 * As [`hs_chromatic`].
 */
enum HsStatus hs_ehrhart(const struct HsPoset *t, const char *q, char **out);

/**
 * `φ_chr_q(g)` as `[{"coeff", "key"}]` over set compositions.
 *
 * # Safety
 * As [`hs_chromatic`].
 */
enum HsStatus hs_phi_chr(const struct HsGraph *g, const char *q, char **out);

/**
 * `φ_ehr_q(t)` as `[{"coeff", "key"}]` over set compositions.
 *
 * # Safety
 * As [`hs_chromatic`].
 */
enum HsStatus hs_phi_ehr(const struct HsPoset *t, const char *q, char **out);

/**
 * Number of acyclic orientations.
 *
 * # Safety
 * `g` and `out` must be valid.
 */
enum HsStatus hs_acyclic_orientations(const struct HsGraph *g, uint64_t *out);

/**
 * Number of heap orders (linear extensions bijective on classes).
 *
 * # Safety
 * `t` and `out` must be valid.
 */
enum HsStatus hs_heap_orders(const struct HsPoset *t, uint64_t *out);

/**
 * # Safety
 * `s` must come from this library and not be used afterwards.
 */
void hs_string_free(char *s);

/**
 * Message of the last failed call on this thread, or NULL. Valid until the
 * next call into the library on the same thread.
 */
const char *hs_last_error(void);

/**
 * Library version, static storage.
 */
const char *hs_version(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* HOPFSPECIES_H */
