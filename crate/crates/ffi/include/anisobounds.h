#ifndef ANISOBOUNDS_H
#define ANISOBOUNDS_H

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Success.
 */
#define ANISO_OK 0

/**
 * Malformed input: bad JSON, bad parameters, null pointers.
 */
#define ANISO_ERR_INVALID_ARGUMENT 1

/**
 * The computation refused: cap exceeded, case out of the ledger, overflow.
 */
#define ANISO_ERR_COMPUTATION 2

/**
 * Opaque handle to a closed finite subgroup of the integer general linear
 * group.
 */
typedef struct AnisoGroup AnisoGroup;

/**
 * Opaque handle to an integer lattice with a finite group action.
 */
typedef struct AnisoLattice AnisoLattice;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the most recent error on this thread, or NULL when the last
 * call succeeded. The pointer stays valid until the next failing call on
 * the same thread; do not free it.
 */
const char *aniso_last_error_message(void);

/**
 * Release a string allocated by this library.
 *
 * # Safety
 * `s` must be a pointer previously returned through an out-parameter of
 * this library, not yet freed; NULL is accepted and ignored.
 */
void aniso_string_free(char *s);

/**
 * Close the generators given as JSON
 * `{"n": 2, "generators": [{"n": 2, "entries": [[0,-1],[1,0]]}]}`
 * and hand back an owned group handle.
 *
 * # Safety
 * `json` must be a valid NUL-terminated string and `out` a valid pointer.
 */
int32_t aniso_group_closure_json(const char *json, uintptr_t cap, struct AnisoGroup **out);

/**
 * Number of elements of the group.
 *
 * # Safety
 * `group` must be a live handle from `aniso_group_closure_json`.
 */
uintptr_t aniso_group_order(const struct AnisoGroup *group);

/**
 * Injectivity of reduction mod m: writes 1 when injective, 0 when a
 * nontrivial kernel element exists.
 *
 * # Safety
 * `group` must be a live handle; `out_injective` a valid pointer.
 */
int32_t aniso_group_minkowski_check(const struct AnisoGroup *group,
                                    uint64_t modulus,
                                    int32_t *out_injective);

/**
 * Release a group handle.
 *
 * # Safety
 * `group` must come from `aniso_group_closure_json` and not be freed twice.
 */
void aniso_group_free(struct AnisoGroup *group);

/**
 * Build a lattice-with-action from JSON
 * `{"rank": 2, "generators": [...]}`.
 *
 * # Safety
 * `json` must be a valid NUL-terminated string and `out` a valid pointer.
 */
int32_t aniso_lattice_new_json(const char *json, struct AnisoLattice **out);

/**
 * Write 1 when the action has no nonzero fixed vector, else 0.
 *
 * # Safety
 * `lattice` must be a live handle; `out` a valid pointer.
 */
int32_t aniso_lattice_is_anisotropic(const struct AnisoLattice *lattice, int32_t *out);

/**
 * Largest exact order of an invariant torsion class with d <= d_max;
 * writes 0 when only the zero class is invariant.
 *
 * # Safety
 * `lattice` must be a live handle; `out_order` a valid pointer.
 */
int32_t aniso_lattice_max_exact_order(const struct AnisoLattice *lattice,
                                      uint64_t d_max,
                                      uint64_t *out_order);

/**
 * Release a lattice handle.
 *
 * # Safety
 * `lattice` must come from `aniso_lattice_new_json` and not be freed twice.
 */
void aniso_lattice_free(struct AnisoLattice *lattice);

/**
 * Bounded search for the maximal finite subgroup order in rank n (1..=3).
 *
 * # Safety
 * `out_order` must be a valid pointer.
 */
int32_t aniso_upsilon_search(uintptr_t n, int64_t entry_bound, uint64_t *out_order);

/**
 * Evaluate a ledger query given as JSON, e.g.
 * `{"case": "quadric", "n": 4, "has_point": false, "char": "zero", "perfect": true}`,
 * and hand back the result as a JSON string.
 *
 * # Safety
 * `json` must be a valid NUL-terminated string and `out_json` valid.
 */
int32_t aniso_bounds_evaluate_json(const char *json, char **out_json);

/**
 * The full citation-annotated ledger as plain text.
 *
 * # Safety
 * `out_text` must be a valid pointer.
 */
int32_t aniso_bounds_table(char **out_text);

/**
 * Verify the defining identities of the characteristic-p algebra; writes 1
 * when every identity holds exactly.
 *
 * # Safety
 * `out_ok` must be a valid pointer.
 */
int32_t aniso_weyl_identity_check(uint64_t p, int32_t *out_ok);

/**
 * Characteristic-2 conic criterion for the element written as a polynomial
 * in `w` over F_{2^k}: writes 1 when the local conic has no rational
 * point, 0 when it splits.
 *
 * # Safety
 * `elem` must be a valid NUL-terminated string; `out_no_point` valid.
 */
int32_t aniso_conic_char2_class(uintptr_t k, const char *elem, int32_t *out_no_point);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* ANISOBOUNDS_H */
