#ifndef QUANDLE_KIT_H
#define QUANDLE_KIT_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum QkFlavor {
  QK_FLAVOR_RACK = 0,
  QK_FLAVOR_DEGENERATE = 1,
  QK_FLAVOR_QUANDLE = 2,
} QkFlavor;

typedef enum QkSign {
  QK_SIGN_NEG = 0,
  QK_SIGN_POS = 1,
} QkSign;

/*
 Result code of every fallible call.
 */
typedef enum QkStatus {
  QK_STATUS_OK = 0,
  QK_STATUS_NULL_POINTER = 1,
  QK_STATUS_INVALID_UTF8 = 2,
  QK_STATUS_PARSE = 3,
  QK_STATUS_NOT_A_QUANDLE = 4,
  QK_STATUS_INVALID_DIAGRAM = 5,
  QK_STATUS_INVALID_COCHAIN = 6,
  QK_STATUS_UNSUPPORTED = 7,
  QK_STATUS_OVERFLOW = 8,
  QK_STATUS_OUT_OF_RANGE = 9,
  QK_STATUS_INTERNAL = 10,
} QkStatus;

/*
 Opaque 2-cochain handle.
 */
typedef struct QkCochain QkCochain;

/*
 Opaque prepared-diagram handle.
 */
typedef struct QkDiagram QkDiagram;

/*
 Opaque quandle handle.
 */
typedef struct QkQuandle QkQuandle;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/*
 Message of the last failed call on this thread, or NULL.

 The pointer stays valid until the next library call on this thread.
 */
const char *qk_last_error_message(void);

/*
 Releases a string returned by the library.

 # Safety
 `s` must come from this library and not have been freed.
 */
void qk_string_free(char *s);

/*
 Parses `{"n": 3, "table": [[...], ...]}` into a validated quandle.

 # Safety
 `json` must be a NUL-terminated string; `out` must be writable.
 */
enum QkStatus qk_quandle_from_json(const char *json, struct QkQuandle **out);

/*
 Dihedral quandle `i ∗ j = 2j − i mod n`.

 # Safety
 `out` must be writable.
 */
enum QkStatus qk_quandle_dihedral(size_t n, struct QkQuandle **out);

/*
 Trivial quandle `a ∗ b = a`.

 # Safety
 `out` must be writable.
 */
enum QkStatus qk_quandle_trivial(size_t n, struct QkQuandle **out);

/*
 # Safety
 `q` must be NULL or a live handle; it is invalid afterwards.
 */
void qk_quandle_free(struct QkQuandle *q);

/*
 Order of the quandle, or 0 for NULL.

 # Safety
 `q` must be NULL or a live handle.
 */
size_t qk_quandle_order(const struct QkQuandle *q);

/*
 `a ∗ b`.

 # Safety
 `q` must be a live handle; `out` must be writable.
 */
enum QkStatus qk_quandle_op(const struct QkQuandle *q, size_t a, size_t b, size_t *out);

/*
 Number of orbits.

 # Safety
 `q` must be a live handle; `out` must be writable.
 */
enum QkStatus qk_quandle_orbit_count(const struct QkQuandle *q, size_t *out);

/*
 (Co)homology group as JSON `{"group": "Z + Z/2", "free_rank": 1, "torsion": [2]}`.

 # Safety
 `q` must be a live handle, `coeff` a NUL-terminated string such as
 "Z", "Q" or "Z2"; `out` must be writable.
 */
enum QkStatus qk_cohomology_json(const struct QkQuandle *q,
                                 enum QkFlavor flavor,
                                 enum QkSign sign,
                                 size_t degree,
                                 const char *coeff,
                                 bool homology,
                                 char **out);

/*
 2-cocycle basis (over Z) or spanning set (over Z/m) as a JSON array of
 value matrices.

 # Safety
 As for `qk_cohomology_json`.
 */
enum QkStatus qk_cocycle_basis_json(const struct QkQuandle *q,
                                    enum QkSign sign,
                                    const char *coeff,
                                    char **out);

/*
 Parses PD text (`X[a,b,c,d]` and `O[k]` terms) into a diagram.

 # Safety
 `pd` must be a NUL-terminated string; `out` must be writable.
 */
enum QkStatus qk_diagram_from_pd(const char *pd, struct QkDiagram **out);

/*
 Loads a bundled diagram such as "trefoil", "figure8" or "hopf".

 # Safety
 `name` must be a NUL-terminated string; `out` must be writable.
 */
enum QkStatus qk_diagram_from_corpus(const char *name, struct QkDiagram **out);

/*
 # Safety
 `d` must be NULL or a live handle; it is invalid afterwards.
 */
void qk_diagram_free(struct QkDiagram *d);

/*
 Number of crossings, or 0 for NULL.

 # Safety
 `d` must be NULL or a live handle.
 */
size_t qk_diagram_crossing_count(const struct QkDiagram *d);

/*
 Number of arcs, or 0 for NULL.

 # Safety
 `d` must be NULL or a live handle.
 */
size_t qk_diagram_arc_count(const struct QkDiagram *d);

/*
 Number of colorings of `d` by `q`.

 # Safety
 `d`, `q` must be live handles; `out` must be writable.
 */
enum QkStatus qk_coloring_count(const struct QkDiagram *d, const struct QkQuandle *q, size_t *out);

/*
 Parses `{"coeff": "Z", "values": [[...], ...]}` into a 2-cochain.

 # Safety
 `json` must be a NUL-terminated string; `out` must be writable.
 */
enum QkStatus qk_cochain_from_json(const char *json, struct QkCochain **out);

/*
 # Safety
 `c` must be NULL or a live handle; it is invalid afterwards.
 */
void qk_cochain_free(struct QkCochain *c);

/*
 Evaluates the state-sum invariant and returns the result document
 `{"quandle", "diagram", "mode", "coeff", "colorings", "invariant", "trivial"}`.

 Fails with `QK_STATUS_INVALID_COCHAIN` when `phi` is not a 2-cocycle of
 the requested sign.

 # Safety
 All handles must be live; `out` must be writable.
 */
enum QkStatus qk_state_sum_json(const struct QkDiagram *d,
                                const struct QkQuandle *q,
                                const struct QkCochain *phi,
                                enum QkSign mode,
                                char **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* QUANDLE_KIT_H */
