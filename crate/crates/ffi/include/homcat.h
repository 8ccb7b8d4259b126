#ifndef HOMCAT_H
#define HOMCAT_H

/* Generated by cbindgen from src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Category of a translate or sequence.
 */
typedef enum HomcatCategory {
  HOMCAT_CATEGORY_R = 0,
  HOMCAT_CATEGORY_H = 1,
  HOMCAT_CATEGORY_G = 2,
  HOMCAT_CATEGORY_E = 3,
} HomcatCategory;

/**
 * Which trivial summands `homcat_object_red` deletes.
 */
typedef enum HomcatRedContext {
  /**
   * `(R → R)` and `(0 → R)`
   */
  HOMCAT_RED_CONTEXT_M = 0,
  /**
   * `(R → R)` and `(R → 0)`
   */
  HOMCAT_RED_CONTEXT_E = 1,
} HomcatRedContext;

/**
 * Outcome of a call.
 */
typedef enum HomcatStatus {
  HOMCAT_STATUS_OK = 0,
  /**
   * Malformed input: bad JSON, wrong shapes, failed axioms.
   */
  HOMCAT_STATUS_INPUT = 2,
  /**
   * The operation is not defined for this input.
   */
  HOMCAT_STATUS_PRECONDITION = 3,
  /**
   * The engine does not answer this question over the given ring.
   */
  HOMCAT_STATUS_UNSUPPORTED = 4,
  HOMCAT_STATUS_INTERNAL = 5,
  HOMCAT_STATUS_NULL_ARGUMENT = 6,
  HOMCAT_STATUS_PANIC = 7,
} HomcatStatus;

/**
 * A module over a ring.
 */
typedef struct HomcatModule HomcatModule;

/**
 * A homomorphism `f: A → B`, seen as an object of the morphism category.
 */
typedef struct HomcatObject HomcatObject;

/**
 * A finite-dimensional algebra over a prime field.
 */
typedef struct HomcatRing HomcatRing;

typedef struct HomcatRingInfo {
  size_t dim;
  uint32_t p;
  bool commutative;
  bool local;
  bool gorenstein_local;
  bool basic;
  size_t radical_dim;
  size_t socle_dim;
} HomcatRingInfo;

typedef struct HomcatLinkage {
  bool linked;
  bool stable;
  bool ext_vanishes;
  bool lambda_square_iso;
} HomcatLinkage;

typedef struct HomcatObjectInfo {
  size_t dim_a;
  size_t dim_b;
  bool mono;
  bool epi;
  /**
   * Meaningful only when `g_decided` is set.
   */
  bool in_g;
  bool g_decided;
  bool projective;
  bool injective_in_h;
  bool indecomposable;
} HomcatObjectInfo;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * The message of the last failed call on this thread, or an empty string.
 * The pointer stays valid until the next call on the same thread.
 */
const char *homcat_last_error(void);

/**
 * Releases a string returned by this library.
 *
 * # Safety
 * `s` is null or was returned by this library and not yet freed.
 */
void homcat_string_free(char *s);

/**
 * Parses a ring: a JSON table, `{"preset": ...}`, or the string
 * `preset:name,p=..,n=..` given without JSON quoting.
 *
 * # Safety
 * `json` is a NUL-terminated string and `out` is writable.
 */
enum HomcatStatus homcat_ring_new(const char *json, struct HomcatRing **out);

/**
 * # Safety
 * `ring` is null or a live handle from this library.
 */
void homcat_ring_free(struct HomcatRing *ring);

/**
 * # Safety
 * `ring` is a live handle and `out` is writable.
 */
enum HomcatStatus homcat_ring_classify(const struct HomcatRing *ring, struct HomcatRingInfo *out);

/**
 * The triangular matrix ring `T₂(R)`.
 *
 * # Safety
 * `ring` is a live handle and `out` is writable.
 */
enum HomcatStatus homcat_ring_triangular(const struct HomcatRing *ring, struct HomcatRing **out);

/**
 * The ring as a JSON table.
 *
 * # Safety
 * `ring` is a live handle and `out` is writable.
 */
enum HomcatStatus homcat_ring_to_json(const struct HomcatRing *ring, char **out);

/**
 * Parses a module file's JSON. Ring paths resolve against the working
 * directory.
 *
 * # Safety
 * `json` is a NUL-terminated string and `out` is writable.
 */
enum HomcatStatus homcat_module_new(const char *json, struct HomcatModule **out);

/**
 * # Safety
 * `m` is null or a live handle from this library.
 */
void homcat_module_free(struct HomcatModule *m);

/**
 * Dimension over the ground field, or 0 for a null handle.
 *
 * # Safety
 * `m` is null or a live handle.
 */
size_t homcat_module_dim(const struct HomcatModule *m);

/**
 * # Safety
 * `m` is a live handle and `out` is writable.
 */
enum HomcatStatus homcat_module_to_json(const struct HomcatModule *m, char **out);

/**
 * Number of indecomposable summands, counted with multiplicity.
 *
 * # Safety
 * `m` is a live handle and `out` is writable.
 */
enum HomcatStatus homcat_module_summand_count(const struct HomcatModule *m, size_t *out);

/**
 * # Safety
 * `m` is a live handle and `out` is writable.
 */
enum HomcatStatus homcat_module_syzygy(const struct HomcatModule *m,
                                       size_t i,
                                       struct HomcatModule **out);

/**
 * The Auslander transpose, a module over the opposite ring.
 *
 * # Safety
 * `m` is a live handle and `out` is writable.
 */
enum HomcatStatus homcat_module_transpose(const struct HomcatModule *m, struct HomcatModule **out);

/**
 * The translate `(Tr M)′`, or its inverse.
 *
 * # Safety
 * `m` is a live handle and `out` is writable.
 */
enum HomcatStatus homcat_module_tau(const struct HomcatModule *m,
                                    bool inverse,
                                    struct HomcatModule **out);

/**
 * # Safety
 * `a` and `b` are live handles and `out` is writable.
 */
enum HomcatStatus homcat_module_is_isomorphic(const struct HomcatModule *a,
                                              const struct HomcatModule *b,
                                              bool *out);

/**
 * # Safety
 * `m` is a live handle and `out` is writable.
 */
enum HomcatStatus homcat_module_linkage(const struct HomcatModule *m, struct HomcatLinkage *out);

/**
 * Parses an object file's JSON (`{"ring", "A", "B", "f"}`).
 *
 * # Safety
 * `json` is a NUL-terminated string and `out` is writable.
 */
enum HomcatStatus homcat_object_new(const char *json, struct HomcatObject **out);

/**
 * # Safety
 * `x` is null or a live handle from this library.
 */
void homcat_object_free(struct HomcatObject *x);

/**
 * # Safety
 * `x` is a live handle and `out` is writable.
 */
enum HomcatStatus homcat_object_to_json(const struct HomcatObject *x, char **out);

/**
 * # Safety
 * `x` is a live handle and `out` is writable.
 */
enum HomcatStatus homcat_object_classify(const struct HomcatObject *x,
                                         struct HomcatObjectInfo *out);

/**
 * # Safety
 * `a` and `b` are live handles and `out` is writable.
 */
enum HomcatStatus homcat_object_is_isomorphic(const struct HomcatObject *a,
                                              const struct HomcatObject *b,
                                              bool *out);

/**
 * The transpose of a monomorphism. `certified` receives whether the
 * normalized shape and the exactness certificate both hold.
 *
 * # Safety
 * `x` is a live handle; `out` and `certified` are writable.
 */
enum HomcatStatus homcat_object_transpose(const struct HomcatObject *x,
                                          struct HomcatObject **out,
                                          bool *certified);

/**
 * Deletes trivial summands.
 *
 * # Safety
 * `x` is a live handle and `out` is writable.
 */
enum HomcatStatus homcat_object_red(const struct HomcatObject *x,
                                    enum HomcatRedContext ctx,
                                    struct HomcatObject **out);

/**
 * The minimal right approximation by monomorphisms.
 *
 * # Safety
 * `x` is a live handle and `out` is writable.
 */
enum HomcatStatus homcat_object_g_cover(const struct HomcatObject *x, struct HomcatObject **out);

/**
 * The minimal left approximation by epimorphisms.
 *
 * # Safety
 * `x` is a live handle and `out` is writable.
 */
enum HomcatStatus homcat_object_e_envelope(const struct HomcatObject *x, struct HomcatObject **out);

/**
 * The translate of an object in `H`, `G` or `E`.
 *
 * # Safety
 * `x` is a live handle and `out` is writable.
 */
enum HomcatStatus homcat_object_tau(const struct HomcatObject *x,
                                    enum HomcatCategory cat,
                                    bool inverse,
                                    struct HomcatObject **out);

/**
 * The almost split sequence in `cat` ending at a module (`cat = R`) or an
 * object, verified against a generated corpus, as sequence JSON.
 * Exactly one of `end_module` and `end_object` must be non-null.
 * `all_ok` receives the verdict of the verification.
 *
 * # Safety
 * The handles are null or live; `out` and `all_ok` are writable.
 */
enum HomcatStatus homcat_almost_split_sequence(const struct HomcatModule *end_module,
                                               const struct HomcatObject *end_object,
                                               enum HomcatCategory cat,
                                               uint64_t seed,
                                               char **out,
                                               bool *all_ok);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* HOMCAT_H */
