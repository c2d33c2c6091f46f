#ifndef TAMBARA_H
#define TAMBARA_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Status codes; the nonzero values match the command-line exit codes.
 */
typedef enum TambaraStatus {
  TAMBARA_STATUS_OK = 0,
  TAMBARA_STATUS_INPUT_ERROR = 1,
  TAMBARA_STATUS_AXIOM_FAILURE = 2,
  TAMBARA_STATUS_NO_NORMS = 3,
  TAMBARA_STATUS_NOT_CHAIN = 4,
  TAMBARA_STATUS_TIMEOUT = 5,
  TAMBARA_STATUS_NULL_ARGUMENT = 6,
  TAMBARA_STATUS_PANIC = 7,
} TambaraStatus;

/**
 * Opaque functor handle.
 */
typedef struct TambaraFunctor TambaraFunctor;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failed call on this thread, or null.
 * The pointer stays valid until the next call into this library.
 */
const char *tambara_last_error(void);

/**
 * Parses a schema-1 definition.
 *
 * # Safety
 * `json` must be a nul-terminated string and `out` a valid pointer.
 */
enum TambaraStatus tambara_functor_from_json(const char *json, struct TambaraFunctor **out);

/**
 * # Safety
 * `f` must come from this library and not be used afterwards. Null is ignored.
 */
void tambara_functor_free(struct TambaraFunctor *f);

/**
 * # Safety
 * `s` must come from this library. Null is ignored.
 */
void tambara_string_free(char *s);

/**
 * Explicit schema-1 JSON for the functor.
 *
 * # Safety
 * `f` must be a live handle and `out` a valid pointer.
 */
enum TambaraStatus tambara_functor_to_json(const struct TambaraFunctor *f, char **out);

/**
 * Number of elements of the level at `subgroup`, or 0 if the id does not
 * name a subgroup of the base.
 *
 * # Safety
 * `f` must be a live handle and `subgroup` a nul-terminated string.
 */
size_t tambara_functor_level_size(const struct TambaraFunctor *f, const char *subgroup);

/**
 * Runs every axiom family. Returns `Ok` or `AxiomFailure`; the per-family
 * report is written to `report` either way.
 *
 * # Safety
 * `f` must be a live handle and `report` a valid pointer.
 */
enum TambaraStatus tambara_functor_check(const struct TambaraFunctor *f,
                                         size_t fiber_bound,
                                         char **report);

/**
 * Product decomposition as schema-1 JSON with a `witness` block.
 *
 * # Safety
 * `f` must be a live handle and `out` a valid pointer.
 */
enum TambaraStatus tambara_functor_decompose(const struct TambaraFunctor *f, char **out);

/**
 * Clarification at `lambda` (`"all"` or a subgroup id) as a new handle.
 *
 * # Safety
 * `f` must be a live handle, `lambda` a nul-terminated string and `out` a valid pointer.
 */
enum TambaraStatus tambara_functor_clarify(const struct TambaraFunctor *f,
                                           const char *lambda,
                                           struct TambaraFunctor **out);

/**
 * Lewis diagram over the subgroup chain of the base.
 *
 * # Safety
 * `f` must be a live handle and `out` a valid pointer.
 */
enum TambaraStatus tambara_functor_lewis(const struct TambaraFunctor *f, char **out);

/**
 * Sets `*isomorphic` to 1 if an isomorphism `a → b` exists within `budget`
 * search nodes and to 0 otherwise.
 *
 * # Safety
 * `a` and `b` must be live handles and `isomorphic` a valid pointer.
 */
enum TambaraStatus tambara_functor_isomorphic(const struct TambaraFunctor *a,
                                              const struct TambaraFunctor *b,
                                              uint64_t budget,
                                              int32_t *isomorphic);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* TAMBARA_H */
