#ifndef EIGENRING_H
#define EIGENRING_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum EigStatus {
  EIG_STATUS_OK = 0,
  EIG_STATUS_INVALID_INPUT = 1,
  EIG_STATUS_OVER_BUDGET = 2,
  EIG_STATUS_NOT_APPLICABLE = 3,
  EIG_STATUS_CONTRACT = 4,
  EIG_STATUS_INTERNAL = 5,
} EigStatus;

/**
 * An algebra over a prime field.
 */
typedef struct EigAlgebra EigAlgebra;

/**
 * A right module over an [`EigAlgebra`].
 */
typedef struct EigModule EigModule;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failed call on this thread, or null. Valid until the
 * next failing call on the same thread.
 */
const char *eig_last_error(void);

/**
 * Algebra from its structure-constant JSON `{"p", "dim", "table", "unit"}`.
 *
 * # Safety
 * `json` must be a NUL-terminated string and `out` a valid pointer.
 */
enum EigStatus eig_algebra_from_json(const char *json, struct EigAlgebra **out_alg);

/**
 * Algebra from a kind-tagged spec such as `{"kind":"matrix","n":2}`.
 *
 * # Safety
 * `spec` must be a NUL-terminated string and `out` a valid pointer.
 */
enum EigStatus eig_algebra_from_spec(uint32_t p, const char *spec, struct EigAlgebra **out_alg);

/**
 * # Safety
 * `alg` must come from this library and not be used afterwards.
 */
void eig_algebra_free(struct EigAlgebra *alg);

/**
 * # Safety
 * `alg` must be a live handle and the out-pointers valid.
 */
enum EigStatus eig_algebra_dims(const struct EigAlgebra *alg, uint32_t *p, size_t *dim);

/**
 * Number of maximal right ideals.
 *
 * # Safety
 * `alg` must be a live handle and `count` valid.
 */
enum EigStatus eig_algebra_maximal_right_ideals(const struct EigAlgebra *alg,
                                                uint64_t enumeration,
                                                size_t *count);

/**
 * Module from its JSON spec (`regular`, `idempotent`, `direct_sum`, `action`).
 *
 * # Safety
 * `alg` must be a live handle, `json` NUL-terminated and `out` valid.
 */
enum EigStatus eig_module_from_json(const struct EigAlgebra *alg,
                                    const char *json,
                                    struct EigModule **out_mod);

/**
 * # Safety
 * `m` must come from this library and not be used afterwards.
 */
void eig_module_free(struct EigModule *m);

/**
 * # Safety
 * `m` must be a live handle and `dim` valid.
 */
enum EigStatus eig_module_dim(const struct EigModule *m, size_t *dim);

/**
 * `|Max(M)|`.
 *
 * # Safety
 * `m` must be a live handle and `count` valid.
 */
enum EigStatus eig_module_max_count(const struct EigModule *m, uint64_t enumeration, size_t *count);

/**
 * Composition length.
 *
 * # Safety
 * `m` must be a live handle and `length` valid.
 */
enum EigStatus eig_module_length(const struct EigModule *m, uint64_t enumeration, size_t *length);

/**
 * Projectivity and generator flags.
 *
 * # Safety
 * `m` must be a live handle and the out-pointers valid.
 */
enum EigStatus eig_module_projectivity(const struct EigModule *m,
                                       bool *projective,
                                       bool *generator);

/**
 * `|Maxl(M_n(F_p))|` through Stone's ideals. `crosschecked` is 1 or 0 for
 * agreement with brute force, or -1 when brute force was over budget.
 *
 * # Safety
 * The out-pointers must be valid.
 */
enum EigStatus eig_stone_count(uint32_t p,
                               size_t n,
                               uint64_t enumeration,
                               size_t *count,
                               int32_t *crosschecked);

/**
 * Runs a suite and writes the JSON report to `report`. `corpus` is null for
 * the default corpus, or a JSON instance or array of instances. `failures`
 * receives the number of failed checks.
 *
 * # Safety
 * `suite` must be NUL-terminated, `corpus` null or NUL-terminated, and the
 * out-pointers valid. Free `*report` with [`eig_string_free`].
 */
enum EigStatus eig_verify_json(const char *suite,
                               const char *corpus,
                               uint64_t enumeration,
                               uint64_t seed,
                               char **report,
                               size_t *failures);

/**
 * # Safety
 * `s` must come from this library and not be used afterwards.
 */
void eig_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* EIGENRING_H */
