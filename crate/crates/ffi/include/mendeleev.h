#ifndef MENDELEEV_H
#define MENDELEEV_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Bits for `algebra_mask` in [`mdl_shortest_path_len`].
 */
#define MDL_MOVE_SO3XSU2 1

#define MDL_MOVE_SO4XSU2 2

#define MDL_MOVE_SO21 4

#define MDL_MOVE_SO42XSU2 8

typedef enum MdlStatus {
  MDL_STATUS_OK = 0,
  MDL_STATUS_NULL_POINTER = 1,
  MDL_STATUS_INVALID_QUARTET = 2,
  MDL_STATUS_DOMAIN = 3,
  MDL_STATUS_PARSE = 4,
  MDL_STATUS_FIT = 5,
  MDL_STATUS_IO = 6,
  MDL_STATUS_UNREACHABLE = 7,
  MDL_STATUS_PANIC = 8,
} MdlStatus;

typedef enum MdlFamily {
  MDL_FAMILY_ALKALI_METAL = 0,
  MDL_FAMILY_ALKALINE_EARTH = 1,
  MDL_FAMILY_CHALCOGEN = 2,
  MDL_FAMILY_HALOGEN = 3,
  MDL_FAMILY_NOBLE_GAS = 4,
  MDL_FAMILY_OTHER = 5,
} MdlFamily;

typedef enum MdlElementStatus {
  MDL_ELEMENT_STATUS_NAMED_OBSERVED = 0,
  MDL_ELEMENT_STATUS_OBSERVED_UNNAMED = 1,
  MDL_ELEMENT_STATUS_UNOBSERVED = 2,
} MdlElementStatus;

/**
 * Opaque fitted model.
 */
typedef struct MdlModel MdlModel;

/**
 * Opaque element registry.
 */
typedef struct MdlRegistry MdlRegistry;

/**
 * Quartet `(n, l, j, m)` with `j` and `m` doubled.
 */
typedef struct MdlQuartet {
  uint32_t n;
  uint32_t l;
  uint32_t j2;
  int32_t m2;
} MdlQuartet;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failure on this thread, or NULL. The pointer stays
 * valid until the next failing call on the same thread.
 */
const char *mdl_last_error(void);

/**
 * Releases a string returned by this library.
 *
 * # Safety
 * `text` must come from this library and not have been freed already.
 */
void mdl_string_free(char *text);

/**
 * # Safety
 * `out_z` must be a valid pointer.
 */
enum MdlStatus mdl_z_of(struct MdlQuartet q, uint64_t *out_z);

/**
 * # Safety
 * `out` must be a valid pointer.
 */
enum MdlStatus mdl_quartet_of(uint64_t z, struct MdlQuartet *out);

/**
 * # Safety
 * `out` must be a valid pointer.
 */
enum MdlStatus mdl_family_of(struct MdlQuartet q, enum MdlFamily *out);

/**
 * Idealized configuration of element `z` in conventional notation
 * (`1s2 2s2 2p6 ...`). Free the result with [`mdl_string_free`].
 *
 * # Safety
 * `out` must be a valid pointer.
 */
enum MdlStatus mdl_configuration(uint64_t z, char **out);

/**
 * Number of steps on a shortest path between two cells using the algebras
 * in `algebra_mask` (`MDL_MOVE_*` bits), visiting only cells with
 * `Z <= max_z`. Returns `MdlStatus::Unreachable` when no path exists.
 *
 * # Safety
 * `out_steps` must be a valid pointer.
 */
enum MdlStatus mdl_shortest_path_len(struct MdlQuartet from,
                                     struct MdlQuartet to,
                                     uint32_t algebra_mask,
                                     uint64_t max_z,
                                     size_t *out_steps);

/**
 * The built-in 2006 registry snapshot. Release with [`mdl_registry_free`].
 */
struct MdlRegistry *mdl_registry_snapshot(void);

/**
 * Loads a registry CSV (`z,symbol,name,status`).
 *
 * # Safety
 * `path` must be a NUL-terminated string and `out` a valid pointer.
 */
enum MdlStatus mdl_registry_load(const char *path, struct MdlRegistry **out);

/**
 * # Safety
 * `registry` must come from this library and not be used afterwards.
 */
void mdl_registry_free(struct MdlRegistry *registry);

/**
 * # Safety
 * `registry` must be a live handle and `out` a valid pointer.
 */
enum MdlStatus mdl_registry_status(const struct MdlRegistry *registry,
                                   uint64_t z,
                                   enum MdlElementStatus *out);

/**
 * Symbol of element `z`, or NULL in `*out` when the element has none.
 * Free a non-NULL result with [`mdl_string_free`].
 *
 * # Safety
 * `registry` must be a live handle and `out` a valid pointer.
 */
enum MdlStatus mdl_registry_symbol(const struct MdlRegistry *registry, uint64_t z, char **out);

/**
 * Fits `values[i]` at atomic numbers `zs[i]` over the comma-separated
 * `basis` (NULL for the default basis). Release with [`mdl_model_free`].
 *
 * # Safety
 * `zs` and `values` must point to `len` elements; `out` must be valid.
 */
enum MdlStatus mdl_fit(const uint64_t *zs,
                       const double *values,
                       size_t len,
                       const char *basis,
                       double ridge,
                       bool allow_rank_deficient,
                       struct MdlModel **out);

/**
 * Loads a model written by `mendeleev fit --out`.
 *
 * # Safety
 * `path` must be a NUL-terminated string and `out` a valid pointer.
 */
enum MdlStatus mdl_model_load(const char *path, struct MdlModel **out);

/**
 * # Safety
 * `model` must be a live handle and `out` a valid pointer.
 */
enum MdlStatus mdl_model_predict(const struct MdlModel *model, uint64_t z, double *out);

/**
 * Residual sum of squares of the fit.
 *
 * # Safety
 * `model` must be a live handle and `out` a valid pointer.
 */
enum MdlStatus mdl_model_rss(const struct MdlModel *model, double *out);

/**
 * # Safety
 * `model` must come from this library and not be used afterwards.
 */
void mdl_model_free(struct MdlModel *model);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* MENDELEEV_H */
