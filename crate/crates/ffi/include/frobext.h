#ifndef FROBEXT_H
#define FROBEXT_H

/* Generated by cbindgen; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Status codes returned by every fallible function.
 */
typedef enum FrobStatus {
  FROB_STATUS_OK = 0,
  FROB_STATUS_NULL_POINTER = -1,
  FROB_STATUS_INPUT = -2,
  FROB_STATUS_RESOURCE = -3,
  FROB_STATUS_CONDITION = -4,
  FROB_STATUS_INTERNAL = -5,
  FROB_STATUS_PANIC = -6,
  FROB_STATUS_UTF8 = -7,
} FrobStatus;

/**
 * The character bimodule of a ring, with its generating character.
 */
typedef struct FrobBimodule FrobBimodule;

/**
 * A finite ring.
 */
typedef struct FrobRing FrobRing;

/**
 * A weight on a bimodule.
 */
typedef struct FrobWeight FrobWeight;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failed call on this thread, or null. The pointer is
 * valid until the next failing call on the same thread.
 */
const char *frob_last_error_message(void);

/**
 * Builds a ring from a JSON description (`{"kind": "zn", "n": 4}` etc.).
 *
 * # Safety
 * `json` must be a nul-terminated string; `out` must be writable.
 */
enum FrobStatus frob_ring_from_json(const char *json, struct FrobRing **out);

/**
 * # Safety
 * `ring` must come from `frob_ring_from_json` and not be freed twice.
 */
void frob_ring_free(struct FrobRing *ring);

/**
 * # Safety
 * `ring` must be a live handle; `out` must be writable.
 */
enum FrobStatus frob_ring_size(const struct FrobRing *ring, size_t *out);

/**
 * # Safety
 * `ring` must be a live handle; `out` must be writable.
 */
enum FrobStatus frob_ring_unit_count(const struct FrobRing *ring, size_t *out);

/**
 * Whether the ring admits a generating character.
 *
 * # Safety
 * `ring` must be a live handle; `out` must be writable.
 */
enum FrobStatus frob_ring_is_frobenius(const struct FrobRing *ring, bool *out);

/**
 * Builds the character bimodule of `ring`.
 *
 * # Safety
 * `ring` must be a live handle; `out` must be writable.
 */
enum FrobStatus frob_bimodule_new(const struct FrobRing *ring, struct FrobBimodule **out);

/**
 * # Safety
 * `module` must come from `frob_bimodule_new` and not be freed twice.
 */
void frob_bimodule_free(struct FrobBimodule *module);

/**
 * Reads a weight table: a JSON object mapping element labels to integers
 * or rational strings.
 *
 * # Safety
 * `module` must be a live handle, `json` nul-terminated, `out` writable.
 */
enum FrobStatus frob_weight_from_json(const struct FrobBimodule *module,
                                      const char *json,
                                      struct FrobWeight **out);

/**
 * The homogeneous weight of `module`.
 *
 * # Safety
 * `module` must be a live handle; `out` must be writable.
 */
enum FrobStatus frob_weight_homogeneous(const struct FrobBimodule *module, struct FrobWeight **out);

/**
 * # Safety
 * `weight` must come from this library and not be freed twice.
 */
void frob_weight_free(struct FrobWeight *weight);

/**
 * Whether the weight satisfies the submodule condition.
 *
 * # Safety
 * `weight` must be a live handle; `holds` must be writable.
 */
enum FrobStatus frob_check_condition(const struct FrobWeight *weight, bool *holds);

/**
 * The full extension certificate as JSON.
 *
 * # Safety
 * `weight` must be a live handle; `out_json` must be writable.
 */
enum FrobStatus frob_certify_json(const struct FrobWeight *weight, char **out_json);

/**
 * Möbius table rows `(representative, size, mu)` as JSON.
 *
 * # Safety
 * `module` must be a live handle; `out_json` must be writable.
 */
enum FrobStatus frob_mobius_json(const struct FrobBimodule *module, char **out_json);

/**
 * # Safety
 * `s` must come from this library and not be freed twice.
 */
void frob_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* FROBEXT_H */
