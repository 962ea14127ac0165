#ifndef SZABO_H
#define SZABO_H

/* Generated by cbindgen from src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum SzStatus {
  SZ_STATUS_OK = 0,
  SZ_STATUS_NULL_POINTER = 1,
  SZ_STATUS_INVALID_UTF8 = 2,
  SZ_STATUS_PARSE = 3,
  SZ_STATUS_DOMAIN = 4,
  SZ_STATUS_INAPPLICABLE = 5,
  SZ_STATUS_INTERNAL = 6,
} SzStatus;

/**
 * Family of vector-valued polynomial maps.
 */
typedef struct SzFamily SzFamily;

/**
 * Homogeneous polynomial map into square matrices.
 */
typedef struct SzPolyMap SzPolyMap;

/**
 * Covariant derivative of curvature on a flat model space.
 */
typedef struct SzTensor SzTensor;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failure on this thread. The pointer stays valid until
 * the next failing call on the same thread; do not free it.
 */
const char *sz_last_error_message(void);

void sz_string_free(char *s);

enum SzStatus sz_tensor_from_json(const char *text, struct SzTensor **out);

/**
 * Seeded random tensor satisfying every symmetry.
 */
enum SzStatus sz_tensor_random(uint32_t p, uint32_t q, uint64_t seed, struct SzTensor **out);

enum SzStatus sz_tensor_to_json(const struct SzTensor *t, char **out);

/**
 * Number of violated symmetry equations.
 */
enum SzStatus sz_tensor_check_symmetries(const struct SzTensor *t, size_t *violations);

/**
 * Szabó operator at `vector` (`"1,0,1/2"`), as operator JSON.
 */
enum SzStatus sz_tensor_szabo_at_json(const struct SzTensor *t, const char *vector, char **out);

enum SzStatus sz_tensor_szabo_polymap(const struct SzTensor *t, struct SzPolyMap **out);

void sz_tensor_free(struct SzTensor *t);

enum SzStatus sz_polymap_from_json(const char *text, struct SzPolyMap **out);

enum SzStatus sz_polymap_to_json(const struct SzPolyMap *s, char **out);

/**
 * Writes `n` when the map is in the class of degree `2n+1`, else -1.
 */
enum SzStatus sz_polymap_pclass_member(const struct SzPolyMap *s, int32_t *n);

/**
 * Least power vanishing on the nullcone, or -1 when none up to `m` does.
 */
enum SzStatus sz_polymap_vanishing_order(const struct SzPolyMap *s, int32_t *order);

void sz_polymap_free(struct SzPolyMap *s);

enum SzStatus sz_family_from_json(const char *text, struct SzFamily **out);

/**
 * Dependence degree, or -1 for the zero ideal.
 */
enum SzStatus sz_family_dependence_degree(const struct SzFamily *f, int64_t *k);

void sz_family_free(struct SzFamily *f);

/**
 * 1 for locally symmetric, 0 for inconclusive.
 */
enum SzStatus sz_wolf_verdict(uint32_t p, uint32_t q, int32_t *symmetric);

enum SzStatus sz_wolf_trace_json(uint32_t p, uint32_t q, char **out);

enum SzStatus sz_phi(uint64_t n, uint64_t *out);

/**
 * Proof trace for one rank question. `case` is 1, 2 or 3; `k` is read only
 * by case 3 and `rank_max` only by case 2.
 */
enum SzStatus sz_obstruction_json(uint32_t case_,
                                  uint64_t n,
                                  uint64_t k,
                                  uint64_t r,
                                  uint64_t rank_max,
                                  char **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* SZABO_H */
