/* C ABI for the gqm library.
 *
 * Conventions:
 *   - Fallible calls return a GqmStatus and write results through out
 *     pointers, which are left untouched on failure.
 *   - GqmField is an opaque handle; release it with gqm_field_free.
 *   - Field elements are passed as integer encodings 0 <= enc < q in the
 *     library's enumeration order (0 is the zero element, 1 is one).
 *   - Strings returned through char** are NUL-terminated UTF-8 allocated by
 *     the library; release them with gqm_string_free. Strings returned as
 *     const char* are static and must not be freed.
 *   - *_json calls emit the same documents as the CLI's --format json.
 *     Rationals appear as "num/den" strings, never floats.
 */

#ifndef GQM_H
#define GQM_H

#include <stdbool.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef struct GqmField GqmField;

/* Status codes. */
enum GqmStatus {
  GQM_OK = 0,
  GQM_ERR_NULL_POINTER = 1,
  GQM_ERR_INVALID_ARGUMENT = 2,
  GQM_ERR_DOMAIN = 3,
  GQM_ERR_UTF8 = 4,
  GQM_ERR_INTERNAL = 5,
};

/* Library version (static string, do not free). */
const char *gqm_version(void);

/* Static description of a status code (do not free). */
const char *gqm_status_message(int32_t status);

/* Release a string allocated by this library. NULL is ignored. */
void gqm_string_free(char *s);

/* ---- field handles ---------------------------------------------------- */

/* Construct GF(p^n) deterministically. */
int32_t gqm_field_new(uint64_t p, uint32_t n, GqmField **out);

/* Construct GF(q) from a prime power q. */
int32_t gqm_field_from_order(uint64_t q, GqmField **out);

/* Release a handle. NULL is ignored. */
void gqm_field_free(GqmField *field);

int32_t gqm_field_order(const GqmField *field, uint64_t *out);
int32_t gqm_field_characteristic(const GqmField *field, uint64_t *out);
int32_t gqm_field_degree(const GqmField *field, uint32_t *out);

/* Encoding of the multiplicative generator. */
int32_t gqm_field_generator(const GqmField *field, uint64_t *out);

/* ---- element arithmetic (by encoding) --------------------------------- */

int32_t gqm_field_add(const GqmField *field, uint64_t a, uint64_t b, uint64_t *out);
int32_t gqm_field_sub(const GqmField *field, uint64_t a, uint64_t b, uint64_t *out);
int32_t gqm_field_mul(const GqmField *field, uint64_t a, uint64_t b, uint64_t *out);
int32_t gqm_field_neg(const GqmField *field, uint64_t a, uint64_t *out);

/* GQM_ERR_DOMAIN when a = 0. */
int32_t gqm_field_inv(const GqmField *field, uint64_t a, uint64_t *out);

/* a^k; negative k goes through the inverse. */
int32_t gqm_field_pow(const GqmField *field, uint64_t a, int64_t k, uint64_t *out);

/* Display form of an element, e.g. "a+1". Free with gqm_string_free. */
int32_t gqm_field_element_str(const GqmField *field, uint64_t a, char **out);

/* ---- JSON reports ------------------------------------------------------ */

/* Field construction data; list_elements adds the element table. */
int32_t gqm_field_json(uint64_t q, bool list_elements, char **out);

/* q-analog counts for ambient dimension n; check_oracle re-counts subspaces
 * by exhaustive enumeration. */
int32_t gqm_counts_json(uint64_t q, uint64_t n, bool check_oracle, char **out);

/* Points of PG(dim-1, q); dim = 2 adds the indexed kets and bras. */
int32_t gqm_states_json(uint64_t q, uint32_t dim, char **out);

/* Single-spin probability table. Pass r = s = -1 for the generic pattern
 * rows, or concrete indices for one observable. */
int32_t gqm_probs_json(uint64_t q, int64_t r, int64_t s, char **out);

/* The singlet correlation table. */
int32_t gqm_table1_json(uint64_t q, char **out);

/* CHSH sweep on the singlet, or over every entangled state. */
int32_t gqm_chsh_json(uint64_t q, bool all_states, char **out);

/* LHV feasibility of a joint table in the JSON wire form:
 * {"m1":2,"m2":2,"pairs":{"i,j":{"pp":"1/4","pm":"1/4","mp":"1/4","mm":"1/4"}}}
 * with 0-based "i,j" keys covering every pair. */
int32_t gqm_lhv_table_json(const char *table_json, char **out);

/* LHV feasibility of a field-model state: state_kind 0 = singlet,
 * 1 = product state with the given census index. */
int32_t gqm_lhv_gqm_json(uint64_t q, int32_t state_kind, uint64_t product_index, char **out);

/* The q = 1 limit report for an N-point space. */
int32_t gqm_fun_json(uint32_t n, char **out);

/* Run every reproduction check that applies at field order q. all_passed may
 * be NULL. Exits with GQM_ERR_INVALID_ARGUMENT when q is not a prime power. */
int32_t gqm_verify_all_json(uint64_t q, bool *all_passed, char **out);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* GQM_H */
