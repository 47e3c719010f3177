/* Minimal consumer of the gqm C ABI: builds GF(4), does a little arithmetic,
 * pulls the singlet correlation table as JSON, and checks the q = 1 report.
 * Exits nonzero on any mismatch; used by the FFI test suite and as a
 * starting point for bindings.
 */

#include <stdio.h>
#include <string.h>

#include "gqm.h"

static int fail(const char *what, int32_t status) {
  fprintf(stderr, "%s failed: %s (%d)\n", what, gqm_status_message(status), status);
  return 1;
}

int main(void) {
  GqmField *field = NULL;
  int32_t status = gqm_field_new(2, 2, &field);
  if (status != GQM_OK) return fail("gqm_field_new", status);

  uint64_t q = 0;
  if ((status = gqm_field_order(field, &q)) != GQM_OK) return fail("order", status);
  if (q != 4) {
    fprintf(stderr, "expected order 4, got %llu\n", (unsigned long long)q);
    return 1;
  }

  /* a * a = a + 1 under encodings 0, 1, a = 2, a + 1 = 3 */
  uint64_t out = 0;
  if ((status = gqm_field_mul(field, 2, 2, &out)) != GQM_OK) return fail("mul", status);
  if (out != 3) {
    fprintf(stderr, "a*a: expected 3, got %llu\n", (unsigned long long)out);
    return 1;
  }
  if (gqm_field_inv(field, 0, &out) != GQM_ERR_DOMAIN) {
    fprintf(stderr, "inverting zero must be a domain error\n");
    return 1;
  }

  char *text = NULL;
  if ((status = gqm_field_element_str(field, 3, &text)) != GQM_OK)
    return fail("element_str", status);
  if (strcmp(text, "a+1") != 0) {
    fprintf(stderr, "display: expected a+1, got %s\n", text);
    return 1;
  }
  gqm_string_free(text);
  gqm_field_free(field);

  char *json = NULL;
  if ((status = gqm_table1_json(3, &json)) != GQM_OK) return fail("table1", status);
  if (strstr(json, "\"ev\": \"-1\"") == NULL) {
    fprintf(stderr, "table1 json misses the first expectation value\n");
    return 1;
  }
  gqm_string_free(json);

  if ((status = gqm_fun_json(3, &json)) != GQM_OK) return fail("fun", status);
  if (strstr(json, "\"automorphism_order\": 6") == NULL) {
    fprintf(stderr, "fun json misses the automorphism order\n");
    return 1;
  }
  gqm_string_free(json);

  printf("gqm %s: C ABI demo passed\n", gqm_version());
  return 0;
}
