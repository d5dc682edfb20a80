/* Plain C client of the shared library. */
#include <stdio.h>
#include <string.h>

#include "heckeint.h"

static int failures = 0;

#define EXPECT(cond)                                          \
  do {                                                        \
    if (!(cond)) {                                            \
      fprintf(stderr, "%s:%d: %s\n", __FILE__, __LINE__, #cond); \
      ++failures;                                             \
    }                                                         \
  } while (0)

int main(void) {
  hki_qexp *e4 = NULL, *img = NULL, *bad = NULL;
  char* text = NULL;
  int n = 0, verdict = -1;
  int64_t level = 0;
  size_t stored = 0, count = 0;

  EXPECT(hki_version() != NULL);
  EXPECT(hki_corpus_eisenstein(4, 40, &e4) == HKI_OK);
  EXPECT(hki_qexp_info(e4, &n, &level, &stored) == HKI_OK);
  EXPECT(n == 1 && level == 1 && stored == 41);

  hki_hecke_options opt;
  hki_hecke_options_default(&opt);
  EXPECT(hki_apply(e4, 2, 1, -1, 20, &opt, &img) == HKI_OK);
  EXPECT(hki_qexp_to_string(img, &text) == HKI_OK);
  EXPECT(text && strstr(text, "\n2 : 2160\n") != NULL);
  hki_string_free(text);

  const hki_qexp* basis[1] = {e4};
  text = NULL;
  EXPECT(hki_certify(basis, 1, 2, 1, -1, 20, &opt, &text, &verdict) == HKI_OK);
  EXPECT(verdict == 1);
  EXPECT(text && strstr(text, "INTEGRAL: yes") != NULL);
  hki_string_free(text);

  text = NULL;
  EXPECT(hki_cosets(1, 2, 1, 1, -1, 0, &text, &count) == HKI_OK);
  EXPECT(count == 3);
  hki_string_free(text);

  int64_t g[4] = {2, 1, 1, 4}, d[4] = {1, 0, 0, 2};
  text = NULL;
  EXPECT(hki_gauss(2, g, d, HKI_GAUSS_BRUTE, &text) == HKI_OK);
  EXPECT(text && strcmp(text, "2") == 0);
  hki_string_free(text);

  /* error paths */
  EXPECT(hki_qexp_parse("QEXP 9\n", &bad) == HKI_E_PARSE);
  EXPECT(bad == NULL);
  EXPECT(strlen(hki_last_error()) > 0);
  EXPECT(hki_apply(e4, 2, 1, -1, 30, &opt, &img) == HKI_E_MISSING);
  text = NULL;
  EXPECT(hki_cosets(3, 3, 4, 1, -1, 0, &text, &count) == HKI_E_CAP);
  EXPECT(hki_apply(NULL, 2, 1, -1, 5, &opt, &img) == HKI_E_INVALID);
  EXPECT(hki_norm_factor(3, 1, 0, 1) == 3);

  hki_qexp_free(img);
  hki_qexp_free(e4);
  if (failures) fprintf(stderr, "%d failures\n", failures);
  else printf("capi smoke ok\n");
  return failures != 0;
}
