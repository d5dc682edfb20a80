/* C interface to the heckeint library. Every call returns an hki_status;
 * on failure hki_last_error() holds the message for the calling thread.
 * Strings returned through char** are owned by the caller: hki_string_free. */
#ifndef HECKEINT_H
#define HECKEINT_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum {
  HKI_OK = 0,
  HKI_E_INVALID = 1,
  HKI_E_PARSE = 2,
  HKI_E_SINGULAR = 3,
  HKI_E_CAP = 4,
  HKI_E_MISSING = 5,
  HKI_E_VERIFY = 6,
  HKI_E_INTERNAL = 7
} hki_status;

typedef struct hki_qexp hki_qexp;
typedef struct hki_hilbert hki_hilbert;

const char* hki_version(void);
const char* hki_last_error(void);
void hki_string_free(char* s);

/* ---- q-expansions (QEXP text format) ---- */
hki_status hki_qexp_parse(const char* text, hki_qexp** out);
hki_status hki_qexp_read(const char* path, hki_qexp** out);
hki_status hki_qexp_write(const hki_qexp* f, const char* path);
hki_status hki_qexp_to_string(const hki_qexp* f, char** out);
hki_status hki_qexp_info(const hki_qexp* f, int* n, int64_t* level, size_t* stored);
void hki_qexp_free(hki_qexp* f);

/* ---- coset systems ----
 * j < 0: V_N(p^delta); j >= 0: the T_{j,n-j}(p^2) system (delta ignored).
 * One representative per line, 2n x 2n rows separated by " ; ". */
hki_status hki_cosets(int n, int64_t p, int delta, int64_t level, int j, int64_t seed, char** out, size_t* count);

/* ---- Gauss sums ----
 * g: n*n entries of 2S (row-major), d: n*n entries of D. */
typedef enum { HKI_GAUSS_BRUTE = 0, HKI_GAUSS_CLOSED = 1, HKI_GAUSS_LITERAL = 2, HKI_GAUSS_DIVISOR = 3 } hki_gauss_method;
hki_status hki_gauss(int n, const int64_t* g, const int64_t* d, hki_gauss_method method, char** value);

/* ---- Hecke operators ---- */
typedef struct {
  int64_t seed;
  int normalize;      /* multiply by p^norm_factor */
  unsigned threads;   /* 0: hardware concurrency */
  int cross_check;    /* evaluate Gauss sums both ways */
} hki_hecke_options;

void hki_hecke_options_default(hki_hecke_options* opt);
/* j < 0: T(p^delta); j >= 0: T_{j,n-j}(p^2). */
hki_status hki_apply(const hki_qexp* f, int64_t p, int delta, int j, int64_t trace_out,
                     const hki_hecke_options* opt, hki_qexp** out);
/* Indices ("g11 g12 ... gnn" per line) the operator reads for outputs up to trace_out. */
hki_status hki_needed(const hki_qexp* f, int64_t p, int delta, int j, int64_t trace_out, char** out);
int hki_norm_factor(int n, int kn, int tj, int delta);

/* ---- corpus ---- */
hki_status hki_corpus_eisenstein(int k, int64_t trace, hki_qexp** out);
hki_status hki_corpus_delta(int64_t trace, hki_qexp** out);
/* Degree-n E8 theta series on every class up to `trace`; with hecke_p > 0 also on
 * every index T(p) and T_j(p^2) read for those outputs. */
hki_status hki_corpus_theta_e8(int n, int64_t trace, int64_t hecke_p, const char* cache_dir, hki_qexp** out);

/* ---- integrality ----
 * Images of the basis under the operator are computed up to trace_out and
 * the certificate is built on the shared indices. verdict: 1 integral. */
hki_status hki_certify(const hki_qexp* const* basis, size_t count, int64_t p, int delta, int j, int64_t trace_out,
                       const hki_hecke_options* opt, char** certificate, int* verdict);
/* check_Fb, weight-exponent margins and count_E. violations counts failures. */
hki_status hki_bounds(int n_max, int k_max, int64_t count_m, int count_d, char** report, int* violations);

/* ---- Hilbert recursion (HILBERT text format) ---- */
hki_status hki_hilbert_parse(const char* text, hki_hilbert** out);
hki_status hki_hilbert_read(const char* path, hki_hilbert** out);
hki_status hki_hilbert_to_string(const hki_hilbert* h, char** out);
void hki_hilbert_free(hki_hilbert* h);
/* Prime ideal "a b c"; outputs on every ideal of norm <= support_norm. */
hki_status hki_hilbert_hecke(const hki_hilbert* h, const char* prime, int64_t support_norm, hki_hilbert** out);
hki_status hki_hilbert_commute(const hki_hilbert* h, const char* p, const char* q, int64_t support_norm,
                               int* commute);
/* Primes above the rational prime p, one "a b c" per line. */
hki_status hki_hilbert_primes(int64_t d, int64_t p, char** out);

/* ---- acceptance ---- */
typedef void (*hki_criterion_cb)(int id, int passed, const char* line, void* user);
hki_status hki_verify_all(int fast, const char* cache_dir, hki_criterion_cb cb, void* user, int* failures);

#ifdef __cplusplus
}
#endif

#endif
