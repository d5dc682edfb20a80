#include "heckeint.h"

#include <cstdlib>
#include <cstring>
#include <fstream>
#include <new>
#include <set>
#include <sstream>

#include "heckeint/corpus.hpp"
#include "heckeint/hecke.hpp"
#include "heckeint/hilbert.hpp"
#include "heckeint/integrality.hpp"
#include "heckeint/verify.hpp"

using namespace heckeint;

struct hki_qexp {
  QExpansion f;
};

struct hki_hilbert {
  IdealCoeffMap m;
};

namespace {

thread_local std::string g_error;

hki_status status_of(ErrorKind k) {
  switch (k) {
    case ErrorKind::invalid_argument: return HKI_E_INVALID;
    case ErrorKind::parse: return HKI_E_PARSE;
    case ErrorKind::singular: return HKI_E_SINGULAR;
    case ErrorKind::cap_exceeded: return HKI_E_CAP;
    case ErrorKind::missing_indices: return HKI_E_MISSING;
    case ErrorKind::verification: return HKI_E_VERIFY;
    case ErrorKind::internal: return HKI_E_INTERNAL;
  }
  return HKI_E_INTERNAL;
}

template <class F>
hki_status guard(F&& body) {
  g_error.clear();
  try {
    body();
    return HKI_OK;
  } catch (const Error& e) {
    g_error = e.what();
    return status_of(e.kind());
  } catch (const std::bad_alloc&) {
    g_error = "out of memory";
    return HKI_E_CAP;
  } catch (const std::exception& e) {
    g_error = e.what();
    return HKI_E_INTERNAL;
  }
}

void need(const void* p, const char* what) {
  if (!p) fail(ErrorKind::invalid_argument, std::string("null ") + what);
}

char* dup(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

HeckeOptions options(const hki_hecke_options* opt) {
  HeckeOptions h;
  if (!opt) return h;
  h.seed = opt->seed;
  h.normalize = opt->normalize != 0;
  h.threads = opt->threads;
  h.cross_check_gauss = opt->cross_check != 0;
  return h;
}

QExpansion run_op(const QExpansion& f, int64_t p, int delta, int j, int64_t trace, const HeckeOptions& h) {
  return j < 0 ? apply_T(f, p, delta, trace, h) : apply_Tj(f, j, p, trace, h);
}

std::vector<HalfIntMat> needed_for(int n, const std::vector<HalfIntMat>& targets, int64_t p, int delta, int j,
                                   int64_t level, const HeckeOptions& h) {
  return j < 0 ? needed_indices_T(n, targets, p, delta, level, h) : needed_indices_Tj(n, targets, j, p, level, h);
}

std::string op_name(int64_t p, int delta, int j) {
  if (j < 0) return "T(" + std::to_string(p) + (delta == 1 ? "" : "^" + std::to_string(delta)) + ")";
  return "T_" + std::to_string(j) + "(" + std::to_string(p) + "^2)";
}

QuadIdeal parse_ideal(const QuadField& f, const char* text) {
  need(text, "ideal");
  std::istringstream in(text);
  int64_t a = 0, b = 0, c = 0;
  if (!(in >> a >> b >> c)) fail(ErrorKind::parse, std::string("ideal '") + text + "' is not 'a b c'");
  std::string rest;
  if (in >> rest) fail(ErrorKind::parse, std::string("trailing text in ideal '") + text + "'");
  return QuadIdeal(f, a, b, c);
}

}  // namespace

extern "C" {

const char* hki_version(void) { return "1.0.0"; }
const char* hki_last_error(void) { return g_error.c_str(); }
void hki_string_free(char* s) { std::free(s); }

hki_status hki_qexp_parse(const char* text, hki_qexp** out) {
  return guard([&] {
    need(text, "text");
    need(out, "output");
    *out = new hki_qexp{parse_qexp(text)};
  });
}

hki_status hki_qexp_read(const char* path, hki_qexp** out) {
  return guard([&] {
    need(path, "path");
    need(out, "output");
    *out = new hki_qexp{read_qexp_file(path)};
  });
}

hki_status hki_qexp_write(const hki_qexp* f, const char* path) {
  return guard([&] {
    need(f, "expansion");
    need(path, "path");
    write_qexp_file(f->f, path);
  });
}

hki_status hki_qexp_to_string(const hki_qexp* f, char** out) {
  return guard([&] {
    need(f, "expansion");
    need(out, "output");
    *out = dup(write_qexp(f->f));
  });
}

hki_status hki_qexp_info(const hki_qexp* f, int* n, int64_t* level, size_t* stored) {
  return guard([&] {
    need(f, "expansion");
    if (n) *n = f->f.n();
    if (level) *level = f->f.level();
    if (stored) *stored = f->f.coefficients().size();
  });
}

void hki_qexp_free(hki_qexp* f) { delete f; }

hki_status hki_cosets(int n, int64_t p, int delta, int64_t level, int j, int64_t seed, char** out, size_t* count) {
  return guard([&] {
    need(out, "output");
    auto reps = j < 0 ? v_cosets(n, p, delta, level, seed) : tj_cosets(n, j, p, level, seed);
    std::ostringstream os;
    for (const auto& r : reps) {
      const auto& g = r.assembled;
      for (size_t i = 0; i < g.rows(); ++i) {
        if (i) os << " ; ";
        for (size_t k = 0; k < g.cols(); ++k) os << (k ? " " : "") << to_string(g(i, k));
      }
      os << "\n";
    }
    if (count) *count = reps.size();
    *out = dup(os.str());
  });
}

hki_status hki_gauss(int n, const int64_t* g, const int64_t* d, hki_gauss_method method, char** value) {
  return guard([&] {
    need(g, "S");
    need(d, "D");
    need(value, "output");
    require(n >= 1 && n <= 4, "Gauss sums support 1 <= n <= 4");
    size_t m = static_cast<size_t>(n);
    SmallMat sg(m, m);
    IntMat dm(m, m);
    for (size_t i = 0; i < m; ++i)
      for (size_t k = 0; k < m; ++k) {
        sg(i, k) = g[i * m + k];
        dm(i, k) = BigInt(static_cast<long>(d[i * m + k]));
      }
    HalfIntMat s(sg);
    GaussSumResult r;
    switch (method) {
      case HKI_GAUSS_BRUTE: r = gauss_brute(s, dm); break;
      case HKI_GAUSS_CLOSED: r = gauss_closed(s, dm); break;
      case HKI_GAUSS_LITERAL: r = gauss_literal(s, dm); break;
      case HKI_GAUSS_DIVISOR: r = gauss_divisor_rule(s, dm); break;
      default: fail(ErrorKind::invalid_argument, "unknown Gauss sum method");
    }
    *value = dup(to_string(r.value));
  });
}

void hki_hecke_options_default(hki_hecke_options* opt) {
  if (opt) *opt = hki_hecke_options{0, 0, 0, 0};
}

hki_status hki_apply(const hki_qexp* f, int64_t p, int delta, int j, int64_t trace_out,
                     const hki_hecke_options* opt, hki_qexp** out) {
  return guard([&] {
    need(f, "expansion");
    need(out, "output");
    *out = new hki_qexp{run_op(f->f, p, delta, j, trace_out, options(opt))};
  });
}

hki_status hki_needed(const hki_qexp* f, int64_t p, int delta, int j, int64_t trace_out, char** out) {
  return guard([&] {
    need(f, "expansion");
    need(out, "output");
    auto targets = output_indices(f->f, trace_out);
    std::set<HalfIntMat> keys;
    for (const auto& s : needed_for(f->f.n(), targets, p, delta, j, f->f.level(), {})) keys.insert(f->f.key(s));
    std::string text;
    for (const auto& s : keys) text += s.str() + "\n";
    *out = dup(text);
  });
}

int hki_norm_factor(int n, int kn, int tj, int delta) {
  return norm_factor(n, kn, tj ? OperatorKind::t_j : OperatorKind::t_p, delta);
}

hki_status hki_corpus_eisenstein(int k, int64_t trace, hki_qexp** out) {
  return guard([&] {
    need(out, "output");
    *out = new hki_qexp{eisenstein(k, trace)};
  });
}

hki_status hki_corpus_delta(int64_t trace, hki_qexp** out) {
  return guard([&] {
    need(out, "output");
    *out = new hki_qexp{delta(trace)};
  });
}

hki_status hki_corpus_theta_e8(int n, int64_t trace, int64_t hecke_p, const char* cache_dir, hki_qexp** out) {
  return guard([&] {
    need(out, "output");
    require(trace >= 0, "trace bound must be non-negative");
    auto targets = enumerate_indices(n, trace);
    std::set<HalfIntMat> all(targets.begin(), targets.end());
    if (hecke_p > 0) {
      for (const auto& s : needed_indices_T(n, targets, hecke_p, 1, 1)) all.insert(s);
      for (int j = 0; j <= n; ++j)
        for (const auto& s : needed_indices_Tj(n, targets, j, hecke_p, 1)) all.insert(s);
    }
    *out = new hki_qexp{theta_e8(n, {all.begin(), all.end()}, cache_dir ? cache_dir : "")};
  });
}

hki_status hki_certify(const hki_qexp* const* basis, size_t count, int64_t p, int delta, int j, int64_t trace_out,
                       const hki_hecke_options* opt, char** certificate, int* verdict) {
  return guard([&] {
    need(basis, "basis");
    need(certificate, "output");
    require(count >= 1, "certify needs a non-empty basis");
    std::vector<QExpansion> fs, images;
    HeckeOptions h = options(opt);
    for (size_t i = 0; i < count; ++i) {
      need(basis[i], "basis element");
      fs.push_back(basis[i]->f);
      images.push_back(run_op(basis[i]->f, p, delta, j, trace_out, h));
    }
    std::string params = op_name(p, delta, j) + " trace<=" + std::to_string(trace_out) +
                         (h.normalize ? " normalized" : "") + " basis=" + std::to_string(count);
    auto cert = certify(hecke_matrix(fs, images), fs, params);
    if (verdict) *verdict = cert.verdict ? 1 : 0;
    *certificate = dup(cert.text());
  });
}

hki_status hki_bounds(int n_max, int k_max, int64_t count_m, int count_d, char** report, int* violations) {
  return guard([&] {
    need(report, "output");
    require(n_max >= 1 && n_max <= 8, "n_max must be in 1..8");
    require(k_max >= 0 && k_max <= 40, "k_max must be in 0..40");
    std::ostringstream os;
    int bad = 0;
    for (int n = 1; n <= n_max; ++n) {
      size_t checked = 0, notes = 0, viol = 0;
      for (int kn = 0; kn <= k_max; ++kn) {
        auto r = check_Fb(n, kn);
        checked += r.checked;
        notes += r.notes.size();
        viol += r.violations.size();
        for (const auto& v : r.violations) os << "violation n=" << n << " k_n=" << kn << ": " << v << "\n";
        for (int delta : {1, 2}) {
          auto w = check_weight_exponent(n, HighestWeight(n, kn), delta, n <= 2 && kn <= 6);
          checked += w.checked;
          viol += w.violations.size();
          for (const auto& v : w.violations) os << "violation n=" << n << " k_n=" << kn << ": " << v << "\n";
        }
      }
      bad += static_cast<int>(viol);
      os << "n=" << n << " k_n<=" << k_max << ": " << checked << " checked, " << viol << " violations, " << notes
         << " notes\n";
    }
    os << "note: printed F_b(0) closed form differs from F_b(0) by b - k_n\n";
    for (int64_t m = 1; m <= count_m; ++m)
      for (int d = 1; d <= count_d; ++d) {
        auto e = count_E(m, d);
        bool ok = BigInt(static_cast<long>(e.count)) <= e.bound;
        bad += !ok;
        os << "#E(" << m << "," << d << ") = " << e.count << (e.exact ? "" : " (numeric)") << " <= " << to_string(e.bound)
           << (ok ? "" : " VIOLATED") << "\n";
      }
    if (violations) *violations = bad;
    *report = dup(os.str());
  });
}

hki_status hki_hilbert_parse(const char* text, hki_hilbert** out) {
  return guard([&] {
    need(text, "text");
    need(out, "output");
    *out = new hki_hilbert{parse_hilbert(text)};
  });
}

hki_status hki_hilbert_read(const char* path, hki_hilbert** out) {
  return guard([&] {
    need(path, "path");
    need(out, "output");
    std::ifstream in(path);
    if (!in) fail(ErrorKind::invalid_argument, std::string("cannot open ") + path);
    std::stringstream ss;
    ss << in.rdbuf();
    *out = new hki_hilbert{parse_hilbert(ss.str())};
  });
}

hki_status hki_hilbert_to_string(const hki_hilbert* h, char** out) {
  return guard([&] {
    need(h, "Hilbert data");
    need(out, "output");
    *out = dup(write_hilbert(h->m));
  });
}

void hki_hilbert_free(hki_hilbert* h) { delete h; }

hki_status hki_hilbert_hecke(const hki_hilbert* h, const char* prime, int64_t support_norm, hki_hilbert** out) {
  return guard([&] {
    need(h, "Hilbert data");
    need(out, "output");
    auto p = parse_ideal(h->m.field, prime);
    *out = new hki_hilbert{hecke_prime(h->m, p, ideals_up_to(h->m.field, support_norm))};
  });
}

hki_status hki_hilbert_commute(const hki_hilbert* h, const char* p, const char* q, int64_t support_norm,
                               int* commute) {
  return guard([&] {
    need(h, "Hilbert data");
    need(commute, "output");
    auto a = parse_ideal(h->m.field, p), b = parse_ideal(h->m.field, q);
    *commute = commute_check(h->m, a, b, ideals_up_to(h->m.field, support_norm)) ? 1 : 0;
  });
}

hki_status hki_hilbert_primes(int64_t d, int64_t p, char** out) {
  return guard([&] {
    need(out, "output");
    std::string text;
    for (const auto& q : primes_over(QuadField(d), p)) text += q.str() + "\n";
    *out = dup(text);
  });
}

hki_status hki_verify_all(int fast, const char* cache_dir, hki_criterion_cb cb, void* user, int* failures) {
  return guard([&] {
    VerifyOptions opt;
    opt.fast = fast != 0;
    if (cache_dir) opt.cache_dir = cache_dir;
    int bad = 0;
    run_acceptance(opt, [&](const CriterionResult& r) {
      bad += !r.passed;
      if (cb) cb(r.id, r.passed ? 1 : 0, format_result(r).c_str(), user);
    });
    if (failures) *failures = bad;
  });
}

}  // extern "C"
