// heckeint command-line front end. Uses only the C interface.
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "heckeint.h"

namespace {

struct Failure {
  int code;
};

int exit_code(hki_status s) {
  switch (s) {
    case HKI_OK: return 0;
    case HKI_E_VERIFY: return 2;
    case HKI_E_CAP: return 3;
    default: return 1;
  }
}

void check(hki_status s) {
  if (s == HKI_OK) return;
  std::cerr << "error: " << hki_last_error() << "\n";
  throw Failure{exit_code(s)};
}

struct QexpDeleter {
  void operator()(hki_qexp* f) const { hki_qexp_free(f); }
};
struct HilbertDeleter {
  void operator()(hki_hilbert* h) const { hki_hilbert_free(h); }
};
using Qexp = std::unique_ptr<hki_qexp, QexpDeleter>;
using Hilbert = std::unique_ptr<hki_hilbert, HilbertDeleter>;

std::string take(char* s) {
  std::string out = s ? s : "";
  hki_string_free(s);
  return out;
}

void emit(const std::string& text, const std::string& path) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!(out << text)) {
    std::cerr << "error: cannot write " << path << "\n";
    throw Failure{1};
  }
}

Qexp read_qexp(const std::string& path) {
  hki_qexp* f = nullptr;
  check(hki_qexp_read(path.c_str(), &f));
  return Qexp(f);
}

std::string qexp_text(const hki_qexp* f) {
  char* s = nullptr;
  check(hki_qexp_to_string(f, &s));
  return take(s);
}

std::vector<int64_t> parse_ints(const std::string& text, const char* what) {
  std::istringstream in(text);
  std::vector<int64_t> v;
  int64_t x;
  while (in >> x) v.push_back(x);
  if (!in.eof()) {
    std::cerr << "error: " << what << " must be whitespace-separated integers\n";
    throw Failure{1};
  }
  return v;
}

struct OpFlags {
  int64_t p = 2;
  int delta = 1;
  int tj = -1;
  int64_t trace = 4;
  bool normalize = false;
  int64_t seed = 0;
  unsigned threads = 0;
  bool cross_check = false;

  void add(CLI::App* app) {
    app->add_option("-p,--prime", p, "prime p")->required();
    app->add_option("-d,--delta", delta, "exponent delta of T(p^delta)")->check(CLI::Range(1, 4));
    app->add_option("--tj", tj, "use T_{j,n-j}(p^2) with this j instead of T(p^delta)")->check(CLI::Range(0, 8));
    app->add_option("-t,--trace", trace, "output trace bound")->check(CLI::Range(int64_t{0}, int64_t{1000}));
    app->add_flag("--normalize", normalize, "multiply by p^norm_factor");
    app->add_option("--seed", seed, "coset representative variation");
    app->add_option("--threads", threads, "worker threads (0: all cores)");
    app->add_flag("--cross-check", cross_check, "evaluate every Gauss sum term by term as well");
  }
  hki_hecke_options options() const {
    hki_hecke_options o;
    hki_hecke_options_default(&o);
    o.seed = seed;
    o.normalize = normalize;
    o.threads = threads;
    o.cross_check = cross_check;
    return o;
  }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact Hecke operators on Siegel modular form Fourier coefficients"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(hki_version()));

  // cosets
  auto* cosets = app.add_subcommand("cosets", "print coset representatives");
  int cn = 1, cdelta = 1, ctj = -1;
  int64_t cp = 2, clevel = 1, cseed = 0;
  cosets->add_option("-n", cn, "degree")->required()->check(CLI::Range(1, 3));
  cosets->add_option("-p", cp, "prime")->required();
  cosets->add_option("-d,--delta", cdelta, "similitude exponent")->check(CLI::Range(0, 4));
  cosets->add_option("-N,--level", clevel, "level N")->check(CLI::PositiveNumber);
  cosets->add_option("--tj", ctj, "T_{j,n-j}(p^2) system instead of V_N(p^delta)")->check(CLI::Range(0, 3));
  cosets->add_option("--seed", cseed, "representative variation");

  // gauss
  auto* gauss = app.add_subcommand("gauss", "evaluate a Gauss sum G(S, D)");
  std::string gg, gd, gmethod = "all";
  gauss->add_option("-G,--g", gg, "entries of G = 2S, row-major")->required();
  gauss->add_option("-D", gd, "entries of D, row-major")->required();
  gauss->add_option("--method", gmethod, "brute, closed, literal, divisor or all")
      ->check(CLI::IsMember({"brute", "closed", "literal", "divisor", "all"}));

  // apply
  auto* apply = app.add_subcommand("apply", "apply T(p^delta) or T_{j,n-j}(p^2) to a QEXP file");
  std::string ain, aout;
  bool aneeded = false;
  OpFlags aop;
  apply->add_option("-i,--input", ain, "input QEXP file")->required()->check(CLI::ExistingFile);
  apply->add_option("-o,--output", aout, "output file (default stdout)");
  apply->add_flag("--needed", aneeded, "list the input indices the operator reads and stop");
  aop.add(apply);

  // certify
  auto* cert = app.add_subcommand("certify", "integrality certificate for a Hecke-stable basis");
  std::vector<std::string> cin;
  std::string cfixture, cout_path;
  OpFlags cop;
  cert->add_option("-i,--input", cin, "basis QEXP files")->check(CLI::ExistingFile);
  cert->add_option("--fixture", cfixture, "built-in basis")->check(CLI::IsMember({"e12-delta"}));
  cert->add_option("-o,--output", cout_path, "certificate file (default stdout)");
  cop.add(cert);

  // bounds
  auto* bounds = app.add_subcommand("bounds", "inequality scans and #E(M, d) counts");
  int bn = 6, bk = 12, bd = 2;
  int64_t bm = 2;
  bounds->add_option("--n-max", bn, "largest degree")->check(CLI::Range(1, 8));
  bounds->add_option("--k-max", bk, "largest k_n")->check(CLI::Range(0, 40));
  bounds->add_option("--count-m", bm, "count E(M, d) for M up to this")->check(CLI::Range(int64_t{0}, int64_t{8}));
  bounds->add_option("--count-d", bd, "count E(M, d) for d up to this")->check(CLI::Range(0, 4));

  // hilbert
  auto* hil = app.add_subcommand("hilbert", "ideal-indexed Hecke recursion");
  std::string hin, hout, hprime;
  std::vector<std::string> hcommute;
  int64_t hsupport = 50, hfield = 0, hover = 0;
  hil->add_option("-i,--input", hin, "HILBERT file")->check(CLI::ExistingFile);
  hil->add_option("-o,--output", hout, "output file (default stdout)");
  hil->add_option("--prime", hprime, "apply T'(p) for the prime ideal 'a b c'");
  hil->add_option("--commute", hcommute, "two prime ideals 'a b c' to test T'(p) T'(q) = T'(q) T'(p)")
      ->expected(2);
  hil->add_option("--support", hsupport, "output ideals of norm up to this")->check(CLI::PositiveNumber);
  hil->add_option("--primes-over", hover, "list prime ideals over this rational prime");
  hil->add_option("--field", hfield, "field d for --primes-over (1 for Q)");

  // corpus
  auto* corpus = app.add_subcommand("corpus", "generate a corpus form as QEXP");
  std::string form, kout, kcache;
  int kk = 4, kn = 1;
  int64_t ktrace = 10, khecke = 0;
  corpus->add_option("--form", form, "eisenstein, delta or theta-e8")
      ->required()
      ->check(CLI::IsMember({"eisenstein", "delta", "theta-e8"}));
  corpus->add_option("-k", kk, "weight for eisenstein");
  corpus->add_option("-n", kn, "degree for theta-e8")->check(CLI::Range(1, 2));
  corpus->add_option("-t,--trace", ktrace, "trace bound")->check(CLI::Range(int64_t{0}, int64_t{100000}));
  corpus->add_option("--hecke-p", khecke, "theta-e8: also store every index T(p), T_j(p^2) read");
  corpus->add_option("--cache-dir", kcache, "E8 shell cache (default $HECKEINT_CACHE_DIR)");
  corpus->add_option("-o,--output", kout, "output file (default stdout)");

  // verify-all
  auto* verify = app.add_subcommand("verify-all", "run the acceptance suite");
  bool vfast = false;
  std::string vcache;
  verify->add_flag("--fast", vfast, "reduced parameter grids");
  verify->add_option("--cache-dir", vcache, "E8 shell cache (default $HECKEINT_CACHE_DIR)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 1;
  }

  try {
    if (*cosets) {
      char* text = nullptr;
      size_t count = 0;
      check(hki_cosets(cn, cp, cdelta, clevel, ctj, cseed, &text, &count));
      std::string body = take(text);
      std::cout << "# " << (ctj < 0 ? "V_N(p^delta)" : "T_j(p^2)") << " n=" << cn << " p=" << cp
                << (ctj < 0 ? " delta=" + std::to_string(cdelta) : " j=" + std::to_string(ctj)) << " N=" << clevel
                << ": " << count << " representatives\n"
                << body;
      return 0;
    }
    if (*gauss) {
      auto g = parse_ints(gg, "-G"), d = parse_ints(gd, "-D");
      int n = static_cast<int>(std::lround(std::sqrt(static_cast<double>(g.size()))));
      if (n < 1 || static_cast<size_t>(n * n) != g.size() || d.size() != g.size()) {
        std::cerr << "error: -G and -D need n*n entries each\n";
        return 1;
      }
      std::vector<std::pair<std::string, hki_gauss_method>> methods = {
          {"brute", HKI_GAUSS_BRUTE}, {"closed", HKI_GAUSS_CLOSED}, {"literal", HKI_GAUSS_LITERAL},
          {"divisor", HKI_GAUSS_DIVISOR}};
      std::string brute, closed;
      for (const auto& [name, m] : methods) {
        if (gmethod != "all" && gmethod != name) continue;
        char* v = nullptr;
        check(hki_gauss(n, g.data(), d.data(), m, &v));
        std::string val = take(v);
        if (m == HKI_GAUSS_BRUTE) brute = val;
        if (m == HKI_GAUSS_CLOSED) closed = val;
        std::cout << name << ": " << val << "\n";
      }
      if (gmethod == "all" && brute != closed) {
        std::cerr << "error: closed form disagrees with the direct sum\n";
        return 2;
      }
      return 0;
    }
    if (*apply) {
      auto f = read_qexp(ain);
      if (aneeded) {
        char* s = nullptr;
        check(hki_needed(f.get(), aop.p, aop.delta, aop.tj, aop.trace, &s));
        emit(take(s), aout);
        return 0;
      }
      auto o = aop.options();
      hki_qexp* g = nullptr;
      check(hki_apply(f.get(), aop.p, aop.delta, aop.tj, aop.trace, &o, &g));
      Qexp out(g);
      emit(qexp_text(out.get()), aout);
      return 0;
    }
    if (*cert) {
      std::vector<Qexp> basis;
      if (!cfixture.empty()) {
        if (!cin.empty()) {
          std::cerr << "error: --fixture and --input are exclusive\n";
          return 1;
        }
        int64_t need = cop.trace * (cop.tj < 0 ? static_cast<int64_t>(std::pow(cop.p, cop.delta)) : cop.p * cop.p);
        hki_qexp* e = nullptr;
        check(hki_corpus_eisenstein(12, need, &e));
        basis.emplace_back(e);
        hki_qexp* d = nullptr;
        check(hki_corpus_delta(need, &d));
        basis.emplace_back(d);
      } else {
        if (cin.empty()) {
          std::cerr << "error: certify needs --input files or --fixture\n";
          return 1;
        }
        for (const auto& path : cin) basis.push_back(read_qexp(path));
      }
      std::vector<const hki_qexp*> raw;
      for (const auto& b : basis) raw.push_back(b.get());
      auto o = cop.options();
      char* text = nullptr;
      int verdict = 0;
      check(hki_certify(raw.data(), raw.size(), cop.p, cop.delta, cop.tj, cop.trace, &o, &text, &verdict));
      emit(take(text), cout_path);
      return verdict ? 0 : 2;
    }
    if (*bounds) {
      char* text = nullptr;
      int violations = 0;
      check(hki_bounds(bn, bk, bm, bd, &text, &violations));
      std::cout << take(text);
      return violations ? 2 : 0;
    }
    if (*hil) {
      if (hover) {
        if (!hfield) {
          std::cerr << "error: --primes-over needs --field\n";
          return 1;
        }
        char* s = nullptr;
        check(hki_hilbert_primes(hfield, hover, &s));
        emit(take(s), hout);
        return 0;
      }
      if (hin.empty()) {
        std::cerr << "error: hilbert needs --input\n";
        return 1;
      }
      hki_hilbert* h = nullptr;
      check(hki_hilbert_read(hin.c_str(), &h));
      Hilbert data(h);
      if (!hcommute.empty()) {
        int ok = 0;
        check(hki_hilbert_commute(data.get(), hcommute[0].c_str(), hcommute[1].c_str(), hsupport, &ok));
        std::cout << "commute: " << (ok ? "yes" : "no") << "\n";
        return ok ? 0 : 2;
      }
      if (hprime.empty()) {
        std::cerr << "error: hilbert needs --prime or --commute\n";
        return 1;
      }
      hki_hilbert* out = nullptr;
      check(hki_hilbert_hecke(data.get(), hprime.c_str(), hsupport, &out));
      Hilbert res(out);
      char* s = nullptr;
      check(hki_hilbert_to_string(res.get(), &s));
      emit(take(s), hout);
      return 0;
    }
    if (*corpus) {
      hki_qexp* f = nullptr;
      if (form == "eisenstein")
        check(hki_corpus_eisenstein(kk, ktrace, &f));
      else if (form == "delta")
        check(hki_corpus_delta(ktrace, &f));
      else
        check(hki_corpus_theta_e8(kn, ktrace, khecke, kcache.empty() ? nullptr : kcache.c_str(), &f));
      Qexp out(f);
      emit(qexp_text(out.get()), kout);
      return 0;
    }
    if (*verify) {
      int failures = 0;
      auto cb = [](int, int, const char* line, void*) { std::cout << line << std::endl; };
      check(hki_verify_all(vfast, vcache.empty() ? nullptr : vcache.c_str(), cb, nullptr, &failures));
      std::cout << (failures ? "FAILED: " + std::to_string(failures) + " criteria\n" : "ALL PASSED\n");
      return failures ? 2 : 0;
    }
  } catch (const Failure& f) {
    return f.code;
  }
  return 1;
}
