#include <cmath>
#include <complex>
#include <random>
#include <set>

#include "doctest.h"
#include "heckeint/corpus.hpp"
#include "heckeint/hecke.hpp"

using namespace heckeint;

namespace {

HalfIntMat h1(int64_t g) { return HalfIntMat::from_upper(1, {g}); }
HalfIntMat h2(int64_t a, int64_t b, int64_t c) { return HalfIntMat::from_upper(2, {a, b, c}); }

IntMat im(size_t n, std::vector<long> v) {
  IntMat m(n, n);
  for (size_t i = 0; i < n * n; ++i) m(i / n, i % n) = v[i];
  return m;
}

// Lambda_D / Sym D is {X symmetric rational : X D integral} / Sym_n(Z) via B = X D.
// With m = |det D| every such X is Y / m, Y symmetric mod m with Y D = 0 mod m,
// and the phase is tr(S Y) / m.
long class_gauss(const HalfIntMat& s, const IntMat& d, long* classes = nullptr) {
  size_t n = d.rows();
  long m = std::labs(determinant(d).get_si());
  SmallMat dd = to_small(d), g = s.g();
  std::vector<std::pair<size_t, size_t>> slots;
  for (size_t i = 0; i < n; ++i)
    for (size_t j = i; j < n; ++j) slots.push_back({i, j});
  std::vector<long> y(slots.size(), 0);
  std::complex<double> sum = 0;
  long count = 0;
  for (;;) {
    SmallMat ym(n, n);
    for (size_t k = 0; k < slots.size(); ++k) ym(slots[k].first, slots[k].second) = ym(slots[k].second, slots[k].first) = y[k];
    bool in = true;
    for (size_t i = 0; i < n && in; ++i)
      for (size_t j = 0; j < n && in; ++j) {
        long v = 0;
        for (size_t k = 0; k < n; ++k) v += ym(i, k) * dd(k, j);
        in = v % m == 0;
      }
    if (in) {
      ++count;
      long num = 0;  // tr(S Y) with S = G / 2
      for (size_t i = 0; i < n; ++i)
        for (size_t k = 0; k < n; ++k) num += g(i, k) * ym(k, i);
      sum += std::polar(1.0, M_PI * static_cast<double>(num) / static_cast<double>(m));
    }
    size_t k = 0;
    while (k < y.size() && ++y[k] == m) y[k++] = 0;
    if (k == y.size()) break;
  }
  if (classes) *classes = count;
  CHECK(std::abs(sum.imag()) < 1e-6);
  return std::lround(sum.real());
}

// Every index T(p), T(p^2) or some T_j(p^2) reads for outputs up to `trace`.
std::vector<HalfIntMat> all_needed(int n, int64_t level, int64_t p, int64_t trace) {
  auto targets = enumerate_indices(n, trace);
  std::set<HalfIntMat> need(targets.begin(), targets.end());
  for (int delta : {1, 2})
    for (const auto& s : needed_indices_T(n, targets, p, delta, level)) need.insert(s);
  for (int j = 0; j <= n; ++j)
    for (const auto& s : needed_indices_Tj(n, targets, j, p, level)) need.insert(s);
  return {need.begin(), need.end()};
}

// Class mode gives GL_n(Z)-invariant data, the only kind on which the action
// cannot see which representatives were picked.
QExpansion random_form(int n, int64_t level, const std::vector<HalfIntMat>& support, std::mt19937_64& rng,
                       int k = 6, StorageMode mode = StorageMode::explicit_support) {
  QExpansion f(n, level, HighestWeight(n, k), CharacterTuple::trivial(n, level), {CoefficientRing::integers, 1}, mode);
  for (const auto& t : support) f.set_scalar(t, CycInt(static_cast<long>(rng() % 41) - 20));
  return f;
}

void check_eigen(const QExpansion& f, const QExpansion& g, const CycInt& lam) {
  REQUIRE_FALSE(g.empty());
  for (const auto& [t, v] : g.coefficients()) CHECK(v[0] == lam * f.at(t)[0]);
}

}  // namespace

TEST_SUITE("hecke-engine") {
  TEST_CASE("Gauss sum examples") {
    for (long p : {2L, 3L, 5L})
      for (int64_t s = 0; s < 12; ++s) {
        auto v = gauss_brute(h1(2 * s), im(1, {p})).value;
        CHECK(v == (s % p == 0 ? p : 0));
      }
    for (const auto& t : enumerate_indices(2, 3)) CHECK(gauss_brute(t, IntMat::identity(2)).value == 1);
    IntMat d12 = im(2, {1, 0, 0, 2});
    CHECK(gauss_brute(h2(2, 0, 2), d12).value == 0);
    CHECK(gauss_brute(h2(2, 0, 4), d12).value == 2);
    CHECK(gauss_closed(HalfIntMat::zero(2), im(2, {3, 0, 0, 3})).value == 27);
    CHECK(gauss_closed(h1(2), im(1, {2})).value == 0);
  }

  TEST_CASE("literal divisor reading fails on the hand-checked case") {
    // D = diag(1,2), half-integral off-diagonal, s22 even.
    HalfIntMat s = h2(2, 1, 4);
    IntMat d = im(2, {1, 0, 0, 2});
    CHECK(gauss_brute(s, d).value == 2);
    CHECK(gauss_closed(s, d).value == 2);
    CHECK(gauss_divisor_rule(s, d).value == 2);
    CHECK(gauss_literal(s, d).value == 0);
  }

  TEST_CASE("Gauss sums agree with a direct class sum") {
    std::mt19937_64 rng(31);
    int nonzero = 0;
    for (int it = 0; it < 150; ++it) {
      long a = 1 + rng() % 4, c = 1 + rng() % 4, b = static_cast<long>(rng() % 5) - 2;
      if (std::labs(a * c) > 12) continue;
      IntMat d = im(2, {a, b, 0, c});
      if (rng() % 2) d = im(2, {0, 1, 1, 0}) * d;
      HalfIntMat s = h2(2 * (static_cast<long>(rng() % 7) - 3), static_cast<long>(rng() % 9) - 4,
                        2 * (static_cast<long>(rng() % 7) - 3));
      long classes = 0, want = class_gauss(s, d, &classes);
      INFO("S=" << s.str() << " D=" << format_matrix(d));
      CHECK(BigInt(classes) == b_count_formula(d));
      CHECK(gauss_brute(s, d).value == want);
      CHECK(gauss_closed(s, d).value == want);
      nonzero += want != 0;
    }
    CHECK(nonzero > 10);
  }

  TEST_CASE("norm factors") {
    CHECK(norm_factor(2, 4, OperatorKind::t_p) == 0);
    CHECK(norm_factor(3, 1, OperatorKind::t_p) == 3);
    CHECK(norm_factor(2, 2, OperatorKind::t_j) == 2);
    CHECK(norm_factor(3, 4, OperatorKind::t_j) == 0);
    CHECK(norm_factor(2, 0, OperatorKind::t_p, 2) == 6);
  }

  TEST_CASE("needed indices") {
    auto one = needed_indices_T(1, {h1(2)}, 2, 1, 1);
    CHECK(one == std::vector<HalfIntMat>{h1(4)});
    auto two = needed_indices_T(1, {h1(4)}, 2, 1, 1);
    CHECK(std::set<HalfIntMat>(two.begin(), two.end()) == std::set<HalfIntMat>{h1(2), h1(8)});
    auto many = needed_indices_T(2, enumerate_indices(2, 2), 2, 1, 1);
    CHECK_FALSE(many.empty());
    for (const auto& s : many) CHECK(s.is_psd());
  }

  TEST_CASE("classical eigenvalues") {
    auto e4 = eisenstein(4, 40);
    auto g = apply_T(e4, 2, 1, 20);
    CHECK(g.at(h1(2))[0] == CycInt(2160L));
    check_eigen(e4, g, CycInt(9L));
    auto d = delta(40);
    check_eigen(d, apply_T(d, 2, 1, 20), CycInt(-24L));
    check_eigen(d, apply_T(d, 2, 2, 10), CycInt(-1472L));
    check_eigen(e4, apply_T(e4, 2, 2, 10), CycInt(73L));
  }

  TEST_CASE("empty input gives empty output") {
    QExpansion f(1, 1, {4}, CharacterTuple::trivial(1, 1), {}, StorageMode::explicit_support);
    CHECK(apply_T(f, 2, 1, 5).empty());
    CHECK(apply_Tj(f, 0, 2, 5).empty());
  }

  TEST_CASE("missing inputs are reported together") {
    auto e4 = eisenstein(4, 5);
    try {
      apply_T(e4, 2, 1, 5);
      FAIL("missing inputs accepted");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::missing_indices);
      std::string msg = e.what();
      CHECK(msg.find("12") != std::string::npos);
      CHECK(msg.find("20") != std::string::npos);
    }
  }

  TEST_CASE("T_0(p^2) is the scalar coset") {
    for (int k : {4, 6, 12}) {
      auto f = eisenstein(k, 40);
      check_eigen(f, apply_Tj(f, 0, 2, 10), CycInt(pow_int(BigInt(2), k - 2)));
    }
  }

  TEST_CASE("T_j systems add up to T(p^2) on arbitrary data") {
    std::mt19937_64 rng(41);
    for (int n : {1, 2}) {
      int64_t out = n == 1 ? 10 : 2;
      auto f = random_form(n, 1, all_needed(n, 1, 2, out), rng, n == 1 ? 6 : 5);
      auto whole = apply_T(f, 2, 2, out);
      QExpansion sum = whole.empty_like();
      for (int j = 0; j <= n; ++j) {
        auto part = apply_Tj(f, j, 2, out);
        for (const auto& [t, v] : part.coefficients()) {
          const auto* cur = sum.find(t);
          sum.set(t, {cur ? (*cur)[0] + v[0] : v[0]});
        }
      }
      for (const auto& [t, v] : whole.coefficients()) CHECK(sum.at(t)[0] == v[0]);
    }
  }

  TEST_CASE("representative choice does not change the action") {
    std::mt19937_64 rng(43);
    auto f = random_form(2, 1, all_needed(2, 1, 2, 3), rng, 6, StorageMode::class_function);
    HeckeOptions a, b;
    b.seed = 9;
    b.cross_check_gauss = true;
    auto x = apply_T(f, 2, 1, 3, a), y = apply_T(f, 2, 1, 3, b);
    CHECK(x.coefficients() == y.coefficients());
    auto g = random_form(1, 5, all_needed(1, 5, 2, 15), rng);
    CHECK(apply_T(g, 2, 1, 15, a).coefficients() == apply_T(g, 2, 1, 15, b).coefficients());
    CHECK(apply_Tj(f, 1, 2, 2, a).coefficients() == apply_Tj(f, 1, 2, 2, b).coefficients());
  }

  TEST_CASE("thread count does not change the output") {
    std::mt19937_64 rng(47);
    auto f = random_form(2, 1, all_needed(2, 1, 2, 3), rng);
    HeckeOptions one, many;
    one.threads = 1;
    many.threads = 8;
    CHECK(write_qexp(apply_T(f, 2, 1, 3, one)) == write_qexp(apply_T(f, 2, 1, 3, many)));
  }

  TEST_CASE("eigenforms stay eigenforms and operators commute") {
    for (int k : {4, 6, 12}) {
      auto f = eisenstein(k, 200);
      for (int64_t p : {3L, 5L, 7L}) check_eigen(f, apply_T(f, p, 1, 20), CycInt(BigInt(pow_int(BigInt(p), k - 1) + 1)));
    }
    for (auto f : {eisenstein(4, 200), delta(200)})
      for (int64_t q : {3L, 5L}) {
        auto a = apply_T(apply_T(f, 2, 1, 5 * q), q, 1, 5);
        auto b = apply_T(apply_T(f, q, 1, 10), 2, 1, 5);
        CHECK(a.coefficients() == b.coefficients());
      }
  }

  TEST_CASE("degree 2 theta series is a T_j eigenform") {
    auto targets = enumerate_indices(2, 2);
    std::set<HalfIntMat> need(targets.begin(), targets.end());
    for (int j = 0; j <= 1; ++j)
      for (const auto& s : needed_indices_Tj(2, targets, j, 2, 1)) need.insert(s);
    auto th = theta_e8(2, {need.begin(), need.end()});
    check_eigen(th, apply_Tj(th, 0, 2, 2), CycInt(4L));
    check_eigen(th, apply_Tj(th, 1, 2, 2), CycInt(210L));
  }

  TEST_CASE("character projection") {
    auto idx = enumerate_indices(1, 3);
    QExpansion f(1, 1, {4}, CharacterTuple::trivial(1, 1), {}, StorageMode::explicit_support);
    for (const auto& t : idx) f.set_scalar(t, CycInt(t.trace() + 1));
    CHECK(project_char(f, CharacterTuple::trivial(1, 1), TorusAction::identity(1, 1, idx)).coefficients() ==
          f.coefficients());
    QExpansion f2(1, 2, {4}, CharacterTuple::trivial(1, 2), {}, StorageMode::explicit_support);
    for (const auto& t : idx) f2.set_scalar(t, CycInt(t.trace() * 3 - 1));
    CHECK(project_char(f2, CharacterTuple::trivial(1, 2), TorusAction::identity(1, 2, idx)).coefficients() ==
          f2.coefficients());

    // N = 3: the element 2 swaps a((1)) and a((2)).
    QExpansion g(1, 3, {4}, CharacterTuple::trivial(1, 3), {CoefficientRing::rationals, 1},
                 StorageMode::explicit_support);
    g.set_scalar(h1(2), CycInt(5L));
    g.set_scalar(h1(4), CycInt(-1L));
    TorusAction act;
    act.n = 1;
    act.level = 3;
    act.elements = {{1}, {2}};
    act.maps.resize(2);
    act.maps[0][h1(2)] = {h1(2), CycInt(1L)};
    act.maps[0][h1(4)] = {h1(4), CycInt(1L)};
    act.maps[1][h1(2)] = {h1(4), CycInt(1L)};
    act.maps[1][h1(4)] = {h1(2), CycInt(1L)};
    auto triv = CharacterTuple::trivial(1, 3);
    auto sign = CharacterTuple::parse("2/0,1", 1, 3);
    auto p0 = project_char(g, triv, act), p1 = project_char(g, sign, act);
    CHECK(p0.at(h1(2))[0] == CycInt(2L));
    CHECK(p1.at(h1(2))[0] == CycInt(3L));
    CHECK(p1.at(h1(4))[0] == CycInt(-3L));
    for (const auto& t : {h1(2), h1(4)}) CHECK(p0.at(t)[0] + p1.at(t)[0] == g.at(t)[0]);
    CHECK(project_char(p0, triv, act).coefficients() == p0.coefficients());
    CHECK(project_char(p1, sign, act).coefficients() == p1.coefficients());

    TorusAction bad = act;
    bad.maps[1][h1(2)] = {h1(2), CycInt(1L)};
    CHECK_THROWS(bad.validate());
    TorusAction scaled = act;
    scaled.maps[1][h1(2)].second = CycInt(2L);
    CHECK_THROWS(scaled.validate());
  }
}
