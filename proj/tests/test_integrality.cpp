#include <cmath>
#include <complex>
#include <random>

#include "doctest.h"
#include "heckeint/corpus.hpp"
#include "heckeint/hecke.hpp"
#include "heckeint/integrality.hpp"
#include "heckeint/linalg.hpp"

using namespace heckeint;

namespace {

HalfIntMat h1(int64_t g) { return HalfIntMat::from_upper(1, {g}); }

QExpansion series(const std::vector<long>& coeffs, CoefficientRing ring = {CoefficientRing::integers, 1}) {
  QExpansion f(1, 1, {12}, CharacterTuple::trivial(1, 1), ring, StorageMode::explicit_support);
  for (size_t i = 0; i < coeffs.size(); ++i) f.set_scalar(h1(2 * static_cast<int64_t>(i)), CycInt(coeffs[i]));
  return f;
}

CycMat cm(size_t n, std::vector<BigRat> v) {
  CycMat m(n, n);
  for (size_t i = 0; i < n * n; ++i) m(i / n, i % n) = CycInt(v[i]);
  return m;
}

// #E(m, d) for d <= 2 by direct search: rationals in [-m, m] plus two conjugate
// roots for every irreducible monic quadratic with both roots in |z| <= m.
int64_t brute_E(int64_t m, int d) {
  int64_t count = 2 * m + 1;
  if (d == 1) return count;
  for (int64_t b = -2 * m; b <= 2 * m; ++b)
    for (int64_t c = -m * m; c <= m * m; ++c) {
      int64_t disc = b * b - 4 * c;
      if (disc >= 0) {
        auto r = static_cast<int64_t>(std::llround(std::sqrt(static_cast<double>(disc))));
        if (r * r == disc) continue;
      }
      std::complex<double> sq = std::sqrt(std::complex<double>(static_cast<double>(disc)));
      auto r1 = (-static_cast<double>(b) + sq) / 2.0, r2 = (-static_cast<double>(b) - sq) / 2.0;
      if (std::abs(r1) <= m + 1e-9 && std::abs(r2) <= m + 1e-9) count += 2;
    }
  return count;
}

}  // namespace

TEST_SUITE("integrality") {
  TEST_CASE("injective truncation") {
    CHECK(injective_truncation({series({1, 240, 2160})}) == 1);
    CHECK(injective_truncation({series({0, 1, -24}), series({0, 2, 5})}) == 3);
    CHECK(injective_truncation({series({1, 0, 0}), series({0, 0, 1})}) == 3);
    CHECK_THROWS_AS(injective_truncation({series({1, 2, 3}), series({2, 4, 6})}), Error);
  }

  TEST_CASE("truncation is minimal on random bases") {
    std::mt19937_64 rng(53);
    for (int it = 0; it < 40; ++it) {
      size_t r = 1 + rng() % 3;
      std::vector<QExpansion> basis;
      for (size_t i = 0; i < r; ++i) {
        std::vector<long> c(8);
        for (auto& x : c) x = static_cast<long>(rng() % 5) - 2;
        basis.push_back(series(c));
      }
      size_t nstar;
      try {
        nstar = injective_truncation(basis);
      } catch (const Error&) {
        continue;
      }
      auto rank_at = [&](size_t cols) {
        RatMat m(r, cols);
        for (size_t i = 0; i < r; ++i)
          for (size_t j = 0; j < cols; ++j) m(i, j) = basis[i].at(h1(2 * static_cast<int64_t>(j)))[0].rational();
        return rank(m);
      };
      CHECK(rank_at(nstar) == r);
      if (nstar > 1) CHECK(rank_at(nstar - 1) < r);
    }
  }

  TEST_CASE("hecke matrix of a one-dimensional space") {
    auto e4 = eisenstein(4, 60);
    auto c = hecke_matrix({e4}, [](const QExpansion& f) { return apply_T(f, 2, 1, 30); });
    REQUIRE(c.rows() == 1);
    CHECK(c(0, 0) == CycInt(9L));
  }

  TEST_CASE("hecke matrix rejects images outside the span") {
    auto f = series({0, 1, 0, 0});
    auto g = series({0, 0, 1, 0});
    auto h = series({0, 1, 0, 1});
    CHECK(hecke_matrix({f, g}, {g, f}) == cm(2, {0, 1, 1, 0}));
    CHECK_THROWS_AS(hecke_matrix({f, g}, {h, f}), Error);
  }

  TEST_CASE("certify") {
    auto yes = certify(cm(2, {0, 1, 1, 0}));
    CHECK(yes.verdict);
    CHECK(format_poly(yes.charpoly) == "X^2 - 1");
    auto no = certify(cm(1, {BigRat(1, 2)}));
    CHECK_FALSE(no.verdict);
    CHECK(no.text().find("INTEGRAL: no") != std::string::npos);

    // Basis {f, 2g} with C swapping up to the factor: lattice Z f + Z g is
    // stable, the standard lattice is not; the verdict follows the charpoly.
    auto f = series({0, 1, 0}), g2 = series({0, 0, 2});
    auto c = cm(2, {0, BigRat(1, 2), 2, 0});
    auto cert = certify(c, {f, g2});
    CHECK(cert.lattice_checked);
    CHECK(cert.lattice_stable);
    CHECK(cert.verdict);
    CHECK(cert.text().find("INTEGRAL: yes") != std::string::npos);

    auto half = cm(1, {BigRat(1, 3)});
    auto bad = certify(half, {series({0, 3})});
    CHECK_FALSE(bad.verdict);
  }

  TEST_CASE("F_b table") {
    CHECK(fb_value(2, 4, 2, 0) == 2);
    CHECK(fb_value(2, 4, 0, 0) == 10);
    for (int n = 1; n <= 4; ++n)
      for (int kn = 0; kn <= 6; ++kn)
        for (int b = 0; b <= n; ++b) CHECK(fb_zero_printed(n, kn, b) - fb_value(n, kn, 0, b) == b - kn);
    for (int n = 1; n <= 4; ++n)
      for (int kn = 0; kn <= 6; ++kn) {
        auto rep = check_Fb(n, kn);
        CHECK_MESSAGE(rep.ok(), n << " " << kn);
        CHECK(rep.checked > 0);
      }
    int lo = 1 << 20;
    for (int a = 0; a <= 2; ++a)
      for (int b = 0; a + b <= 2; ++b) lo = std::min<int>(lo, static_cast<int>(fb_value(2, 2, a, b)));
    CHECK(lo >= -2);
  }

  TEST_CASE("weight exponent margins") {
    auto rep = check_weight_exponent(3, {3, 2, 1}, 1);
    CHECK(rep.ok());
    CHECK(rep.checked == 3);
    auto mats = check_weight_exponent(2, {4, 4}, 1, true);
    CHECK(mats.ok());
    CHECK(mats.checked > 2);
    CHECK(check_weight_exponent(2, {3, 1}, 2, true, 3).ok());
    CHECK_THROWS(check_weight_exponent(2, {1, 3}, 1));
  }

  TEST_CASE("counting bound") {
    for (int64_t m = 1; m <= 3; ++m)
      for (int d = 1; d <= 2; ++d) {
        auto e = count_E(m, d);
        CHECK(e.exact);
        CHECK(e.count == brute_E(m, d));
        CHECK(e.bound == pow_int(BigInt(16 * m), d * d));
        CHECK(BigInt(static_cast<long>(e.count)) <= e.bound);
      }
    CHECK(count_E(1, 1).count == 3);
    CHECK(count_E(2, 1).count == 5);
    CHECK(count_E(1, 2).count == 9);
  }
}
