#include <random>

#include "doctest.h"
#include "heckeint/linalg.hpp"
#include "heckeint/poly.hpp"

using namespace heckeint;

namespace {

IntMat im(size_t r, size_t c, std::vector<long> v) {
  std::vector<BigInt> b;
  for (auto x : v) b.emplace_back(x);
  return IntMat(r, c, b);
}

IntMat random_mat(std::mt19937_64& rng, size_t n, int lo, int hi) {
  std::uniform_int_distribution<int> d(lo, hi);
  IntMat m(n, n);
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) m(i, j) = d(rng);
  return m;
}

// Determinantal divisors: D_k = gcd of all k x k minors; d_k = D_k / D_(k-1).
std::vector<BigInt> determinantal_divisors(const IntMat& m) {
  size_t n = m.rows();
  std::vector<BigInt> dk(n + 1, 0);
  dk[0] = 1;
  std::vector<size_t> rows, cols;
  for (size_t k = 1; k <= n; ++k) {
    BigInt g = 0;
    std::vector<bool> rs(n, false), cs(n, false);
    std::fill(rs.begin(), rs.begin() + k, true);
    do {
      std::fill(cs.begin(), cs.end(), false);
      std::fill(cs.begin(), cs.begin() + k, true);
      do {
        IntMat sub(k, k);
        size_t a = 0;
        for (size_t i = 0; i < n; ++i) {
          if (!rs[i]) continue;
          size_t b = 0;
          for (size_t j = 0; j < n; ++j)
            if (cs[j]) sub(a, b++) = m(i, j);
          ++a;
        }
        g = gcd(g, determinant(sub));
      } while (std::prev_permutation(cs.begin(), cs.end()));
    } while (std::prev_permutation(rs.begin(), rs.end()));
    dk[k] = g;
  }
  std::vector<BigInt> out;
  for (size_t k = 1; k <= n; ++k) out.push_back(dk[k - 1] == 0 ? BigInt(0) : BigInt(dk[k] / dk[k - 1]));
  return out;
}

BigRat frac(long a, long b) {
  BigRat q(a, b);
  q.canonicalize();
  return q;
}

RatMat random_rat(std::mt19937_64& rng, size_t n) {
  std::uniform_int_distribution<int> d(-5, 5);
  RatMat m(n, n);
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) m(i, j) = frac(d(rng), 1 + std::abs(d(rng)));
  return m;
}

CycInt random_cyc(std::mt19937_64& rng, int64_t cond) {
  std::uniform_int_distribution<int> d(-4, 4);
  CycInt x(0L);
  for (int64_t k = 0; k < cond; ++k) x += CycInt(frac(d(rng), 1 + std::abs(d(rng)) % 3)) * CycInt::zeta(cond, k);
  return x;
}

}  // namespace

TEST_SUITE("exact-arith") {
  TEST_CASE("smith form examples") {
    auto id = snf(IntMat::identity(2));
    CHECK(id.s == IntMat::identity(2));
    CHECK(snf(im(2, 2, {2, 0, 0, 3})).s == im(2, 2, {1, 0, 0, 6}));
    auto f = snf(im(2, 2, {2, 4, 6, 8}));
    CHECK(f.s == im(2, 2, {2, 0, 0, 4}));
    CHECK(f.u * im(2, 2, {2, 4, 6, 8}) * f.v == f.s);
  }

  TEST_CASE("smith form matches determinantal divisors on random matrices") {
    std::mt19937_64 rng(7);
    int tested = 0;
    for (size_t n : {2, 3}) {
      for (int it = 0; it < 300; ++it) {
        IntMat m = random_mat(rng, n, -9, 9);
        if (determinant(m) == 0) {
          CHECK_THROWS_AS(snf(m), Error);
          continue;
        }
        auto f = snf(m);
        CHECK(abs(determinant(f.u)) == 1);
        CHECK(abs(determinant(f.v)) == 1);
        CHECK(f.u * m * f.v == f.s);
        auto d = f.divisors();
        auto want = determinantal_divisors(m);
        for (size_t i = 0; i < n; ++i) {
          CHECK(abs(d[i]) == want[i]);
          if (i + 1 < n) CHECK(d[i + 1] % d[i] == 0);
          for (size_t j = 0; j < n; ++j)
            if (i != j) CHECK(f.s(i, j) == 0);
        }
        std::vector<int64_t> small = smith_diagonal(to_small(m));
        for (size_t i = 0; i < n; ++i) CHECK(small[i] == abs(d[i]));
        ++tested;
      }
    }
    CHECK(tested > 400);
  }

  TEST_CASE("snf is reproducible") {
    IntMat m = im(3, 3, {4, -6, 2, 8, 3, -1, 0, 5, 7});
    auto a = snf(m), b = snf(m);
    CHECK(a.u == b.u);
    CHECK(a.v == b.v);
  }

  TEST_CASE("hnf and kernel") {
    auto h = hnf_rows(im(2, 2, {2, 4, 6, 8}));
    CHECK(h == im(2, 2, {2, 0, 0, 4}));
    std::mt19937_64 rng(3);
    for (int it = 0; it < 100; ++it) {
      IntMat m(2, 4);
      std::uniform_int_distribution<int> d(-6, 6);
      for (size_t i = 0; i < 2; ++i)
        for (size_t j = 0; j < 4; ++j) m(i, j) = d(rng);
      IntMat k = integer_kernel(m);
      CHECK(k.rows() + rank(to_rat(m)) == 4);
      IntMat prod = m * k.transpose();
      for (size_t i = 0; i < prod.rows(); ++i)
        for (size_t j = 0; j < prod.cols(); ++j) CHECK(prod(i, j) == 0);
    }
  }

  TEST_CASE("charpoly examples") {
    CHECK(format_poly(charpoly(RatMat(2, 2))) == "X^2");
    RatMat swap(2, 2);
    swap(0, 1) = 1;
    swap(1, 0) = 1;
    CHECK(format_poly(charpoly(swap)) == "X^2 - 1");
    for (long c : {0L, 5L, -17L}) {
      RatMat m(2, 2);
      m(0, 0) = 2049;
      m(0, 1) = c;
      m(1, 1) = -24;
      auto p = charpoly(m);
      CHECK(p.coeffs == std::vector<BigRat>{BigRat(-49176), BigRat(-2025), BigRat(1)});
    }
  }

  TEST_CASE("Cayley-Hamilton up to 4x4") {
    std::mt19937_64 rng(11);
    for (size_t n = 1; n <= 4; ++n)
      for (int it = 0; it < 20; ++it) {
        RatMat m = random_rat(rng, n);
        RatMat z = evaluate_at(charpoly(m), m);
        for (size_t i = 0; i < n; ++i)
          for (size_t j = 0; j < n; ++j) CHECK(z(i, j) == 0);
      }
    Matrix<CycInt> c(2, 2);
    c(0, 0) = CycInt::zeta(5);
    c(0, 1) = CycInt(2L);
    c(1, 0) = CycInt::zeta(5, 3);
    c(1, 1) = CycInt(BigRat(1, 2));
    auto z = evaluate_at(charpoly(c), c);
    for (size_t i = 0; i < 2; ++i)
      for (size_t j = 0; j < 2; ++j) CHECK(z(i, j).is_zero());
  }

  TEST_CASE("cyclotomic examples") {
    CHECK(CycInt::zeta(4) * CycInt::zeta(4) == CycInt(-1L));
    CHECK(CycInt::zeta(3) + CycInt::zeta(3, 2) == CycInt(-1L));
    CycInt z5 = CycInt::zeta(5);
    CHECK((CycInt(1L) + z5) * (CycInt(1L) + CycInt::zeta(5, 4)) == CycInt(2L) + z5 + CycInt::zeta(5, 4));
    CHECK(CycInt::zeta(6).conj() == CycInt::zeta(6, 5));
    CHECK(root_sum({1, 1}) == CycInt(0L));
    CHECK(root_sum({2, 0, 0}) == CycInt(2L));
  }

  TEST_CASE("cyclotomic ring laws on random triples") {
    std::mt19937_64 rng(5);
    for (int it = 0; it < 60; ++it) {
      int64_t conds[] = {1, 3, 4, 5, 8, 12};
      CycInt a = random_cyc(rng, conds[rng() % 6]), b = random_cyc(rng, conds[rng() % 6]),
             c = random_cyc(rng, conds[rng() % 6]);
      CHECK((a + b) + c == a + (b + c));
      CHECK((a * b) * c == a * (b * c));
      CHECK(a * b == b * a);
      CHECK(a * (b + c) == a * b + a * c);
      CHECK(a.conj().conj() == a);
      if (!a.is_zero()) CHECK(a * a.inverse() == CycInt(1L));
    }
  }

  TEST_CASE("polynomial integrality") {
    CHECK(is_integral(RatPoly{{BigRat(-49176), BigRat(-2025), BigRat(1)}}));
    CHECK_FALSE(is_integral(RatPoly{{BigRat(-1, 2), BigRat(1)}}));
    CHECK(is_integral(RatPoly{{BigRat(-1), BigRat(-1), BigRat(1)}}));
    CHECK(is_integral(CycPoly{{CycInt::zeta(7) + CycInt(3L), CycInt(1L)}}));
    CHECK_FALSE(is_integral(CycPoly{{CycInt::zeta(7) * CycInt(BigRat(1, 3)), CycInt(1L)}}));
  }

  TEST_CASE("small-degree factorization") {
    auto f = factor_small_degree(RatPoly{{BigRat(-49176), BigRat(-2025), BigRat(1)}});
    REQUIRE(f.size() == 2);
    CHECK(format_poly(f[0]) == "X + 24");
    CHECK(format_poly(f[1]) == "X - 2049");
    CHECK(factor_small_degree(RatPoly{{BigRat(-1), BigRat(-1), BigRat(1)}}).size() == 1);
  }
}
