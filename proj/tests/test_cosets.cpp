#include <algorithm>
#include <map>
#include <set>

#include "doctest.h"
#include "heckeint/cosets.hpp"
#include "heckeint/linalg.hpp"

using namespace heckeint;

namespace {

IntMat im(size_t n, std::vector<long> v) {
  IntMat m(n, n);
  for (size_t i = 0; i < n * n; ++i) m(i / n, i % n) = v[i];
  return m;
}

std::vector<SmallMat> invariants(const std::vector<CosetRep>& reps) {
  std::vector<SmallMat> out;
  for (const auto& r : reps) out.push_back(oracle_invariant(r.assembled));
  std::sort(out.begin(), out.end());
  return out;
}

// Orbits of Gamma_0(p)-type subgroup on P^1(F_p): p + 1 lines.
size_t projective_line_size(int64_t p) { return static_cast<size_t>(p + 1); }

}  // namespace

TEST_SUITE("cosets") {
  TEST_CASE("torus lifts g_j(m)") {
    CHECK_THROWS(gj_matrix(2, 0, 2, 3));
    CHECK(gj_matrix(1, 1, 5, 1) == IntMat::identity(2));
    CHECK(gj_matrix(2, 1, 1, 3) == IntMat::identity(4));
    IntMat g = gj_matrix(1, 1, 2, 3);
    CHECK(g == im(2, {2, 3, 3, 5}));
    for (int n : {1, 2, 3})
      for (int64_t level : {3, 4, 5, 7})
        for (int64_t m = 1; m < level; ++m) {
          if (gcd64(m, level) != 1) continue;
          for (int j = 1; j <= n; ++j) {
            IntMat x = gj_matrix(n, j, m, level);
            CHECK(is_similitude(x, BigInt(1)));
            int64_t minv = inverse_mod(m, level);
            for (int i = 0; i < 2 * n; ++i)
              for (int k = 0; k < 2 * n; ++k) {
                int64_t want = 0;
                if (i == k) {
                  int idx = i % n;
                  bool top = i < n;
                  want = idx < j ? (top ? minv : m) : 1;
                }
                CHECK(floor_mod(x(i, k).get_si() - want, level) == 0);
              }
          }
        }
  }

  TEST_CASE("SL_n coset representatives") {
    CHECK(sl_cosets({0, 0}, 2, 1).size() == 1);
    for (int64_t p : {2, 3, 5}) {
      CHECK(sl_cosets({0, 1}, p, 1).size() == projective_line_size(p));
      auto withlevel = sl_cosets({0, 1}, p, p == 3 ? 2 : 3);
      CHECK(withlevel.size() == projective_line_size(p));
      for (const auto& r : withlevel) {
        CHECK(determinant(r) == 1);
        int64_t level = p == 3 ? 2 : 3;
        for (size_t i = 0; i < 2; ++i)
          for (size_t k = 0; k < 2; ++k) CHECK(floor_mod(r(i, k).get_si() - (i == k), level) == 0);
      }
    }
  }

  TEST_CASE("B lattices") {
    CHECK(b_reps(IntMat::identity(2)).size() == 1);
    for (long p : {2L, 3L}) {
      auto reps = b_reps(im(2, {p, 0, 0, p}));
      CHECK(reps.size() == static_cast<size_t>(p * p * p));
      for (const auto& b : reps) CHECK(b == b.transpose());
    }
    auto two = b_reps(im(2, {1, 0, 0, 2}));
    REQUIRE(two.size() == 2);
    std::set<IntMat> got(two.begin(), two.end());
    CHECK(got.count(IntMat(2, 2)) == 1);
    CHECK(got.count(im(2, {0, 0, 0, 1})) == 1);
  }

  TEST_CASE("B lattice size equals prod d_j^(n-j+1)") {
    std::vector<IntMat> ds = {im(2, {2, 1, 0, 6}), im(2, {1, 0, 3, 9}), im(2, {0, 4, 2, 0}), im(3, {2, 0, 0, 0, 2, 1, 0, 0, 4}),
                              im(3, {1, 1, 0, 0, 3, 0, 0, 0, 3})};
    for (const auto& d : ds) {
      auto reps = b_reps(d);
      CHECK(BigInt(static_cast<unsigned long>(reps.size())) == b_count_formula(d));
      for (const auto& b : reps) CHECK(b.transpose() * d == d.transpose() * b);
    }
  }

  TEST_CASE("V_N(p^delta) examples") {
    CHECK(v_cosets(1, 2, 1, 1).size() == 3);
    CHECK(v_cosets(2, 2, 1, 1).size() == 15);
    auto r = v_cosets(1, 3, 1, 2);
    CHECK(r.size() == 4);
    for (const auto& x : r) CHECK(in_congruence_set(x.assembled, 3, 2));
    CHECK(brute_cosets_oracle(1, 2, 2, 1).size() == 7);
    CHECK_THROWS_AS(v_cosets(1, 3, 1, 3), Error);
    try {
      v_cosets(3, 3, 4, 1);
      FAIL("cap not enforced");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::cap_exceeded);
    }
  }

  TEST_CASE("V_N(p^delta) agrees with the oracle") {
    for (int n : {1, 2})
      for (int64_t p : {2, 3})
        for (int delta : {1, 2})
          for (int64_t level : {1, 2, 3, 4}) {
            if (level % p == 0) continue;
            if (n == 2 && pow64(p, delta) > 4) continue;  // the largest cases run in the acceptance suite
            auto reps = v_cosets(n, p, delta, level);
            CHECK(invariants(reps) == brute_cosets_oracle(n, p, delta, level));
            for (const auto& x : reps) {
              CHECK(is_similitude(x.assembled, BigInt(pow64(p, delta))));
              CHECK(in_congruence_set(x.assembled, pow64(p, delta), level));
            }
          }
  }

  TEST_CASE("representative choice does not change the class set") {
    for (int64_t seed : {1, 2, 17}) {
      CHECK(invariants(v_cosets(2, 2, 1, 3, seed)) == invariants(v_cosets(2, 2, 1, 3)));
      CHECK(invariants(tj_cosets(2, 1, 2, 1, seed)) == invariants(tj_cosets(2, 1, 2, 1)));
    }
  }

  TEST_CASE("T_j(p^2) systems") {
    auto scalar = tj_cosets(1, 0, 5, 1);
    REQUIRE(scalar.size() == 1);
    CHECK(scalar[0].assembled == im(2, {5, 0, 0, 5}));
    // The T_j systems partition V(p^2) by symplectic divisor type.
    for (int n : {1, 2})
      for (int64_t p : {2, 3}) {
        if (n == 2 && p == 3) continue;
        std::vector<SmallMat> all;
        for (int j = 0; j <= n; ++j) {
          auto reps = tj_cosets(n, j, p, 1);
          for (const auto& r : reps) {
            auto sd = smith_diagonal(to_small(r.assembled));
            CHECK(sd == tj_type(n, j, p));
          }
          auto inv = invariants(reps);
          all.insert(all.end(), inv.begin(), inv.end());
        }
        std::sort(all.begin(), all.end());
        CHECK(all == brute_cosets_oracle(n, p, 2, 1));
      }
    for (const auto& r : tj_cosets(2, 0, 2, 3)) {
      CHECK(in_congruence_set(r.assembled, 4, 3));
      CHECK(is_similitude(r.assembled, BigInt(4)));
    }
  }
}
