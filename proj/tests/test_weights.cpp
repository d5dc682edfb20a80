#include <algorithm>
#include <random>

#include "doctest.h"
#include "heckeint/weights.hpp"

using namespace heckeint;

namespace {

RatMat rat(size_t n, std::vector<long> v) {
  RatMat m(n, n);
  for (size_t i = 0; i < n * n; ++i) m(i / n, i % n) = v[i];
  return m;
}

// Random product of elementary unimodular matrices.
RatMat random_unimodular(std::mt19937_64& rng, size_t n) {
  RatMat m = RatMat::identity(n);
  for (int s = 0; s < 6; ++s) {
    size_t i = rng() % n, j = rng() % n;
    if (i == j) continue;
    RatMat e = RatMat::identity(n);
    e(i, j) = static_cast<long>(rng() % 5) - 2;
    m = m * e;
  }
  return m;
}

}  // namespace

TEST_SUITE("weights") {
  TEST_CASE("small models") {
    TensorModel sym2({2, 0});
    CHECK(sym2.dimension() == 3);
    auto w = sym2.basis_weights();
    CHECK(w == std::vector<std::vector<int>>{{2, 0}, {1, 1}, {0, 2}});
    TensorModel shifted({3, 1});
    CHECK(shifted.basis_weights() == std::vector<std::vector<int>>{{3, 1}, {2, 2}, {1, 3}});
    CHECK(TensorModel({7}).dimension() == 1);
    CHECK(model_dimension({4, 2, 1}) == TensorModel({4, 2, 1}).dimension());
  }

  TEST_CASE("weight lists") {
    auto wl = weight_list(TensorModel({2, 0}));
    CHECK(wl.size() == 3);
    for (const auto& x : wl) CHECK(x.multiplicity == 1);
    auto l2 = weight_list(TensorModel({1, 1, 0}));
    std::vector<std::vector<int>> got;
    for (const auto& x : l2) got.push_back(x.weight);
    std::sort(got.begin(), got.end());
    CHECK(got == std::vector<std::vector<int>>{{0, 1, 1}, {1, 0, 1}, {1, 1, 0}});
  }

  TEST_CASE("rho on diagonal and unipotent elements") {
    TensorModel m({2, 0});
    CHECK(m.rho(rat(2, {1, 0, 0, 1})) == RatMat::identity(3));
    RatMat d = m.rho(rat(2, {2, 0, 0, 3}));
    CHECK(d(0, 0) == 4);
    CHECK(d(1, 1) == 6);
    CHECK(d(2, 2) == 9);
    // y^2 -> (x + y)^2 under e2 -> e1 + e2.
    auto v = m.apply(rat(2, {1, 1, 0, 1}), {CycInt(0L), CycInt(0L), CycInt(1L)});
    CHECK(v == std::vector<CycInt>{CycInt(1L), CycInt(2L), CycInt(1L)});
  }

  TEST_CASE("rho is a homomorphism on random unimodular pairs") {
    std::mt19937_64 rng(23);
    std::vector<HighestWeight> ws = {{3, 0}, {4, 1}, {2, 1, 0}, {3, 1, 1}, {2, 2, 0}};
    for (const auto& k : ws) {
      TensorModel m(k);
      REQUIRE(m.dimension() <= 50);
      size_t n = k.size();
      for (int it = 0; it < 8; ++it) {
        RatMat g = random_unimodular(rng, n), h = random_unimodular(rng, n);
        CHECK(m.rho(g * h) == m.rho(g) * m.rho(h));
        CHECK(is_integral(m.rho(g)));
      }
    }
  }

  TEST_CASE("every weight component is at least k_n, with equality attained") {
    for (int n = 1; n <= 3; ++n)
      for (int kn = 0; kn <= 3; ++kn) {
        HighestWeight k(n, kn);
        auto rec = [&](auto&& self, int i) -> void {
          if (i < 0) {
            int lo = 1 << 20;
            for (const auto& x : weight_list(TensorModel(k)))
              for (int c : x.weight) lo = std::min(lo, c);
            CHECK(lo == kn);
            return;
          }
          for (int x = k[i + 1]; x <= kn + 2; ++x) {
            k[i] = x;
            self(self, i - 1);
          }
        };
        rec(rec, n - 2);
      }
  }

  TEST_CASE("invalid weights") {
    CHECK_THROWS(validate_weight({1, 2}));
    CHECK_THROWS(validate_weight({2, -1}));
    CHECK_THROWS(TensorModel({40, 0, 0}, 100));
  }
}
