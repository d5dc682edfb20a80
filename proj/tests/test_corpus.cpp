#include <filesystem>

#include "doctest.h"
#include "heckeint/corpus.hpp"

using namespace heckeint;

namespace {

HalfIntMat h1(int64_t g) { return HalfIntMat::from_upper(1, {g}); }
HalfIntMat h2(int64_t a, int64_t b, int64_t c) { return HalfIntMat::from_upper(2, {a, b, c}); }

BigInt sigma(int64_t m, unsigned long k) {
  BigInt s = 0;
  for (int64_t d = 1; d <= m; ++d)
    if (m % d == 0) s += pow_int(BigInt(d), k);
  return s;
}

// q prod (1 - q^m)^24 by repeated multiplication with (1 - q^m).
std::vector<BigInt> tau_oracle(int64_t bound) {
  std::vector<BigInt> c(bound + 1, 0);
  c[1] = 1;
  for (int64_t m = 1; m <= bound; ++m)
    for (int r = 0; r < 24; ++r)
      for (int64_t i = bound; i >= m; --i) c[i] -= c[i - m];
  return c;
}

}  // namespace

TEST_SUITE("corpus") {
  TEST_CASE("Bernoulli numbers") {
    CHECK(bernoulli(0) == 1);
    CHECK(bernoulli(1) == BigRat(-1, 2));
    CHECK(bernoulli(2) == BigRat(1, 6));
    CHECK(bernoulli(3) == 0);
    CHECK(bernoulli(4) == BigRat(-1, 30));
    CHECK(bernoulli(12) == BigRat(-691, 2730));
  }

  TEST_CASE("Eisenstein series") {
    auto e4 = eisenstein(4, 30);
    CHECK(e4.at(h1(0))[0] == CycInt(1L));
    for (int64_t m = 1; m <= 30; ++m) CHECK(e4.at(h1(2 * m))[0] == CycInt(BigInt(240 * sigma(m, 3))));
    auto e6 = eisenstein(6, 10);
    CHECK(e6.at(h1(0))[0] == CycInt(-1L));
    CHECK(e6.at(h1(2))[0] == CycInt(504L));
    auto e12 = eisenstein(12, 10);
    CHECK(e12.at(h1(0))[0] == CycInt(691L));
    for (int64_t m = 1; m <= 10; ++m) CHECK(e12.at(h1(2 * m))[0] == CycInt(BigInt(65520 * sigma(m, 11))));
  }

  TEST_CASE("Delta matches the product expansion") {
    auto want = tau_oracle(60);
    auto d = delta(60);
    CHECK(d.at(h1(2))[0] == CycInt(1L));
    CHECK(d.at(h1(4))[0] == CycInt(-24L));
    CHECK(d.at(h1(6))[0] == CycInt(252L));
    for (int64_t m = 0; m <= 60; ++m) {
      const auto* v = d.find(h1(2 * m));
      CycInt got = v ? (*v)[0] : CycInt(0L);
      CHECK(got == CycInt(want[m]));
    }
  }

  TEST_CASE("E8 shells") {
    E8Lattice l(3);
    CHECK(l.shell(0).size() == 1);
    CHECK(l.shell(1).size() == 240);
    CHECK(l.shell(2).size() == 2160);
    CHECK(l.shell(3).size() == 6720);
    for (int64_t t = 1; t <= 3; ++t) {
      int64_t total = 0;
      for (const auto& o : l.orbits(t)) total += o.size;
      CHECK(total == static_cast<int64_t>(l.shell(t).size()));
      for (const auto& y : l.shell(t)) {
        CHECK(E8Lattice::contains(y));
        int64_t s = 0;
        for (int8_t c : y) s += c * c;
        CHECK(s == 8 * t);
      }
    }
    auto g = E8Lattice::gram();
    for (size_t i = 0; i < 8; ++i) CHECK(g(i, i) == 2);
  }

  TEST_CASE("degree 1 theta is E4") {
    std::vector<HalfIntMat> idx;
    for (int64_t t = 0; t <= 4; ++t) idx.push_back(h1(2 * t));
    auto th = theta_e8(1, idx);
    auto e4 = eisenstein(4, 4);
    for (const auto& t : idx) CHECK(th.at(t)[0] == e4.at(t)[0]);
  }

  TEST_CASE("degree 2 theta values") {
    std::vector<HalfIntMat> idx = {h2(0, 0, 0), h2(2, 0, 0), h2(2, 0, 2), h2(2, 1, 2), h2(4, 0, 0),
                                   h2(2, 0, 4), h2(2, 1, 4), h2(6, 0, 0), h2(2, 2, 2)};
    auto th = theta_e8(2, idx);
    CHECK(th.at(h2(0, 0, 0))[0] == CycInt(1L));
    CHECK(th.at(h2(2, 0, 0))[0] == CycInt(240L));
    CHECK(th.at(h2(2, 0, 2))[0] == CycInt(30240L));
    CHECK(th.at(h2(2, 1, 2))[0] == CycInt(13440L));
    CHECK(th.at(h2(2, -1, 2))[0] == CycInt(13440L));
    CHECK(th.at(h2(4, 0, 0))[0] == CycInt(2160L));
    CHECK(th.at(h2(2, 0, 4))[0] == CycInt(181440L));
    CHECK(th.at(h2(2, 1, 4))[0] == CycInt(138240L));
    CHECK(th.at(h2(6, 0, 0))[0] == CycInt(6720L));
    // [[2,2],[2,2]] is singular of rank one: pairs (x, x) with x a root.
    CHECK(th.at(h2(2, 2, 2))[0] == CycInt(240L));
  }

  TEST_CASE("shell cache round trip") {
    auto dir = std::filesystem::temp_directory_path() / "heckeint-corpus-test";
    std::filesystem::remove_all(dir);
    std::filesystem::create_directories(dir);
    E8Lattice a(2, dir.string());
    E8Lattice b(2, dir.string());
    CHECK_FALSE(std::filesystem::is_empty(dir));
    for (int64_t t = 0; t <= 2; ++t) CHECK(a.shell(t) == b.shell(t));
    auto th = theta_e8(2, {h2(2, 1, 2)}, dir.string());
    CHECK(th.at(h2(2, 1, 2))[0] == CycInt(13440L));
    std::filesystem::remove_all(dir);
  }
}
