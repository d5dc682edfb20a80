#include <random>

#include "doctest.h"
#include "heckeint/fourier.hpp"

using namespace heckeint;

namespace {

HalfIntMat h2(int64_t a, int64_t b, int64_t c) { return HalfIntMat::from_upper(2, {a, b, c}); }

// Raw count of even-diagonal symmetric G with tr(G) <= 2 bound and G >= 0.
size_t brute_count(int n, int64_t bound) {
  if (n == 1) return static_cast<size_t>(bound + 1);
  size_t c = 0;
  for (int64_t a = 0; a <= 2 * bound; a += 2)
    for (int64_t d = 0; a + d <= 2 * bound; d += 2)
      for (int64_t b = -2 * bound; b <= 2 * bound; ++b)
        if (a * d - b * b >= 0) ++c;
  return c;
}

}  // namespace

TEST_SUITE("fourier-core") {
  TEST_CASE("index enumeration examples") {
    auto one = enumerate_indices(1, 2);
    REQUIRE(one.size() == 3);
    CHECK(one[2] == HalfIntMat::from_upper(1, {4}));
    auto two = enumerate_indices(2, 1);
    CHECK(two.size() == 3);
    CHECK(two[0] == h2(0, 0, 0));
  }

  TEST_CASE("index enumeration matches a raw enumerator") {
    for (int n : {1, 2}) {
      size_t prev = 0;
      for (int64_t b = 0; b <= 6; ++b) {
        auto idx = enumerate_indices(n, b);
        CHECK(idx.size() == brute_count(n, b));
        CHECK(idx.size() >= prev);
        prev = idx.size();
        CHECK(std::is_sorted(idx.begin(), idx.end()));
        for (const auto& t : idx) {
          CHECK(t.is_psd());
          CHECK(t.trace() <= b);
        }
      }
    }
    // The raw enumerator gives 10 here.
    CHECK(enumerate_indices(2, 2).size() == 10);
  }

  TEST_CASE("transform_index") {
    auto t1 = HalfIntMat::from_upper(1, {2});
    auto t2 = HalfIntMat::from_upper(1, {4});
    IntMat one = IntMat::identity(1);
    CHECK_FALSE(transform_index(t1, one, 2, 1).has_value());
    CHECK(*transform_index(t2, one, 2, 1) == t1);
    IntMat d(2, 2);
    d(0, 0) = 1;
    d(1, 1) = 2;
    CHECK_FALSE(transform_index(h2(2, 0, 2), d, 2, 1).has_value());
    for (const auto& t : enumerate_indices(2, 4)) CHECK(*transform_index(t, IntMat::identity(2), 2, 0) == t);
  }

  TEST_CASE("binary reduction examples") {
    auto [r0, u0] = reduce_binary(h2(0, 0, 0));
    CHECK(r0 == h2(0, 0, 0));
    CHECK(u0 == SmallMat::identity(2));
    auto [r1, u1] = reduce_binary(h2(2, 2, 2));
    CHECK(r1 == h2(2, 0, 0));
    CHECK(congruence(h2(2, 2, 2), u1) == r1);
    auto [r2, u2] = reduce_binary(h2(4, 0, 2));
    CHECK(r2 == h2(2, 0, 4));
  }

  TEST_CASE("binary reduction invariants on random forms") {
    std::mt19937_64 rng(17);
    std::uniform_int_distribution<int64_t> d(-30, 30);
    for (int it = 0; it < 500; ++it) {
      int64_t a = 2 * std::abs(d(rng)), c = 2 * std::abs(d(rng)), b = d(rng);
      HalfIntMat t = h2(a, b, c);
      if (!t.is_psd()) continue;
      auto [r, u] = reduce_binary(t);
      CHECK(congruence(t, u) == r);
      CHECK(r.det_g() == t.det_g());
      CHECK(r.content() == t.content());
      CHECK(reduce_binary(r).first == r);
      CHECK(class_representative(t) == r);
      if (t.det_g() > 0) {
        CHECK(0 <= r(0, 1));
        CHECK(r(0, 1) <= r(0, 0));
        CHECK(r(0, 0) <= r(1, 1));
      }
    }
  }

  TEST_CASE("QEXP parsing") {
    auto empty = parse_qexp("QEXP 1\nn=1 N=1 weight=4 chi=trivial ring=Z mode=explicit\n");
    CHECK(empty.empty());
    auto one = parse_qexp("QEXP 1\nn=1 N=1 weight=4 chi=trivial ring=Z mode=explicit\n2 : 240\n");
    CHECK(one.at(HalfIntMat::from_upper(1, {2}))[0] == CycInt(240L));
    std::string text =
        "QEXP 1\nn=2 N=1 weight=4,4 chi=trivial ring=Z mode=class\n0 0 0 : 1\n2 0 0 : 240\n2 1 2 : 13440\n";
    auto f = parse_qexp(text);
    CHECK(write_qexp(f) == text);
    CHECK(f.at(h2(2, -1, 2))[0] == CycInt(13440L));
  }

  TEST_CASE("QEXP errors carry line numbers") {
    auto expect_parse = [](const std::string& s, const std::string& fragment) {
      try {
        parse_qexp(s);
        FAIL("accepted: " << s);
      } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::parse);
        CHECK(std::string(e.what()).find(fragment) != std::string::npos);
      }
    };
    std::string head = "QEXP 1\nn=1 N=1 weight=4 chi=trivial ring=Z mode=explicit\n";
    expect_parse("QEXP 2\n", "line 1");
    expect_parse("QEXP 1\nn=1 N=1 weight=4 chi=trivial ring=Z mode=explicit color=red\n", "line 2");
    expect_parse(head + "-2 : 1\n", "line 3");
    expect_parse(head + "3 : 1\n", "line 3");
    expect_parse(head + "2 0 0 : 240\n", "line 3");
    expect_parse(head + "2 : 1,2\n", "line 3");
    expect_parse(head + "4 : 1\n2 : 1\n", "line 4");
  }

  TEST_CASE("class mode is restricted") {
    CHECK_THROWS(QExpansion(2, 3, {4, 4}, CharacterTuple::trivial(2, 3), {}, StorageMode::class_function));
    CHECK_THROWS(QExpansion(2, 1, {5, 5}, CharacterTuple::trivial(2, 1), {}, StorageMode::class_function));
  }

  TEST_CASE("ring tags") {
    CHECK(CoefficientRing::parse("cyc:12").conductor == 12);
    CHECK(CoefficientRing::parse("Q").kind == CoefficientRing::rationals);
    CHECK_THROWS(CoefficientRing::parse("R"));
    QExpansion f(1, 1, {4}, CharacterTuple::trivial(1, 1), {CoefficientRing::integers, 1},
                 StorageMode::explicit_support);
    CHECK_THROWS(f.set_scalar(HalfIntMat::from_upper(1, {2}), CycInt(BigRat(1, 2))));
  }
}
