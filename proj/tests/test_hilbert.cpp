#include <random>
#include <set>

#include "doctest.h"
#include "heckeint/error.hpp"
#include "heckeint/hilbert.hpp"

using namespace heckeint;

namespace {

QuadIdeal gen(const QuadField& f, int64_t x, int64_t y = 0) { return QuadIdeal::generated(f, {{x, y}}); }

// Norm of x + y w straight from the minimal polynomial of w.
int64_t elem_norm(const QuadField& f, int64_t x, int64_t y) {
  return x * x + f.trace_w() * x * y + f.norm_w() * y * y;
}

}  // namespace

TEST_SUITE("hilbert") {
  TEST_CASE("ideal basics over Q(sqrt 5)") {
    QuadField f(5);
    CHECK(f.discriminant() == 5);
    auto r5 = gen(f, -1, 2);  // -1 + 2w = sqrt 5
    CHECK(r5.norm() == 5);
    CHECK(is_prime_ideal(r5));
    CHECK(r5 * r5 == gen(f, 5));
    CHECK(primes_over(f, 2).size() == 1);
    CHECK(primes_over(f, 2)[0].norm() == 4);
    CHECK(primes_over(f, 11).size() == 2);
    CHECK(primes_over(f, 5).size() == 1);
    CHECK(divisors_of_sum(gen(f, 2), gen(f, 3)) == std::vector<QuadIdeal>{QuadIdeal::unit(f)});
    CHECK(ideals_of_norm(f, 4).size() == 1);
    CHECK(ideals_of_norm(f, 11).size() == 2);
    CHECK(ideals_of_norm(f, 3).empty());
  }

  TEST_CASE("principal ideals have the element norm") {
    std::mt19937_64 rng(61);
    for (int64_t d : {2L, 3L, 5L, 13L}) {
      QuadField f(d);
      for (int it = 0; it < 50; ++it) {
        int64_t x = static_cast<long>(rng() % 21) - 10, y = static_cast<long>(rng() % 21) - 10;
        if (x == 0 && y == 0) continue;
        CHECK(gen(f, x, y).norm() == std::llabs(elem_norm(f, x, y)));
        CHECK(gen(f, x, y).contains(x, y));
      }
    }
  }

  TEST_CASE("ideal multiplication laws on random ideals") {
    std::mt19937_64 rng(67);
    for (int64_t d : {2L, 5L, 7L}) {
      QuadField f(d);
      auto all = ideals_up_to(f, 40);
      REQUIRE(all.size() > 10);
      for (int it = 0; it < 60; ++it) {
        const auto& a = all[rng() % all.size()];
        const auto& b = all[rng() % all.size()];
        const auto& c = all[rng() % all.size()];
        CHECK(a * b == b * a);
        CHECK((a * b) * c == a * (b * c));
        CHECK((a * b).norm() == a.norm() * b.norm());
        CHECK(ideal_quotient(a * b, b) == a);
        CHECK(a.divides(a * b));
        CHECK(ideal_sum(a, b).divides(a));
        CHECK((a * a.conj()) == gen(f, a.norm()));
      }
    }
  }

  TEST_CASE("worked recursion over Q") {
    QuadField q(1);
    IdealCoeffMap c{q, 2, {}, {}};
    c.values[gen(q, 1)] = CycInt(1L);
    c.values[gen(q, 2)] = CycInt(5L);
    c.values[gen(q, 4)] = CycInt(9L);
    auto img = hecke_prime(c, gen(q, 2), {gen(q, 2)});
    CHECK(img.values.at(gen(q, 2)) == CycInt(11L));
    auto needs = hecke_prime_needs(gen(q, 2), {gen(q, 2)});
    CHECK(std::set<QuadIdeal>(needs.begin(), needs.end()) == std::set<QuadIdeal>{gen(q, 1), gen(q, 4)});
  }

  TEST_CASE("missing inputs are reported") {
    QuadField q(1);
    IdealCoeffMap c{q, 2, {}, {}};
    c.values[gen(q, 4)] = CycInt(9L);
    try {
      hecke_prime(c, gen(q, 2), {gen(q, 2)});
      FAIL("missing input accepted");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::missing_indices);
    }
  }

  TEST_CASE("operators commute over Q") {
    std::mt19937_64 rng(71);
    QuadField q(1);
    IdealCoeffMap c{q, 4, {}, {}};
    for (const auto& i : ideals_up_to(q, 2000)) c.values[i] = CycInt(static_cast<long>(rng() % 201) - 100);
    std::vector<QuadIdeal> support;
    for (int64_t a = 1; a <= 27; a *= 3)
      for (int64_t b = 1; b <= 8; b *= 2) support.push_back(gen(q, a * b));
    CHECK(commute_check(c, gen(q, 2), gen(q, 3), support));
    CHECK(commute_check(c, gen(q, 2), gen(q, 2), support));
  }

  TEST_CASE("operators preserve integer data over Q(sqrt 2)") {
    std::mt19937_64 rng(73);
    QuadField f(2);
    IdealCoeffMap c{f, 2, {}, {}};
    for (const auto& i : ideals_up_to(f, 400)) c.values[i] = CycInt(static_cast<long>(rng() % 41) - 20);
    auto support = ideals_up_to(f, 20);
    for (int64_t p : {2L, 7L}) {
      auto img = hecke_prime(c, primes_over(f, p)[0], support);
      CHECK(img.values.size() == support.size());
      for (const auto& [m, v] : img.values) CHECK(v.is_rational());
      for (const auto& [m, v] : img.values) CHECK(v.rational().get_den() == 1);
    }
  }

  TEST_CASE("file round trip and parse errors") {
    QuadField f(5);
    IdealCoeffMap c{f, 3, {}, {}};
    for (const auto& i : ideals_up_to(f, 20)) c.values[i] = CycInt(static_cast<long>(i.norm()) * 3 - 7);
    std::string text = write_hilbert(c);
    auto back = parse_hilbert(text);
    CHECK(back.field == f);
    CHECK(back.k0 == 3);
    CHECK(back.values == c.values);
    CHECK(write_hilbert(back) == text);
    CHECK_THROWS_AS(parse_hilbert("garbage\n"), Error);
    auto cut = text.substr(0, text.rfind('\n', text.size() - 2) + 1) + "1 2\n";
    CHECK_THROWS_AS(parse_hilbert(cut), Error);
  }
}
