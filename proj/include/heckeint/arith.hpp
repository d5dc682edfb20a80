#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <vector>

namespace heckeint {

using BigInt = mpz_class;
using BigRat = mpq_class;

inline bool is_integer(const BigRat& q) { return q.get_den() == 1; }

BigInt pow_int(const BigInt& base, unsigned long exp);
BigRat pow_rat(const BigRat& base, long exp);

std::string to_string(const BigInt& x);
std::string to_string(const BigRat& q);

/// Parses "123", "-7" or "a/b"; the result is canonicalized.
BigRat parse_rat(const std::string& text);

// Small-integer number theory on machine words.
int64_t gcd64(int64_t a, int64_t b);
int64_t floor_div(int64_t a, int64_t b);
int64_t floor_mod(int64_t a, int64_t b);
int64_t pow64(int64_t base, int exp);
bool is_prime(int64_t n);
int64_t euler_phi(int64_t n);
/// Inverse of a modulo m in [0, m); throws when gcd(a, m) != 1.
int64_t inverse_mod(int64_t a, int64_t m);
/// g = gcd(a, b) >= 0 with x a + y b = g.
int64_t ext_gcd64(int64_t a, int64_t b, int64_t& x, int64_t& y);
std::vector<std::pair<int64_t, int>> factor_small(int64_t n);
std::vector<int64_t> divisors(int64_t n);
/// p-adic valuation; returns a large sentinel for zero.
int valuation(const BigInt& x, long p);

constexpr int kInfiniteValuation = 1 << 28;

}  // namespace heckeint
