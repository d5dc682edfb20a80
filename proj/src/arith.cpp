#include "heckeint/arith.hpp"

#include <cstdlib>

#include "heckeint/error.hpp"

namespace heckeint {

BigInt pow_int(const BigInt& base, unsigned long exp) {
  BigInt r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), exp);
  return r;
}

BigRat pow_rat(const BigRat& base, long exp) {
  if (exp >= 0) {
    BigRat r(pow_int(base.get_num(), exp), pow_int(base.get_den(), exp));
    r.canonicalize();
    return r;
  }
  if (base == 0) fail(ErrorKind::singular, "negative power of zero");
  BigRat r(pow_int(base.get_den(), -exp), pow_int(base.get_num(), -exp));
  r.canonicalize();
  return r;
}

std::string to_string(const BigInt& x) { return x.get_str(); }

std::string to_string(const BigRat& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

BigRat parse_rat(const std::string& text) {
  auto valid_int = [](const std::string& s) {
    if (s.empty()) return false;
    size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    if (i == s.size()) return false;
    for (; i < s.size(); ++i)
      if (s[i] < '0' || s[i] > '9') return false;
    return true;
  };
  auto strip_plus = [](const std::string& s) { return (!s.empty() && s[0] == '+') ? s.substr(1) : s; };
  auto slash = text.find('/');
  if (slash == std::string::npos) {
    if (!valid_int(text)) fail(ErrorKind::parse, "not a rational number: '" + text + "'");
    return BigRat(BigInt(strip_plus(text)));
  }
  std::string num = text.substr(0, slash), den = text.substr(slash + 1);
  if (!valid_int(num) || !valid_int(den)) fail(ErrorKind::parse, "not a rational number: '" + text + "'");
  BigInt d(strip_plus(den));
  if (d == 0) fail(ErrorKind::parse, "zero denominator in '" + text + "'");
  BigRat q(BigInt(strip_plus(num)), d);
  q.canonicalize();
  return q;
}

int64_t gcd64(int64_t a, int64_t b) {
  a = std::llabs(a);
  b = std::llabs(b);
  while (b) {
    int64_t t = a % b;
    a = b;
    b = t;
  }
  return a;
}

int64_t floor_div(int64_t a, int64_t b) {
  int64_t q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

int64_t floor_mod(int64_t a, int64_t b) { return a - floor_div(a, b) * b; }

int64_t pow64(int64_t base, int exp) {
  int64_t r = 1;
  for (int i = 0; i < exp; ++i) r *= base;
  return r;
}

bool is_prime(int64_t n) {
  if (n < 2) return false;
  for (int64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

int64_t euler_phi(int64_t n) {
  int64_t r = n;
  for (auto [q, e] : factor_small(n)) r = r / q * (q - 1);
  return r;
}

int64_t inverse_mod(int64_t a, int64_t m) {
  if (m == 1) return 0;
  int64_t old_r = floor_mod(a, m), r = m, old_s = 1, s = 0;
  while (r) {
    int64_t q = old_r / r, t = old_r - q * r;
    old_r = r;
    r = t;
    t = old_s - q * s;
    old_s = s;
    s = t;
  }
  if (old_r != 1) fail(ErrorKind::invalid_argument, "no inverse of " + std::to_string(a) + " mod " + std::to_string(m));
  return floor_mod(old_s, m);
}

int64_t ext_gcd64(int64_t a, int64_t b, int64_t& x, int64_t& y) {
  if (b == 0) {
    x = a >= 0 ? 1 : -1;
    y = 0;
    return a >= 0 ? a : -a;
  }
  int64_t x1, y1;
  int64_t g = ext_gcd64(b, floor_mod(a, b), x1, y1);
  x = y1;
  y = x1 - floor_div(a, b) * y1;
  return g;
}

std::vector<std::pair<int64_t, int>> factor_small(int64_t n) {
  std::vector<std::pair<int64_t, int>> out;
  n = std::llabs(n);
  for (int64_t d = 2; d * d <= n; ++d) {
    if (n % d) continue;
    int e = 0;
    while (n % d == 0) {
      n /= d;
      ++e;
    }
    out.emplace_back(d, e);
  }
  if (n > 1) out.emplace_back(n, 1);
  return out;
}

std::vector<int64_t> divisors(int64_t n) {
  std::vector<int64_t> out;
  for (int64_t d = 1; d <= n; ++d)
    if (n % d == 0) out.push_back(d);
  return out;
}

int valuation(const BigInt& x, long p) {
  if (x == 0) return kInfiniteValuation;
  BigInt y = abs(x);
  int v = 0;
  while (mpz_divisible_ui_p(y.get_mpz_t(), p)) {
    y /= p;
    ++v;
  }
  return v;
}

}  // namespace heckeint
