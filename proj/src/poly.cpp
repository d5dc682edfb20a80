#include "heckeint/poly.hpp"

#include <algorithm>

namespace heckeint {

bool is_integral(const RatPoly& p) {
  require(p.monic(), "integrality test needs a monic polynomial");
  for (const auto& c : p.coeffs)
    if (!is_integer(c)) return false;
  return true;
}

bool is_integral(const CycPoly& p) {
  require(p.monic(), "integrality test needs a monic polynomial");
  for (const auto& c : p.coeffs)
    if (!c.is_algebraic_integer()) return false;
  return true;
}

namespace {

template <class T, class Fmt, class Neg>
std::string format_any(const std::vector<T>& c, Fmt fmt, Neg negative) {
  std::string out;
  for (size_t i = c.size(); i-- > 0;) {
    if (c[i] == 0 && !(i == 0 && out.empty())) continue;
    bool neg = negative(c[i]);
    std::string body = fmt(c[i], neg);
    if (out.empty()) {
      if (neg) out += "-";
    } else {
      out += neg ? " - " : " + ";
    }
    bool unit = body == "1";
    if (i == 0 || !unit) out += body;
    if (i >= 1) out += "X";
    if (i >= 2) out += "^" + std::to_string(i);
  }
  return out;
}

}  // namespace

std::string format_poly(const RatPoly& p) {
  return format_any(
      p.coeffs, [](const BigRat& x, bool neg) { return to_string(neg ? BigRat(-x) : x); },
      [](const BigRat& x) { return x < 0; });
}

std::string format_poly(const CycPoly& p) {
  return format_any(
      p.coeffs,
      [](const CycInt& x, bool neg) { return neg ? to_string(BigRat(-x.rational())) : x.str(); },
      [](const CycInt& x) { return x.is_rational() && x.rational() < 0; });
}

namespace {

using IntPoly = std::vector<BigInt>;  // constant first

BigInt eval(const IntPoly& p, const BigInt& x) {
  BigInt v = 0;
  for (size_t i = p.size(); i-- > 0;) v = v * x + p[i];
  return v;
}

// Synthetic division by (X - r), exact.
IntPoly deflate(const IntPoly& p, const BigInt& r) {
  IntPoly q(p.size() - 1);
  BigInt carry = 0;
  for (size_t i = p.size(); i-- > 1;) {
    carry = carry * r + p[i];
    q[i - 1] = carry;
  }
  return q;
}

std::vector<BigInt> int_divisors(BigInt n) {
  n = abs(n);
  std::vector<BigInt> out;
  for (BigInt d = 1; d * d <= n; ++d)
    if (n % d == 0) {
      out.push_back(d);
      if (d * d != n) out.push_back(n / d);
    }
  std::sort(out.begin(), out.end());
  return out;
}

RatPoly to_rat_poly(const IntPoly& p) {
  RatPoly r;
  for (const auto& c : p) r.coeffs.push_back(BigRat(c));
  return r;
}

bool perfect_square(const BigInt& x, BigInt& root) {
  if (x < 0) return false;
  root = sqrt(x);
  return root * root == x;
}

}  // namespace

std::vector<RatPoly> factor_small_degree(const RatPoly& p) {
  if (!p.monic() || p.degree() > 4 || p.degree() == 0) return {};
  IntPoly f;
  for (const auto& c : p.coeffs) {
    if (!is_integer(c)) return {};
    f.push_back(c.get_num());
  }
  // Candidate roots divide the constant term; bail out on huge constants.
  std::vector<RatPoly> out;
  while (f.size() > 2) {
    bool found = false;
    if (f[0] == 0) {
      out.push_back(to_rat_poly({0, 1}));
      f.erase(f.begin());
      continue;
    }
    if (abs(f[0]) > BigInt("1000000000000")) break;
    for (const auto& d : int_divisors(f[0])) {
      for (int s : {1, -1}) {
        BigInt r = d * s;
        if (eval(f, r) == 0) {
          out.push_back(to_rat_poly({-r, 1}));
          f = deflate(f, r);
          found = true;
          break;
        }
      }
      if (found) break;
    }
    if (!found) break;
  }
  if (f.size() == 5 && abs(f[0]) <= BigInt("1000000000000")) {
    // X^4 + aX^3 + bX^2 + cX + d = (X^2 + pX + q)(X^2 + rX + s)
    const BigInt &a = f[3], &b = f[2], &c = f[1], &d = f[0];
    for (const auto& q0 : int_divisors(d)) {
      for (int sg : {1, -1}) {
        BigInt q = q0 * sg, s = d / q;
        std::vector<std::pair<BigInt, BigInt>> cands;
        if (q != s) {
          BigInt num = c - a * q, den = s - q;
          if (num % den == 0) cands.push_back({num / den, a - num / den});
        } else if (c == a * q) {
          BigInt disc = a * a - 4 * (b - 2 * q), rt;
          if (perfect_square(disc, rt) && (a + rt) % 2 == 0) cands.push_back({(a + rt) / 2, (a - rt) / 2});
        }
        for (auto& [pp, rr] : cands) {
          if (q + s + pp * rr != b || pp * s + q * rr != c) continue;
          IntPoly f1{q, pp, 1}, f2{s, rr, 1};
          if (f1 > f2) std::swap(f1, f2);
          out.push_back(to_rat_poly(f1));
          out.push_back(to_rat_poly(f2));
          return out;
        }
      }
    }
  }
  if (f.size() > 1) out.push_back(to_rat_poly(f));
  return out;
}

}  // namespace heckeint
