#include "heckeint/hilbert.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <tuple>

#include "heckeint/fourier.hpp"
#include "heckeint/linalg.hpp"

namespace heckeint {

QuadField::QuadField(int64_t d) : d_(d) {
  require(d >= 1, "field parameter d must be positive");
  for (int64_t q = 2; q * q <= d; ++q) require(d % (q * q) != 0, "d must be squarefree");
  if (d == 1) return;
  if (d % 4 == 1) {
    tr_ = 1;
    nm_ = (1 - d) / 4;
  } else {
    tr_ = 0;
    nm_ = -d;
  }
}

int64_t QuadField::discriminant() const {
  if (d_ == 1) return 1;
  return d_ % 4 == 1 ? d_ : 4 * d_;
}

namespace {

using Elt = std::pair<int64_t, int64_t>;  // x + y w

Elt times_w(const QuadField& f, const Elt& e) { return {-f.norm_w() * e.second, e.first + f.trace_w() * e.second}; }

Elt multiply(const QuadField& f, const Elt& u, const Elt& v) {
  return {u.first * v.first - f.norm_w() * u.second * v.second,
          u.first * v.second + u.second * v.first + f.trace_w() * u.second * v.second};
}

}  // namespace

QuadIdeal::QuadIdeal(const QuadField& f, int64_t a, int64_t b, int64_t c) : field_(f), a_(a), b_(b), c_(c) {
  require(a > 0 && c > 0, "ideal needs a, c > 0");
  if (f.degree() == 1) {
    require(b == 0 && c == 1, "ideals of Q are written (a, 0, 1)");
    return;
  }
  require(a % c == 0 && b % c == 0, "ideal needs c | a and c | b");
  require(b >= 0 && b < a, "ideal needs 0 <= b < a");
  Elt wa = times_w(f, {a, 0}), wb = times_w(f, {b, c});
  require(contains(wa.first, wa.second) && contains(wb.first, wb.second),
          "[" + std::to_string(a) + ", " + std::to_string(b) + " + " + std::to_string(c) + "w] is not an ideal");
}

QuadIdeal QuadIdeal::unit(const QuadField& f) { return QuadIdeal(f, 1, 0, 1); }

QuadIdeal QuadIdeal::generated(const QuadField& f, const std::vector<Elt>& gens) {
  if (f.degree() == 1) {
    int64_t g = 0;
    for (const auto& [x, y] : gens) {
      require(y == 0, "element of Q has no w part");
      g = gcd64(g, x);
    }
    require(g != 0, "zero ideal");
    return QuadIdeal(f, std::abs(g), 0, 1);
  }
  IntMat m(2 * gens.size(), 2);
  for (size_t i = 0; i < gens.size(); ++i) {
    Elt w = times_w(f, gens[i]);
    m(2 * i, 0) = gens[i].second;
    m(2 * i, 1) = gens[i].first;
    m(2 * i + 1, 0) = w.second;
    m(2 * i + 1, 1) = w.first;
  }
  IntMat h = hnf_rows(m);
  require(h.rows() == 2, "zero ideal");
  return QuadIdeal(f, h(1, 1).get_si(), h(0, 1).get_si(), h(0, 0).get_si());
}

std::vector<Elt> QuadIdeal::gens() const {
  if (field_.degree() == 1) return {{a_, 0}};
  return {{a_, 0}, {b_, c_}};
}

bool QuadIdeal::contains(int64_t x, int64_t y) const {
  if (field_.degree() == 1) return y == 0 && x % a_ == 0;
  if (y % c_ != 0) return false;
  return (x - (y / c_) * b_) % a_ == 0;
}

bool QuadIdeal::divides(const QuadIdeal& o) const {
  require(field_ == o.field_, "ideals from different fields");
  for (const auto& [x, y] : o.gens())
    if (!contains(x, y)) return false;
  return true;
}

QuadIdeal QuadIdeal::conj() const {
  if (field_.degree() == 1) return *this;
  return generated(field_, {{a_, 0}, {b_ + c_ * field_.trace_w(), -c_}});
}

std::string QuadIdeal::str() const {
  return std::to_string(a_) + " " + std::to_string(b_) + " " + std::to_string(c_);
}

bool QuadIdeal::operator<(const QuadIdeal& o) const {
  return std::make_tuple(norm(), a_, b_, c_) < std::make_tuple(o.norm(), o.a_, o.b_, o.c_);
}

QuadIdeal operator*(const QuadIdeal& x, const QuadIdeal& y) {
  require(x.field() == y.field(), "ideals from different fields");
  const auto& f = x.field();
  std::vector<Elt> g;
  std::vector<Elt> gx{{x.a(), 0}}, gy{{y.a(), 0}};
  if (f.degree() == 2) {
    gx.push_back({x.b(), x.c()});
    gy.push_back({y.b(), y.c()});
  }
  for (const auto& u : gx)
    for (const auto& v : gy) g.push_back(multiply(f, u, v));
  return QuadIdeal::generated(f, g);
}

QuadIdeal ideal_sum(const QuadIdeal& x, const QuadIdeal& y) {
  require(x.field() == y.field(), "ideals from different fields");
  std::vector<Elt> g{{x.a(), 0}, {y.a(), 0}};
  if (x.field().degree() == 2) {
    g.push_back({x.b(), x.c()});
    g.push_back({y.b(), y.c()});
  }
  return QuadIdeal::generated(x.field(), g);
}

QuadIdeal ideal_quotient(const QuadIdeal& x, const QuadIdeal& y) {
  if (!y.divides(x)) fail(ErrorKind::invalid_argument, "ideal " + y.str() + " does not divide " + x.str());
  if (x.field().degree() == 1) return QuadIdeal(x.field(), x.a() / y.a(), 0, 1);
  // x * conj(y) = N(y) * (x / y).
  QuadIdeal q = x * y.conj();
  int64_t n = y.norm();
  std::vector<Elt> g{{q.a(), 0}};
  if (x.field().degree() == 2) g.push_back({q.b(), q.c()});
  for (auto& [u, v] : g) {
    if (u % n != 0 || v % n != 0) fail(ErrorKind::internal, "ideal quotient is not integral");
    u /= n;
    v /= n;
  }
  return QuadIdeal::generated(x.field(), g);
}

std::vector<QuadIdeal> ideals_of_norm(const QuadField& f, int64_t n) {
  require(n >= 1, "norm must be positive");
  if (f.degree() == 1) return {QuadIdeal(f, n, 0, 1)};
  std::vector<QuadIdeal> out;
  for (int64_t c = 1; c * c <= n; ++c) {
    if (n % (c * c)) continue;
    int64_t a = n / (c * c);
    for (int64_t b = 0; b < a; ++b) {
      __int128 nb = static_cast<__int128>(b) * b + static_cast<__int128>(f.trace_w()) * b + f.norm_w();
      if (nb % a == 0) out.emplace_back(f, c * a, c * b, c);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<QuadIdeal> ideals_up_to(const QuadField& f, int64_t bound) {
  std::vector<QuadIdeal> out;
  for (int64_t n = 1; n <= bound; ++n) {
    auto v = ideals_of_norm(f, n);
    out.insert(out.end(), v.begin(), v.end());
  }
  return out;
}

std::vector<QuadIdeal> divisors_of_sum(const QuadIdeal& m, const QuadIdeal& p) {
  QuadIdeal g = ideal_sum(m, p);
  std::vector<QuadIdeal> out;
  for (auto n : divisors(g.norm()))
    for (const auto& a : ideals_of_norm(g.field(), n))
      if (a.divides(g)) out.push_back(a);
  return out;
}

bool is_prime_ideal(const QuadIdeal& p) {
  int64_t n = p.norm();
  if (is_prime(n)) return true;
  if (p.field().degree() == 1) return false;
  for (int64_t q = 2; q * q <= n; ++q)
    if (q * q == n && is_prime(q)) return p == QuadIdeal(p.field(), q, 0, q) && ideals_of_norm(p.field(), q).empty();
  return false;
}

std::vector<QuadIdeal> primes_over(const QuadField& f, int64_t p) {
  require(is_prime(p) && p <= 10000, "primes_over needs a rational prime p <= 10^4");
  if (f.degree() == 1) return {QuadIdeal(f, p, 0, 1)};
  auto v = ideals_of_norm(f, p);
  if (v.empty()) v.emplace_back(f, p, 0, p);
  return v;
}

CycInt IdealCharacter::operator()(const QuadIdeal& a) const {
  if (a.field().degree() == 1) {
    if (level == 1) return CycInt(1L);
    return chi.chars.at(0)(a.a());
  }
  QuadIdeal lv = QuadIdeal::generated(a.field(), {{level, 0}});
  return ideal_sum(a, lv).is_unit() ? CycInt(1L) : CycInt(0L);
}

std::string IdealCharacter::str() const { return chi.chars.empty() ? "trivial" : chi.str(); }

namespace {

// (a, a^-2 m p) pairs the recursion reads for output m.
std::vector<std::pair<QuadIdeal, QuadIdeal>> recursion_terms(const QuadIdeal& m, const QuadIdeal& p) {
  std::vector<std::pair<QuadIdeal, QuadIdeal>> out;
  QuadIdeal mp = m * p;
  for (const auto& a : divisors_of_sum(m, p)) out.push_back({a, ideal_quotient(mp, a * a)});
  return out;
}

}  // namespace

std::vector<QuadIdeal> hecke_prime_needs(const QuadIdeal& p, const std::vector<QuadIdeal>& support) {
  std::set<QuadIdeal> need;
  for (const auto& m : support)
    for (const auto& [a, j] : recursion_terms(m, p)) need.insert(j);
  return {need.begin(), need.end()};
}

IdealCoeffMap hecke_prime(const IdealCoeffMap& c, const QuadIdeal& p, const std::vector<QuadIdeal>& support) {
  require(p.field() == c.field, "prime from a different field");
  if (!is_prime_ideal(p)) fail(ErrorKind::invalid_argument, "ideal " + p.str() + " is not prime");
  require(ideal_sum(p, QuadIdeal::generated(c.field, {{c.chi.level, 0}})).is_unit(),
          "prime must be coprime to the level");
  std::vector<std::string> missing;
  for (const auto& j : hecke_prime_needs(p, support))
    if (!c.values.count(j)) missing.push_back(j.str());
  if (!missing.empty()) {
    std::string msg = "missing " + std::to_string(missing.size()) + " input ideals:";
    for (const auto& s : missing) msg += "\n  " + s;
    fail(ErrorKind::missing_indices, msg);
  }
  IdealCoeffMap out{c.field, c.k0, c.chi, {}};
  for (const auto& m : support) {
    CycInt acc(0L);
    for (const auto& [a, j] : recursion_terms(m, p)) {
      CycInt x = c.chi(a);
      if (x.is_zero()) continue;
      acc += x * CycInt(pow_rat(BigRat(a.norm()), c.k0 - 1)) * c.values.at(j);
    }
    out.values[m] = acc;
  }
  return out;
}

bool commute_check(const IdealCoeffMap& c, const QuadIdeal& p, const QuadIdeal& q,
                   const std::vector<QuadIdeal>& support) {
  auto twice = [&](const QuadIdeal& first, const QuadIdeal& second) {
    auto mid = hecke_prime(c, first, hecke_prime_needs(second, support));
    return hecke_prime(mid, second, support);
  };
  return twice(p, q).values == twice(q, p).values;
}

namespace {

std::map<std::string, std::string> header_fields(const std::string& line, size_t lineno) {
  std::map<std::string, std::string> kv;
  std::istringstream in(line);
  std::string tok;
  while (in >> tok) {
    auto eq = tok.find('=');
    if (eq == std::string::npos || eq == 0)
      fail(ErrorKind::parse, "line " + std::to_string(lineno) + ": malformed header field '" + tok + "'");
    std::string key = tok.substr(0, eq);
    if (kv.count(key)) fail(ErrorKind::parse, "line " + std::to_string(lineno) + ": duplicate header key " + key);
    kv[key] = tok.substr(eq + 1);
  }
  for (const auto& [k, v] : kv)
    if (k != "d" && k != "k0" && k != "N" && k != "chi")
      fail(ErrorKind::parse, "line " + std::to_string(lineno) + ": unknown header key " + k);
  for (const char* need : {"d", "k0"})
    if (!kv.count(need)) fail(ErrorKind::parse, "line " + std::to_string(lineno) + ": missing header key " + need);
  return kv;
}

int64_t to_int64(const std::string& s, size_t lineno) {
  try {
    size_t pos = 0;
    long long v = std::stoll(s, &pos);
    if (pos != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    fail(ErrorKind::parse, "line " + std::to_string(lineno) + ": expected an integer, got '" + s + "'");
  }
}

}  // namespace

IdealCoeffMap parse_hilbert(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  size_t lineno = 0;
  auto next_line = [&]() -> bool {
    while (std::getline(in, line)) {
      ++lineno;
      if (!line.empty() && line.back() == '\r') line.pop_back();
      if (line.empty() || line[0] == '#') continue;
      return true;
    }
    return false;
  };
  if (!next_line() || line != "HILBERT 1") fail(ErrorKind::parse, "line 1: expected 'HILBERT 1'");
  if (!next_line()) fail(ErrorKind::parse, "missing header line");
  auto kv = header_fields(line, lineno);
  IdealCoeffMap m;
  try {
    m.field = QuadField(to_int64(kv["d"], lineno));
  } catch (const Error& e) {
    fail(ErrorKind::parse, "line " + std::to_string(lineno) + ": " + e.what());
  }
  m.k0 = static_cast<int>(to_int64(kv["k0"], lineno));
  m.chi.level = kv.count("N") ? to_int64(kv["N"], lineno) : 1;
  if (m.chi.level < 1) fail(ErrorKind::parse, "line " + std::to_string(lineno) + ": level must be positive");
  std::string chi = kv.count("chi") ? kv["chi"] : "trivial";
  if (m.field.degree() == 1) {
    m.chi.chi = CharacterTuple::parse(chi, 1, m.chi.level);
  } else if (chi != "trivial") {
    fail(ErrorKind::parse, "line " + std::to_string(lineno) + ": quadratic fields take chi=trivial");
  }
  int64_t cond = m.field.degree() == 1 ? m.chi.chi.common_order() : 1;
  QuadIdeal prev;
  bool first = true;
  while (next_line()) {
    auto colon = line.find(':');
    if (colon == std::string::npos) fail(ErrorKind::parse, "line " + std::to_string(lineno) + ": expected 'a b c : coeff'");
    std::istringstream lhs(line.substr(0, colon));
    std::string sa, sb, sc, extra;
    if (!(lhs >> sa >> sb >> sc) || (lhs >> extra))
      fail(ErrorKind::parse, "line " + std::to_string(lineno) + ": expected three ideal entries");
    std::string rhs = line.substr(colon + 1);
    rhs.erase(0, rhs.find_first_not_of(' '));
    rhs.erase(rhs.find_last_not_of(' ') + 1);
    QuadIdeal id;
    CycInt v;
    try {
      id = QuadIdeal(m.field, to_int64(sa, lineno), to_int64(sb, lineno), to_int64(sc, lineno));
      v = parse_coefficient(rhs, cond);
    } catch (const Error& e) {
      fail(ErrorKind::parse, "line " + std::to_string(lineno) + ": " + e.what());
    }
    if (!first && !(prev < id))
      fail(ErrorKind::parse, "line " + std::to_string(lineno) + ": ideals must be strictly increasing");
    prev = id;
    first = false;
    m.values[id] = v;
  }
  return m;
}

std::string write_hilbert(const IdealCoeffMap& m) {
  std::ostringstream out;
  out << "HILBERT 1\n";
  out << "d=" << m.field.d() << " k0=" << m.k0 << " N=" << m.chi.level << " chi=" << m.chi.str() << "\n";
  int64_t cond = 1;
  for (const auto& [id, v] : m.values)
    if (!v.is_rational()) cond = cond / gcd64(cond, v.conductor()) * v.conductor();
  for (const auto& [id, v] : m.values) out << id.str() << " : " << format_coefficient(v, cond) << "\n";
  return out.str();
}

}  // namespace heckeint
