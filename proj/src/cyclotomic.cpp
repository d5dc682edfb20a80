#include "heckeint/cyclotomic.hpp"

#include <map>
#include <mutex>
#include <numeric>

#include "heckeint/error.hpp"

namespace heckeint {

namespace {

std::vector<BigInt> poly_divide_exact(std::vector<BigInt> num, const std::vector<BigInt>& den) {
  // den is monic
  size_t dn = den.size() - 1;
  std::vector<BigInt> q(num.size() - dn, BigInt(0));
  for (size_t i = num.size(); i-- > dn;) {
    BigInt c = num[i];
    q[i - dn] = c;
    if (c == 0) continue;
    for (size_t j = 0; j <= dn; ++j) num[i - dn + j] -= c * den[j];
  }
  return q;
}

int64_t lcm64(int64_t a, int64_t b) { return a / gcd64(a, b) * b; }

}  // namespace

const std::vector<BigInt>& cyclotomic_polynomial(int64_t n) {
  static std::mutex mu;
  static std::map<int64_t, std::vector<BigInt>> cache;
  require(n >= 1, "cyclotomic polynomial of non-positive order");
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;
  }
  std::vector<BigInt> p(n + 1, BigInt(0));
  p[0] = -1;
  p[n] = 1;
  for (int64_t d = 1; d < n; ++d)
    if (n % d == 0) p = poly_divide_exact(p, cyclotomic_polynomial(d));
  std::lock_guard<std::mutex> lock(mu);
  return cache.emplace(n, std::move(p)).first->second;
}

namespace {

// Reduces sum c_i x^i (any length) modulo Phi_n.
std::vector<BigRat> reduce_mod_phi(std::vector<BigRat> c, int64_t n) {
  std::vector<BigRat> folded(n, BigRat(0));
  for (size_t i = 0; i < c.size(); ++i) folded[i % n] += c[i];
  const auto& phi = cyclotomic_polynomial(n);
  size_t d = phi.size() - 1;
  for (size_t i = folded.size(); i-- > d;) {
    if (folded[i] == 0) continue;
    BigRat f = folded[i];
    for (size_t j = 0; j <= d; ++j) folded[i - d + j] -= f * BigRat(phi[j]);
  }
  folded.resize(d);
  return folded;
}

}  // namespace

CycInt CycInt::zeta(int64_t n, int64_t k) {
  require(n >= 1, "zeta of non-positive order");
  std::vector<BigRat> c(n, BigRat(0));
  c[floor_mod(k, n)] = 1;
  CycInt z;
  z.conductor_ = n;
  z.coords_ = reduce_mod_phi(std::move(c), n);
  z.normalize();
  return z;
}

CycInt CycInt::from_coords(int64_t n, std::vector<BigRat> coords) {
  require(n >= 1, "non-positive conductor");
  require(static_cast<int64_t>(coords.size()) <= n, "too many cyclotomic coordinates");
  CycInt z;
  z.conductor_ = n;
  z.coords_ = reduce_mod_phi(std::move(coords), n);
  z.normalize();
  return z;
}

void CycInt::normalize() {
  bool rational = true;
  for (size_t i = 1; i < coords_.size(); ++i)
    if (coords_[i] != 0) {
      rational = false;
      break;
    }
  if (rational) {
    BigRat v = coords_.empty() ? BigRat(0) : coords_[0];
    conductor_ = 1;
    coords_.assign(1, v);
  }
}

bool CycInt::is_zero() const { return is_rational() && coords_[0] == 0; }

const BigRat& CycInt::rational() const {
  if (!is_rational()) fail(ErrorKind::invalid_argument, "cyclotomic value " + str() + " is not rational");
  return coords_[0];
}

bool CycInt::is_algebraic_integer() const {
  for (const auto& c : coords_)
    if (c.get_den() != 1) return false;
  return true;
}

CycInt CycInt::embed(int64_t m) const {
  CycInt r;
  r.coords_ = coords_in(m);
  r.conductor_ = m;
  r.normalize();
  return r;
}

CycInt CycInt::conj() const {
  if (is_rational()) return *this;
  int64_t n = conductor_;
  std::vector<BigRat> c(n, BigRat(0));
  for (size_t i = 0; i < coords_.size(); ++i) c[floor_mod(-static_cast<int64_t>(i), n)] += coords_[i];
  CycInt r;
  r.conductor_ = n;
  r.coords_ = reduce_mod_phi(std::move(c), n);
  r.normalize();
  return r;
}

std::vector<BigRat> CycInt::coords_in(int64_t m) const {
  require(m >= 1 && m % conductor_ == 0, "cannot embed conductor " + std::to_string(conductor_) + " into " + std::to_string(m));
  if (m == conductor_) return coords_;
  int64_t step = m / conductor_;
  std::vector<BigRat> c(m, BigRat(0));
  for (size_t i = 0; i < coords_.size(); ++i) c[i * step] = coords_[i];
  return reduce_mod_phi(std::move(c), m);
}

CycInt& CycInt::operator+=(const CycInt& o) {
  if (o.is_rational()) {
    coords_[0] += o.coords_[0];
    normalize();
    return *this;
  }
  int64_t m = lcm64(conductor_, o.conductor_);
  std::vector<BigRat> a = coords_in(m), b = o.coords_in(m);
  for (size_t i = 0; i < a.size(); ++i) a[i] += b[i];
  conductor_ = m;
  coords_ = std::move(a);
  normalize();
  return *this;
}

CycInt& CycInt::operator-=(const CycInt& o) { return *this += -o; }

CycInt CycInt::operator-() const {
  CycInt r = *this;
  for (auto& c : r.coords_) c = -c;
  return r;
}

CycInt& CycInt::operator*=(const CycInt& o) {
  if (o.is_rational()) {
    for (auto& c : coords_) c *= o.coords_[0];
    normalize();
    return *this;
  }
  if (is_rational()) {
    BigRat s = coords_[0];
    *this = o;
    for (auto& c : coords_) c *= s;
    normalize();
    return *this;
  }
  int64_t m = lcm64(conductor_, o.conductor_);
  std::vector<BigRat> a = coords_in(m), b = o.coords_in(m);
  std::vector<BigRat> prod(a.size() + b.size(), BigRat(0));
  for (size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (size_t j = 0; j < b.size(); ++j) prod[i + j] += a[i] * b[j];
  }
  conductor_ = m;
  coords_ = reduce_mod_phi(std::move(prod), m);
  normalize();
  return *this;
}

CycInt CycInt::inverse() const {
  if (is_zero()) fail(ErrorKind::singular, "inverse of zero cyclotomic element");
  if (is_rational()) return CycInt(BigRat(1) / coords_[0]);
  // Solve (multiplication-by-this) x = 1 in the power basis.
  size_t d = coords_.size();
  std::vector<std::vector<BigRat>> a(d, std::vector<BigRat>(d + 1, BigRat(0)));
  for (size_t j = 0; j < d; ++j) {
    CycInt col = *this * CycInt::zeta(conductor_, static_cast<int64_t>(j));
    std::vector<BigRat> colf = col.coords_in(conductor_);
    for (size_t i = 0; i < d; ++i) a[i][j] = colf[i];
  }
  a[0][d] = 1;
  for (size_t c = 0; c < d; ++c) {
    size_t piv = c;
    while (piv < d && a[piv][c] == 0) ++piv;
    if (piv == d) fail(ErrorKind::internal, "cyclotomic multiplication matrix singular");
    std::swap(a[piv], a[c]);
    BigRat s = 1 / a[c][c];
    for (auto& x : a[c]) x *= s;
    for (size_t r = 0; r < d; ++r) {
      if (r == c || a[r][c] == 0) continue;
      BigRat f = a[r][c];
      for (size_t k = c; k <= d; ++k) a[r][k] -= f * a[c][k];
    }
  }
  std::vector<BigRat> x(d);
  for (size_t i = 0; i < d; ++i) x[i] = a[i][d];
  return from_coords(conductor_, std::move(x));
}

bool CycInt::operator==(const CycInt& o) const {
  if (conductor_ == o.conductor_) return coords_ == o.coords_;
  if (is_rational() || o.is_rational()) return false;
  int64_t m = lcm64(conductor_, o.conductor_);
  return coords_in(m) == o.coords_in(m);
}

std::string CycInt::str() const {
  if (is_rational()) return to_string(coords_[0]);
  std::string s = "[";
  for (size_t i = 0; i < coords_.size(); ++i) s += (i ? "," : "") + to_string(coords_[i]);
  return s + "]";
}

CycInt root_sum(const std::vector<int64_t>& counts) {
  int64_t m = static_cast<int64_t>(counts.size());
  require(m >= 1, "root sum needs a positive modulus");
  const auto& phi = cyclotomic_polynomial(m);
  size_t d = phi.size() - 1;
  std::vector<std::pair<size_t, BigInt>> terms;
  for (size_t j = 0; j < d; ++j)
    if (phi[j] != 0) terms.push_back({j, phi[j]});
  std::vector<BigInt> c(counts.size());
  for (size_t i = 0; i < counts.size(); ++i) c[i] = static_cast<long>(counts[i]);
  for (size_t i = c.size(); i-- > d;) {
    if (c[i] == 0) continue;
    BigInt f = c[i];
    c[i] = 0;
    for (const auto& [j, a] : terms) c[i - d + j] -= f * a;
  }
  std::vector<BigRat> coords(d);
  for (size_t i = 0; i < d; ++i) coords[i] = BigRat(c[i]);
  return CycInt::from_coords(m, std::move(coords));
}

CycInt cyclotomic_op(const CycInt& a, const CycInt& b, CycOp op) {
  switch (op) {
    case CycOp::add: return a + b;
    case CycOp::mul: return a * b;
    case CycOp::conj: return a.conj();
    case CycOp::embed: return a.embed(b.conductor());
  }
  fail(ErrorKind::internal, "unknown cyclotomic operation");
}

}  // namespace heckeint
