#include "heckeint/integrality.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdio>
#include <set>
#include <sstream>

#include "heckeint/cosets.hpp"
#include "heckeint/hecke.hpp"
#include "heckeint/linalg.hpp"
#include "heckeint/weights.hpp"

namespace heckeint {

std::vector<HalfIntMat> shared_indices(const std::vector<QExpansion>& forms) {
  std::vector<HalfIntMat> out;
  if (forms.empty()) return out;
  for (const auto& [t, v] : forms[0].coefficients()) {
    bool all = true;
    for (size_t i = 1; i < forms.size() && all; ++i) all = forms[i].find(t) != nullptr;
    if (all) out.push_back(t);
  }
  return out;
}

namespace {

void check_compatible(const std::vector<QExpansion>& forms) {
  require(!forms.empty(), "basis must not be empty");
  for (const auto& f : forms) {
    require(f.n() == forms[0].n() && f.dimension() == forms[0].dimension() && f.mode() == forms[0].mode(),
            "basis expansions must share degree, weight dimension and storage mode");
  }
}

// Rows: forms; columns: (index, component) over the first `count` indices.
CycMat coefficient_matrix(const std::vector<QExpansion>& forms, const std::vector<HalfIntMat>& idx, size_t count) {
  size_t dim = forms[0].dimension();
  CycMat m(forms.size(), count * dim);
  for (size_t i = 0; i < forms.size(); ++i)
    for (size_t t = 0; t < count; ++t) {
      const auto& v = forms[i].at(idx[t]);
      for (size_t k = 0; k < dim; ++k) m(i, t * dim + k) = v[k];
    }
  return m;
}

std::string join_coeffs(const std::vector<CycInt>& v) {
  std::string s;
  for (size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + v[i].str();
  return s;
}

}  // namespace

size_t injective_truncation(const std::vector<QExpansion>& basis) {
  check_compatible(basis);
  auto idx = shared_indices(basis);
  size_t r = basis.size(), dim = basis[0].dimension();
  CycMat full = coefficient_matrix(basis, idx, idx.size());
  if (rank(full) < r) {
    auto dep = left_dependency(full);
    fail(ErrorKind::verification,
         "basis is linearly dependent on the shared indices: " + (dep ? join_coeffs(*dep) : std::string("?")));
  }
  // Rank grows monotonically with the prefix, so bisect on it.
  size_t lo = 1, hi = idx.size();
  while (lo < hi) {
    size_t mid = (lo + hi) / 2;
    CycMat part(r, mid * dim);
    for (size_t i = 0; i < r; ++i)
      for (size_t j = 0; j < mid * dim; ++j) part(i, j) = full(i, j);
    if (rank(part) == r)
      hi = mid;
    else
      lo = mid + 1;
  }
  return lo;
}

CycMat hecke_matrix(const std::vector<QExpansion>& basis, const std::vector<QExpansion>& images) {
  check_compatible(basis);
  require(images.size() == basis.size(), "need one image per basis element");
  std::vector<QExpansion> all = basis;
  all.insert(all.end(), images.begin(), images.end());
  check_compatible(all);
  auto idx = shared_indices(all);
  size_t r = basis.size(), dim = basis[0].dimension();
  size_t nstar = injective_truncation(basis);
  if (nstar > idx.size())
    fail(ErrorKind::missing_indices, "images do not cover the first " + std::to_string(nstar) + " indices");
  CycMat f = coefficient_matrix(basis, idx, idx.size());
  CycMat g = coefficient_matrix(images, idx, idx.size());
  CycMat head(r, nstar * dim);
  for (size_t i = 0; i < r; ++i)
    for (size_t j = 0; j < nstar * dim; ++j) head(i, j) = f(i, j);
  CycMat c(r, r);
  for (size_t i = 0; i < r; ++i) {
    std::vector<CycInt> rhs(nstar * dim);
    for (size_t j = 0; j < rhs.size(); ++j) rhs[j] = g(i, j);
    auto x = solve_left(head, rhs);
    if (!x) fail(ErrorKind::verification, "image " + std::to_string(i) + " is not in the span on the first indices");
    for (size_t j = 0; j < r; ++j) c(i, j) = (*x)[j];
    for (size_t col = 0; col < f.cols(); ++col) {
      CycInt acc(0);
      for (size_t j = 0; j < r; ++j) acc += (*x)[j] * f(j, col);
      if (acc != g(i, col))
        fail(ErrorKind::verification, "span is not stable: image " + std::to_string(i) + " differs at index " +
                                          idx[col / dim].str());
    }
  }
  return c;
}

CycMat hecke_matrix(const std::vector<QExpansion>& basis, const HeckeOp& op) {
  std::vector<QExpansion> images;
  for (const auto& f : basis) images.push_back(op(f));
  return hecke_matrix(basis, images);
}

std::string fingerprint(const std::vector<QExpansion>& basis) {
  uint64_t h = 1469598103934665603ULL;
  for (const auto& f : basis) {
    for (unsigned char ch : write_qexp(f)) {
      h ^= ch;
      h *= 1099511628211ULL;
    }
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

namespace {

RatMat rational_part(const CycMat& m) {
  RatMat r(m.rows(), m.cols());
  for (size_t i = 0; i < m.rows(); ++i)
    for (size_t j = 0; j < m.cols(); ++j) r(i, j) = m(i, j).rational();
  return r;
}

// Rows: a Z-basis of {c in Q^r : c F integral}.
RatMat saturated_lattice(const RatMat& f) {
  BigInt den = 1;
  for (const auto& x : f.data()) den = lcm(den, BigInt(x.get_den()));
  IntMat fi(f.rows(), f.cols());
  for (size_t i = 0; i < f.rows(); ++i)
    for (size_t j = 0; j < f.cols(); ++j) fi(i, j) = BigRat(f(i, j) * den).get_num();
  SmithForm sf = smith_form(fi);
  if (sf.rank < f.rows()) fail(ErrorKind::verification, "basis coefficients have deficient rank");
  RatMat lb(f.rows(), f.rows());
  for (size_t i = 0; i < f.rows(); ++i) {
    BigRat scale(den, abs(sf.s(i, i)));
    scale.canonicalize();
    for (size_t j = 0; j < f.rows(); ++j) lb(i, j) = scale * BigRat(sf.u(i, j));
  }
  return lb;
}

std::string ring_tag(const CycMat& c, const std::vector<QExpansion>& basis) {
  int64_t cond = 1;
  auto take = [&](const CycInt& x) {
    if (!x.is_rational()) cond = cond / gcd64(cond, x.conductor()) * x.conductor();
  };
  for (const auto& x : c.data()) take(x);
  for (const auto& f : basis)
    for (const auto& [t, v] : f.coefficients())
      for (const auto& x : v) take(x);
  return cond == 1 ? "Z" : "cyc:" + std::to_string(cond);
}

IntegralityCertificate certify_impl(const CycMat& c, const std::vector<QExpansion>* basis, const std::string& params) {
  require(c.square() && c.rows() > 0, "certify needs a non-empty square matrix");
  IntegralityCertificate cert;
  cert.params = params;
  cert.matrix = c;
  cert.ring = ring_tag(c, basis ? *basis : std::vector<QExpansion>{});
  size_t r = c.rows();
  if (basis) {
    require(basis->size() == r, "basis size must match the matrix");
    cert.truncation = injective_truncation(*basis);
    cert.fingerprint = fingerprint(*basis);
  }
  cert.charpoly = charpoly(c);
  if (!evaluate_at(cert.charpoly, c).is_zero())
    fail(ErrorKind::internal, "characteristic polynomial fails Cayley-Hamilton");
  if (cert.ring == "Z") {
    RatMat cr = rational_part(c);
    RatPoly rp;
    for (const auto& x : cert.charpoly.coeffs) rp.coeffs.push_back(x.rational());
    cert.verdict = is_integral(rp);
    if (cert.verdict) cert.factors = factor_small_degree(rp);
    RatMat lb = RatMat::identity(r);
    if (basis) {
      auto idx = shared_indices(*basis);
      lb = saturated_lattice(rational_part(coefficient_matrix(*basis, idx, idx.size())));
    }
    RatMat image = lb * cr * inverse(lb);
    cert.lattice_checked = true;
    cert.lattice_stable = true;
    for (size_t i = 0; i < r && cert.lattice_stable; ++i)
      for (size_t j = 0; j < r; ++j)
        if (!is_integer(image(i, j))) {
          cert.lattice_stable = false;
          for (size_t k = 0; k < r; ++k) cert.witness.push_back(lb(i, k));
          break;
        }
  } else {
    cert.verdict = is_integral(cert.charpoly);
  }
  return cert;
}

}  // namespace

IntegralityCertificate certify(const CycMat& c, const std::vector<QExpansion>& basis, const std::string& params) {
  return certify_impl(c, &basis, params);
}

IntegralityCertificate certify(const CycMat& c, const std::string& params) { return certify_impl(c, nullptr, params); }

std::string IntegralityCertificate::text() const {
  std::ostringstream out;
  out << "CERTIFICATE 1\n";
  if (!params.empty()) out << "params: " << params << "\n";
  out << "ring: " << ring << "\n";
  out << "truncation: " << truncation << "\n";
  if (!fingerprint.empty()) out << "fingerprint: " << fingerprint << "\n";
  out << "matrix:\n";
  for (size_t i = 0; i < matrix.rows(); ++i) {
    out << " ";
    for (size_t j = 0; j < matrix.cols(); ++j) out << " " << matrix(i, j).str();
    out << "\n";
  }
  out << "charpoly: " << format_poly(charpoly) << "\n";
  out << "coefficients:";
  for (const auto& x : charpoly.coeffs) out << " " << x.str();
  out << "\n";
  if (!factors.empty()) {
    out << "factors:";
    for (size_t i = 0; i < factors.size(); ++i) out << (i ? " | " : " ") << format_poly(factors[i]);
    out << "\n";
  }
  if (!lattice_checked) {
    out << "lattice: skipped\n";
  } else if (lattice_stable) {
    out << "lattice: stable\n";
  } else {
    out << "lattice: unstable witness=";
    for (size_t i = 0; i < witness.size(); ++i) out << (i ? "," : "") << to_string(witness[i]);
    out << "\n";
  }
  out << "INTEGRAL: " << (verdict ? "yes" : "no") << "\n";
  return out.str();
}

int64_t fb_value(int n, int kn, int a, int b) {
  return static_cast<int64_t>(2 * n - a - 2 * b) * kn - static_cast<int64_t>(n) * (n + 1) +
         static_cast<int64_t>(b) * (a + b + 1);
}

int64_t fb_zero_printed(int n, int kn, int b) {
  return 2LL * (n - b) * kn - static_cast<int64_t>(n - b) * (n + b) - (n - b) - kn + b;
}

namespace {

std::string fb_tag(int n, int kn, int a, int b) {
  return "n=" + std::to_string(n) + " k_n=" + std::to_string(kn) + " a=" + std::to_string(a) +
         " b=" + std::to_string(b);
}

// b(a+b+1) + 2(sum k - n(n+1)/2) - (sum_{n-a-b<l<=n-b} k_l + 2 sum_{l>n-b} k_l) + n(n-k_n+1)[k_n<=n].
int64_t full_margin(const HighestWeight& k, int a, int b) {
  int n = static_cast<int>(k.size()), kn = k.back();
  int64_t sum = 0, drop = 0;
  for (int l = 1; l <= n; ++l) {
    sum += k[l - 1];
    if (l > n - a - b && l <= n - b) drop += k[l - 1];
    if (l > n - b) drop += 2LL * k[l - 1];
  }
  int64_t v = static_cast<int64_t>(b) * (a + b + 1) + 2 * sum - static_cast<int64_t>(n) * (n + 1) - drop;
  if (kn <= n) v += static_cast<int64_t>(n) * (n - kn + 1);
  return v;
}

}  // namespace

ScanReport check_Fb(int n, int kn, int spread) {
  require(n >= 1 && kn >= 0 && spread >= 0, "check_Fb needs n >= 1, k_n >= 0, spread >= 0");
  ScanReport rep;
  int64_t floor_all = kn <= n ? -static_cast<int64_t>(n) * (n - kn + 1) : 0;
  for (int b = 0; b <= n; ++b) {
    int64_t best = INT64_MAX;
    int arg = -1;
    for (int a = 0; a + b <= n; ++a) {
      ++rep.checked;
      int64_t v = fb_value(n, kn, a, b);
      if (v < best) {
        best = v;
        arg = a;
      }
      if (v < floor_all) rep.violations.push_back(fb_tag(n, kn, a, b) + ": F below the normalization bound");
    }
    int64_t at_end = fb_value(n, kn, n - b, b);
    if (at_end != static_cast<int64_t>(n - b) * (kn - n - 1))
      rep.violations.push_back(fb_tag(n, kn, n - b, b) + ": F_b(n-b) != (n-b)(k_n-n-1)");
    if (kn > n) {
      if (best != at_end || at_end < 0)
        rep.violations.push_back(fb_tag(n, kn, arg, b) + ": minimum not at a=n-b or negative");
    } else if (b >= kn) {
      if (best != fb_value(n, kn, 0, b))
        rep.violations.push_back(fb_tag(n, kn, arg, b) + ": minimum not at a=0 for b >= k_n");
      if (fb_value(n, kn, 0, b) < -static_cast<int64_t>(n - kn) * (n - kn + 1))
        rep.violations.push_back(fb_tag(n, kn, 0, b) + ": F_b(0) below -(n-k_n)(n-k_n+1)");
      if (fb_zero_printed(n, kn, b) != fb_value(n, kn, 0, b))
        rep.notes.push_back(fb_tag(n, kn, 0, b) + ": printed F_b(0) = " + std::to_string(fb_zero_printed(n, kn, b)) +
                            ", direct = " + std::to_string(fb_value(n, kn, 0, b)));
    } else {
      if (best != at_end) rep.violations.push_back(fb_tag(n, kn, arg, b) + ": minimum not at a=n-b for b < k_n");
      if (at_end < -static_cast<int64_t>(n) * (n - kn + 1))
        rep.violations.push_back(fb_tag(n, kn, n - b, b) + ": F_b(n-b) below -n(n-k_n+1)");
    }
  }
  // Full inequality for dominant weights k_1 >= ... >= k_n with k_1 <= k_n + spread.
  HighestWeight k(n, kn);
  auto rec = [&](auto&& self, int i) -> void {
    if (i >= 0) {
      for (int v = k[i + 1]; v <= kn + spread; ++v) {
        k[i] = v;
        self(self, i - 1);
      }
      return;
    }
    for (int b = 0; b <= n; ++b)
      for (int a = 0; a + b <= n; ++a) {
        ++rep.checked;
        int64_t m = full_margin(k, a, b);
        int64_t lower = fb_value(n, kn, a, b) + (kn <= n ? static_cast<int64_t>(n) * (n - kn + 1) : 0);
        if (m < 0 || m < lower) {
          std::string w;
          for (int x : k) w += (w.empty() ? "" : ",") + std::to_string(x);
          rep.violations.push_back("k=(" + w + ") a=" + std::to_string(a) + " b=" + std::to_string(b) +
                                   ": weight inequality margin " + std::to_string(m));
        }
      }
  };
  rec(rec, n - 2);
  return rep;
}

ScanReport check_weight_exponent(int n, const HighestWeight& k, int delta, bool matrices, int64_t p) {
  validate_weight(k);
  require(static_cast<int>(k.size()) == n, "weight must have n entries");
  require(delta >= 1, "delta must be positive");
  ScanReport rep;
  int kn = k.back();
  for (int j = 1; j <= n; ++j) {
    ++rep.checked;
    int margin = k[j - 1] - kn + j - 1;
    if (margin < 0) rep.violations.push_back("j=" + std::to_string(j) + ": margin " + std::to_string(margin));
    if (kn < n && (n - kn) + k[j - 1] + (-n + j - 1) != margin)
      rep.violations.push_back("j=" + std::to_string(j) + ": t + k_j - n + j - 1 != k_j - k_n + j - 1");
  }
  if (!matrices) return rep;
  TensorModel model(k);
  BigInt pp(static_cast<long>(p));
  BigInt nu = pow_int(pp, delta);
  long wexp = -static_cast<long>(n) * (n + 1) / 2;
  for (int x : k) wexp += x;
  BigRat scale = pow_rat(BigRat(nu), wexp) * BigRat(pow_int(pp, norm_factor(n, kn, OperatorKind::t_p, delta)));
  for (const auto& blk : v_blocks(n, p, delta, 1)) {
    ++rep.checked;
    BigRat gauss(b_count_formula(blk.d));
    RatMat m = model.rho(inverse(to_rat(blk.d))).scaled(scale * gauss);
    if (!is_integral(m)) rep.violations.push_back("D=" + format_matrix(blk.d) + ": operator not integral");
  }
  return rep;
}

namespace {

bool is_square(const BigInt& v, BigInt& r) {
  if (v < 0) return false;
  r = sqrt(v);
  return r * r == v;
}

// All roots of the monic polynomial (constant first) within |z| <= m, numerically.
bool roots_bounded_numeric(const std::vector<int64_t>& c, int64_t m) {
  size_t d = c.size() - 1;
  using C = std::complex<long double>;
  std::vector<C> z(d);
  for (size_t i = 0; i < d; ++i) z[i] = std::pow(C(0.4L, 0.9L), static_cast<long double>(i));
  auto eval = [&](C x) {
    C r = 1;
    for (size_t i = d; i-- > 0;) r = r * x + C(static_cast<long double>(c[i]));
    return r;
  };
  for (int it = 0; it < 2000; ++it) {
    long double delta = 0;
    for (size_t i = 0; i < d; ++i) {
      C den = 1;
      for (size_t j = 0; j < d; ++j)
        if (j != i) den *= z[i] - z[j];
      C step = eval(z[i]) / den;
      z[i] -= step;
      delta = std::max(delta, std::abs(step));
    }
    if (delta < 1e-15L) break;
  }
  for (const auto& r : z)
    if (std::abs(r) > static_cast<long double>(m) + 1e-9L) return false;
  return true;
}

}  // namespace

CountE count_E(int64_t m, int d) {
  require(m >= 1 && d >= 1, "count_E needs M >= 1 and d >= 1");
  if (d > 4) fail(ErrorKind::cap_exceeded, "count_E supports d <= 4");
  CountE out;
  out.bound = pow_int(BigInt(16 * m), static_cast<unsigned long>(d) * d);
  out.exact = d <= 2;
  // Degree e monic polynomials: |c_{e-j}| <= C(e, j) M^j.
  uint64_t work = 0;
  for (int e = 1; e <= d; ++e) {
    std::vector<int64_t> bound(e);
    for (int j = 1; j <= e; ++j) {
      BigInt b = 1;
      for (int t = 0; t < j; ++t) b = b * (e - t) / (t + 1);
      b *= pow_int(BigInt(m), j);
      if (!b.fits_slong_p() || b > 100000) fail(ErrorKind::cap_exceeded, "count_E coefficient range too large");
      bound[e - j] = b.get_si();
    }
    std::vector<int64_t> c(e + 1, 0);
    c[e] = 1;
    auto rec = [&](auto&& self, int i) -> void {
      if (i < 0) {
        if (++work > 50000000ULL) fail(ErrorKind::cap_exceeded, "count_E enumeration cap");
        bool ok = false;
        if (e == 1) {
          ok = std::abs(c[0]) <= m;
        } else if (e == 2) {
          BigInt disc = BigInt(c[1]) * c[1] - 4 * BigInt(c[0]), r;
          if (is_square(disc, r)) return;  // reducible
          if (disc < 0) {
            ok = c[0] <= m * m;
          } else {
            int64_t room = 2 * m - std::abs(c[1]);
            ok = room >= 0 && disc <= BigInt(room) * room;
          }
        } else {
          RatPoly p;
          for (auto x : c) p.coeffs.push_back(BigRat(x));
          if (factor_small_degree(p).size() != 1) return;
          ok = roots_bounded_numeric(c, m);
        }
        if (ok) out.count += e;
        return;
      }
      for (int64_t v = -bound[i]; v <= bound[i]; ++v) {
        c[i] = v;
        self(self, i - 1);
      }
    };
    rec(rec, e - 1);
  }
  return out;
}

}  // namespace heckeint
