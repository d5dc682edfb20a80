#include "heckeint/cosets.hpp"

#include <algorithm>
#include <map>

#include "heckeint/error.hpp"
#include "heckeint/linalg.hpp"

namespace heckeint {

IntMat symplectic_form(int n) {
  IntMat j(2 * n, 2 * n);
  for (int i = 0; i < n; ++i) {
    j(i, n + i) = 1;
    j(n + i, i) = -1;
  }
  return j;
}

bool is_similitude(const IntMat& g, const BigInt& nu) {
  if (!g.square() || g.rows() % 2) return false;
  IntMat j = symplectic_form(static_cast<int>(g.rows() / 2));
  return g.transpose() * j * g == j.scaled(nu);
}

bool in_congruence_set(const IntMat& g, int64_t nu, int64_t level) {
  size_t n = g.rows() / 2;
  BigInt mod(static_cast<long>(level));
  for (size_t i = 0; i < 2 * n; ++i)
    for (size_t j = 0; j < 2 * n; ++j) {
      BigInt want = 0;
      if (i == j) want = i < n ? 1 : nu;
      BigInt diff = g(i, j) - want;
      if (diff % mod != 0) return false;
    }
  return true;
}

IntMat gj_matrix(int n, int j, int64_t m, int64_t level) {
  require(n >= 1 && j >= 1 && j <= n, "g_j needs 1 <= j <= n");
  require(level >= 1, "level must be positive");
  require(gcd64(m, level) == 1, "g_j needs m coprime to the level");
  int64_t mm = floor_mod(m, level), inv = inverse_mod(mm, level);
  // smallest max entry, then lexicographic (a, b, c, d), all entries >= 0
  int64_t a = 1, b = 0, c = 0, d = 1;
  bool found = false;
  for (int64_t bound = 1; !found; ++bound) {
    for (int64_t x = 0; x <= bound && !found; ++x) {
      if (floor_mod(x - inv, level)) continue;
      for (int64_t y = 0; y <= bound && !found; y += level)
        for (int64_t z = 0; z <= bound && !found; z += level)
          for (int64_t w = 0; w <= bound && !found; ++w) {
            if (floor_mod(w - mm, level)) continue;
            if (std::max({x, y, z, w}) != bound || x * w - y * z != 1) continue;
            a = x, b = y, c = z, d = w;
            found = true;
          }
    }
  }
  IntMat g = IntMat::identity(2 * n);
  for (int i = 0; i < j; ++i) {
    g(i, i) = a;
    g(i, n + i) = b;
    g(n + i, i) = c;
    g(n + i, n + i) = d;
  }
  return g;
}

IntMat lift_sl(const IntMat& x, int64_t m) {
  size_t n = x.rows();
  require(x.square(), "lift_sl needs a square matrix");
  if (m == 1) return IntMat::identity(n);
  SmallMat y(n, n);
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) {
      BigInt r;
      mpz_fdiv_r_ui(r.get_mpz_t(), x(i, j).get_mpz_t(), m);
      y(i, j) = r.get_si();
    }
  IntMat linv = IntMat::identity(n), rinv = IntMat::identity(n);
  // row_i += c row_j on y; linv absorbs the inverse on the right
  auto row_op = [&](size_t i, size_t j, int64_t c) {
    c = floor_mod(c, m);
    if (!c) return;
    for (size_t k = 0; k < n; ++k) y(i, k) = floor_mod(y(i, k) + static_cast<__int128>(c) * y(j, k) % m, m);
    for (size_t k = 0; k < n; ++k) linv(k, j) -= linv(k, i) * c;
  };
  // col_j += c col_i on y; rinv absorbs the inverse on the left
  auto col_op = [&](size_t j, size_t i, int64_t c) {
    c = floor_mod(c, m);
    if (!c) return;
    for (size_t k = 0; k < n; ++k) y(k, j) = floor_mod(y(k, j) + static_cast<__int128>(c) * y(k, i) % m, m);
    for (size_t k = 0; k < n; ++k) rinv(i, k) -= rinv(j, k) * c;
  };
  for (size_t k = 0; k + 1 < n; ++k) {
    for (;;) {
      size_t best = n;
      int nonzero = 0;
      for (size_t i = k; i < n; ++i)
        if (y(i, k)) {
          ++nonzero;
          if (best == n || y(i, k) < y(best, k)) best = i;
        }
      require(nonzero > 0, "lift_sl: determinant is not a unit");
      if (nonzero == 1) break;
      for (size_t i = k; i < n; ++i)
        if (i != best && y(i, k)) row_op(i, best, -(y(i, k) / y(best, k)));
    }
    size_t r = k;
    while (!y(r, k)) ++r;
    if (r != k) {
      row_op(k, r, 1);
      row_op(r, k, -1);
    }
    int64_t g = y(k, k);
    require(gcd64(g, m) == 1, "lift_sl: determinant is not a unit");
    row_op(k + 1, k, 1);
    row_op(k, k + 1, inverse_mod(g, m) - 1);
    row_op(k + 1, k, -g);
    for (size_t i = k + 1; i < n; ++i) row_op(i, k, -y(i, k));
    for (size_t j = k + 1; j < n; ++j) col_op(j, k, -y(k, j));
  }
  require(floor_mod(y(n - 1, n - 1) - 1, m) == 0, "lift_sl: determinant is not 1 modulo m");
  IntMat h = linv * rinv;
  if (determinant(h) != 1) fail(ErrorKind::internal, "lift_sl produced a non-special matrix");
  return h;
}

namespace {

std::vector<SmallMat> hnfs_of_type(const std::vector<int>& beta, int64_t p) {
  size_t n = beta.size();
  int total = 0;
  for (int b : beta) total += b;
  std::vector<int64_t> want;
  for (int b : beta) want.push_back(pow64(p, b));
  std::sort(want.begin(), want.end());
  std::vector<SmallMat> out;
  std::vector<int> e(n);
  SmallMat h(n, n);
  auto fill = [&](auto&& self, size_t idx) -> void {
    if (idx == n * (n - 1) / 2) {
      auto d = smith_diagonal(h);
      if (d == want) out.push_back(h);
      return;
    }
    // idx -> (i, j) with i < j, row-major
    size_t i = 0, j = 0, k = idx;
    for (i = 0; i < n; ++i) {
      size_t len = n - i - 1;
      if (k < len) {
        j = i + 1 + k;
        break;
      }
      k -= len;
    }
    for (int64_t v = 0; v < h(j, j); ++v) {
      h(i, j) = v;
      self(self, idx + 1);
    }
    h(i, j) = 0;
  };
  auto diag = [&](auto&& self, size_t i, int left) -> void {
    if (i == n) {
      if (left == 0) fill(fill, 0);
      return;
    }
    for (int x = 0; x <= std::min(left, beta.back()); ++x) {
      e[i] = x;
      h(i, i) = pow64(p, x);
      self(self, i + 1, left - x);
    }
  };
  diag(diag, 0, total);
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

std::vector<IntMat> sl_cosets(const std::vector<int>& beta, int64_t p, int64_t level, int64_t seed) {
  require(!beta.empty(), "empty exponent vector");
  require(is_prime(p), "p must be prime");
  require(level >= 1, "level must be positive");
  require(level % p != 0, "p must not divide the level");
  for (size_t i = 0; i < beta.size(); ++i) {
    require(beta[i] >= 0, "exponents must be non-negative");
    if (i) require(beta[i] >= beta[i - 1], "exponents must be non-decreasing");
  }
  size_t n = beta.size();
  std::vector<BigInt> sdiag;
  for (int b : beta) sdiag.push_back(pow_int(BigInt(static_cast<long>(p)), b));
  IntMat s = IntMat::diagonal(sdiag);
  int e = beta.back() - beta.front();
  int64_t pe = pow64(p, e), modulus = level * pe;
  std::vector<IntMat> out;
  for (const auto& hs : hnfs_of_type(beta, p)) {
    IntMat h = to_big(hs);
    SmithForm f = snf(h);
    if (f.s != s) fail(ErrorKind::internal, "unexpected Smith form for " + format_matrix(h));
    IntMat r = to_int(inverse(to_rat(f.v)));
    if (determinant(r) < 0)
      for (size_t j = 0; j < n; ++j) r(0, j) = -r(0, j);
    // X == R^-1 (mod N), X == 1 (mod p^e)
    IntMat rinv = to_int(inverse(to_rat(r)));
    int64_t pe_inv = inverse_mod(floor_mod(pe, level), level);
    IntMat x = IntMat::identity(n);
    for (size_t i = 0; i < n; ++i)
      for (size_t j = 0; j < n; ++j) {
        BigInt t = rinv(i, j) - (i == j ? 1 : 0);
        BigInt y;
        mpz_fdiv_r_ui(y.get_mpz_t(), BigInt(t * pe_inv).get_mpz_t(), level);
        x(i, j) += y * pe;
      }
    IntMat lift = lift_sl(x, modulus);
    if (seed != 0 && n >= 2) {
      IntMat t = IntMat::identity(n);
      t(0, 1) = BigInt(static_cast<long>(seed)) * modulus;
      lift = lift * t;
    }
    IntMat rr = lift * r;
    if (hnf_rows(s * rr) != h) fail(ErrorKind::internal, "coset lift left its coset");
    for (size_t i = 0; i < n; ++i)
      for (size_t j = 0; j < n; ++j)
        if ((rr(i, j) - (i == j ? 1 : 0)) % level != 0) fail(ErrorKind::internal, "coset lift not congruent to 1");
    out.push_back(std::move(rr));
  }
  return out;
}

size_t BLattice::count() const {
  size_t c = 1;
  for (auto b : box) c *= static_cast<size_t>(b);
  return c;
}

std::vector<int64_t> BLattice::coords(size_t k) const {
  std::vector<int64_t> c(box.size());
  for (size_t i = box.size(); i-- > 0;) {
    c[i] = static_cast<int64_t>(k % box[i]);
    k /= box[i];
  }
  return c;
}

IntMat BLattice::element(const std::vector<int64_t>& c) const {
  IntMat b(n, n);
  for (size_t i = 0; i < c.size(); ++i) {
    if (!c[i]) continue;
    for (size_t k = 0; k < n * n; ++k) b(k / n, k % n) += basis(i, k) * c[i];
  }
  return b;
}

BLattice b_lattice(const IntMat& d) {
  require(d.square(), "b_reps needs a square D");
  size_t n = d.rows();
  if (determinant(d) == 0) fail(ErrorKind::singular, "b_reps: D is singular");
  BLattice out;
  out.n = n;
  size_t vars = n * n;
  if (n == 1) {
    out.basis = IntMat::identity(1);
  } else {
    IntMat c(n * (n - 1) / 2, vars);
    size_t row = 0;
    for (size_t mu = 0; mu < n; ++mu)
      for (size_t nu = mu + 1; nu < n; ++nu, ++row)
        for (size_t k = 0; k < n; ++k) {
          c(row, k * n + mu) += d(k, nu);
          c(row, k * n + nu) -= d(k, mu);
        }
    out.basis = integer_kernel(c);
  }
  size_t r = out.basis.rows();
  RatMat kb = to_rat(out.basis);
  IntMat sub(n * (n + 1) / 2, r);
  size_t row = 0;
  for (size_t k = 0; k < n; ++k)
    for (size_t l = k; l < n; ++l, ++row) {
      IntMat sym(n, n);
      sym(k, l) = sym(l, k) = 1;
      IntMat sd = sym * d;
      std::vector<BigRat> v(vars);
      for (size_t t = 0; t < vars; ++t) v[t] = sd(t / n, t % n);
      auto x = solve_left(kb, v);
      if (!x) fail(ErrorKind::internal, "Sym D is not inside Lambda_D");
      for (size_t t = 0; t < r; ++t) {
        if (!is_integer((*x)[t])) fail(ErrorKind::internal, "non-integral coordinates for Sym D");
        sub(row, t) = (*x)[t].get_num();
      }
    }
  IntMat h = hnf_rows(sub);
  if (h.rows() != r) fail(ErrorKind::internal, "Sym D has lower rank than Lambda_D");
  for (size_t i = 0; i < r; ++i) {
    if (!h(i, i).fits_slong_p()) fail(ErrorKind::cap_exceeded, "B quotient too large");
    out.box.push_back(h(i, i).get_si());
  }
  return out;
}

std::vector<IntMat> b_reps(const IntMat& d) {
  BLattice lat = b_lattice(d);
  std::vector<IntMat> out;
  size_t total = lat.count();
  out.reserve(total);
  for (size_t k = 0; k < total; ++k) out.push_back(lat.element(lat.coords(k)));
  return out;
}

BigInt b_count_formula(const IntMat& d) {
  auto sd = smith_diagonal(to_small(d));
  require(sd.size() == d.rows(), "singular D");
  BigInt c = 1;
  for (size_t j = 0; j < sd.size(); ++j) c *= pow_int(BigInt(static_cast<long>(sd[j])), sd.size() - j);
  return c;
}

namespace {

void check_coset_params(int n, int64_t p, int delta, int64_t level, const CosetCaps& caps) {
  require(n >= 1, "n must be positive");
  require(is_prime(p), "p must be prime");
  require(level >= 1, "level must be positive");
  require(level % p != 0, "p must not divide the level");
  require(delta >= 0, "delta must be non-negative");
  if (n > caps.max_n) fail(ErrorKind::cap_exceeded, "n exceeds the coset cap");
  if (pow64(p, delta) > caps.max_similitude) fail(ErrorKind::cap_exceeded, "p^delta exceeds the coset cap");
}

}  // namespace

IntMat CosetBlock::assemble(const IntMat& b, int64_t level) const {
  size_t n = d.rows();
  IntMat g(2 * n, 2 * n);
  g.set_block(0, 0, a);
  g.set_block(0, n, b.scaled(BigInt(static_cast<long>(level))));
  g.set_block(n, n, d);
  return twist * g;
}

std::vector<CosetBlock> v_blocks(int n, int64_t p, int delta, int64_t level, int64_t seed, const CosetCaps& caps) {
  check_coset_params(n, p, delta, level, caps);
  std::vector<CosetBlock> out;
  std::vector<int> a(n, 0);
  size_t total = 0;
  BigInt nu = pow_int(BigInt(static_cast<long>(p)), delta);
  auto emit = [&]() {
    int sum = 0;
    std::vector<int> beta(n);
    for (int i = 0; i < n; ++i) {
      sum += a[i];
      beta[i] = sum;
    }
    std::vector<int> alpha = a;
    alpha.push_back(delta - sum);
    IntMat twist = IntMat::identity(2 * n);
    for (int j = 1; j <= n; ++j) twist = twist * gj_matrix(n, j, pow64(p, alpha[j]), level);
    std::vector<BigInt> sd;
    for (int b : beta) sd.push_back(pow_int(BigInt(static_cast<long>(p)), b));
    IntMat s = IntMat::diagonal(sd);
    for (const auto& r : sl_cosets(beta, p, level, seed)) {
      CosetBlock blk;
      blk.alpha = alpha;
      blk.d = s * r;
      blk.a = to_int(inverse(to_rat(blk.d)).transpose().scaled(BigRat(nu)));
      blk.twist = twist;
      blk.lattice = b_lattice(blk.d);
      total += blk.lattice.count();
      if (total > caps.max_representatives)
        fail(ErrorKind::cap_exceeded, "coset system exceeds the representative cap");
      out.push_back(std::move(blk));
    }
  };
  auto rec = [&](auto&& self, int i, int left) -> void {
    if (i == n) {
      emit();
      return;
    }
    for (int x = 0; x <= left; ++x) {
      a[i] = x;
      self(self, i + 1, left - x);
    }
    a[i] = 0;
  };
  rec(rec, 0, delta);
  return out;
}

std::vector<CosetRep> v_cosets(int n, int64_t p, int delta, int64_t level, int64_t seed, const CosetCaps& caps) {
  auto blocks = v_blocks(n, p, delta, level, seed, caps);
  std::vector<CosetRep> out;
  for (size_t g = 0; g < blocks.size(); ++g) {
    const auto& blk = blocks[g];
    for (size_t k = 0; k < blk.lattice.count(); ++k) {
      CosetRep rep;
      rep.alpha = blk.alpha;
      rep.d = blk.d;
      rep.b = blk.lattice.element(blk.lattice.coords(k));
      rep.assembled = blk.assemble(rep.b, level);
      rep.group = g;
      out.push_back(std::move(rep));
    }
  }
  return out;
}

std::vector<int64_t> tj_type(int n, int j, int64_t p) {
  std::vector<int64_t> t;
  for (int i = 0; i < j; ++i) t.push_back(1);
  for (int i = 0; i < 2 * (n - j); ++i) t.push_back(p);
  for (int i = 0; i < j; ++i) t.push_back(p * p);
  return t;
}

std::vector<CosetRep> tj_cosets(int n, int j, int64_t p, int64_t level, int64_t seed, const CosetCaps& caps) {
  require(j >= 0 && j <= n, "T_j needs 0 <= j <= n");
  auto want = tj_type(n, j, p);
  std::vector<CosetRep> out;
  for (auto& rep : v_cosets(n, p, 2, level, seed, caps))
    if (smith_diagonal(to_small(rep.assembled)) == want) out.push_back(std::move(rep));
  return out;
}

namespace {

// Row Hermite form by unimodular 2x2 gcd steps; independent of hnf_rows.
SmallMat oracle_hnf(SmallMat a) {
  size_t rows = a.rows(), cols = a.cols(), row = 0;
  for (size_t c = 0; c < cols && row < rows; ++c) {
    for (size_t i = row + 1; i < rows; ++i) {
      if (!a(i, c)) continue;
      int64_t x, y;
      int64_t g = ext_gcd64(a(row, c), a(i, c), x, y);
      int64_t u = a(row, c) / g, v = a(i, c) / g;
      for (size_t k = 0; k < cols; ++k) {
        int64_t top = x * a(row, k) + y * a(i, k);
        int64_t bot = -v * a(row, k) + u * a(i, k);
        a(row, k) = top;
        a(i, k) = bot;
      }
    }
    if (!a(row, c)) continue;
    if (a(row, c) < 0)
      for (size_t k = 0; k < cols; ++k) a(row, k) = -a(row, k);
    for (size_t i = 0; i < row; ++i) {
      int64_t q = floor_div(a(i, c), a(row, c));
      if (q)
        for (size_t k = 0; k < cols; ++k) a(i, k) -= q * a(row, k);
    }
    ++row;
  }
  return a;
}

}  // namespace

SmallMat oracle_invariant(const IntMat& g) { return oracle_hnf(to_small(g)); }

std::vector<SmallMat> brute_cosets_oracle(int n, int64_t p, int delta, int64_t level) {
  require(n >= 1 && n <= 2, "coset oracle supports n <= 2");
  require(is_prime(p) && delta >= 0, "coset oracle needs a prime p and delta >= 0");
  require(level >= 1 && level % p != 0, "coset oracle needs p coprime to the level");
  if (pow64(p, delta) > 9) fail(ErrorKind::cap_exceeded, "coset oracle supports p^delta <= 9 only");
  size_t m = 2 * n;
  int64_t nu = pow64(p, delta);
  SmallMat h(m, m), jm(m, m);
  for (int i = 0; i < n; ++i) {
    jm(i, n + i) = 1;
    jm(n + i, i) = -1;
  }
  std::vector<SmallMat> out;
  auto accept = [&]() {
    SmallMat w = h * jm * h.transpose();
    for (auto v : w.data())
      if (v % nu) return;
    out.push_back(h);
  };
  auto fill = [&](auto&& self, size_t i, size_t j) -> void {
    if (i == m) {
      accept();
      return;
    }
    if (j >= m) {
      self(self, i + 1, i + 2);
      return;
    }
    for (int64_t v = 0; v < h(j, j); ++v) {
      h(i, j) = v;
      self(self, i, j + 1);
    }
    h(i, j) = 0;
  };
  auto diag = [&](auto&& self, size_t i, int left) -> void {
    if (i == m) {
      if (left == 0) fill(fill, 0, 1);
      return;
    }
    for (int x = 0; x <= std::min(left, delta); ++x) {
      h(i, i) = pow64(p, x);
      self(self, i + 1, left - x);
    }
  };
  diag(diag, 0, n * delta);
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace heckeint
