#include "heckeint/weights.hpp"

#include <map>

#include "heckeint/error.hpp"

namespace heckeint {

void validate_weight(const HighestWeight& k) {
  require(!k.empty(), "empty weight");
  for (size_t i = 0; i + 1 < k.size(); ++i)
    require(k[i] >= k[i + 1], "weight must be weakly decreasing");
  require(k.back() >= 0, "weight must have k_n >= 0");
}

bool is_scalar_weight(const HighestWeight& k) {
  for (int x : k)
    if (x != k.front()) return false;
  return true;
}

namespace {

std::vector<std::vector<int>> subsets(int n, int size) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur;
  auto rec = [&](auto&& self, int start) -> void {
    if (static_cast<int>(cur.size()) == size) {
      out.push_back(cur);
      return;
    }
    for (int i = start; i < n; ++i) {
      cur.push_back(i);
      self(self, i + 1);
      cur.pop_back();
    }
  };
  rec(rec, 0);
  return out;
}

// Exponent vectors of length r summing to m, descending lexicographic.
std::vector<std::vector<int>> monomials(int r, int m) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur(r, 0);
  auto rec = [&](auto&& self, int pos, int left) -> void {
    if (pos == r - 1) {
      cur[pos] = left;
      out.push_back(cur);
      return;
    }
    for (int e = left; e >= 0; --e) {
      cur[pos] = e;
      self(self, pos + 1, left - e);
    }
  };
  if (r == 0) {
    if (m == 0) out.push_back({});
    return out;
  }
  rec(rec, 0, m);
  return out;
}

BigInt binomial(long n, long k) {
  BigInt r;
  mpz_bin_uiui(r.get_mpz_t(), n, k);
  return r;
}

}  // namespace

BigInt model_dimension(const HighestWeight& k) {
  validate_weight(k);
  int n = static_cast<int>(k.size());
  BigInt dim = 1;
  for (int i = 1; i < n; ++i) {
    long r = binomial(n, i).get_si();
    long m = k[i - 1] - k[i];
    dim *= binomial(r + m - 1, m);
  }
  return dim;
}

TensorModel::TensorModel(HighestWeight k, size_t cap) : k_(std::move(k)) {
  validate_weight(k_);
  BigInt dim = model_dimension(k_);
  if (dim > BigInt(static_cast<unsigned long>(cap)))
    fail(ErrorKind::cap_exceeded, "weight model dimension " + to_string(dim) + " exceeds cap " + std::to_string(cap));
  int n = this->n();
  int nonzero = 0;
  for (int i = 1; i < n; ++i) {
    Factor f;
    f.wedge = i;
    f.power = k_[i - 1] - k_[i];
    f.subsets = subsets(n, i);
    f.monomials = monomials(static_cast<int>(f.subsets.size()), f.power);
    if (f.power > 0) {
      ++nonzero;
      if (f.power > 1 && i != 1 && i != n - 1) irreducible_ = false;
    }
    factors_.push_back(std::move(f));
  }
  if (nonzero > 1) irreducible_ = false;

  weights_.assign(1, std::vector<int>(n, k_.back()));
  for (const auto& f : factors_) {
    std::vector<std::vector<int>> next;
    for (const auto& w : weights_)
      for (const auto& mono : f.monomials) {
        std::vector<int> u = w;
        for (size_t s = 0; s < mono.size(); ++s)
          for (int idx : f.subsets[s]) u[idx] += mono[s];
        next.push_back(std::move(u));
      }
    weights_ = std::move(next);
  }
}

namespace {

using Poly = std::map<std::vector<int>, BigRat>;

Poly multiply_linear(const Poly& p, const std::vector<BigRat>& lin) {
  Poly out;
  for (const auto& [e, c] : p)
    for (size_t t = 0; t < lin.size(); ++t) {
      if (lin[t] == 0) continue;
      std::vector<int> f = e;
      ++f[t];
      out[f] += c * lin[t];
    }
  for (auto it = out.begin(); it != out.end();) it = it->second == 0 ? out.erase(it) : std::next(it);
  return out;
}

RatMat kronecker(const RatMat& a, const RatMat& b) {
  RatMat r(a.rows() * b.rows(), a.cols() * b.cols());
  for (size_t i = 0; i < a.rows(); ++i)
    for (size_t j = 0; j < a.cols(); ++j) {
      if (a(i, j) == 0) continue;
      for (size_t k = 0; k < b.rows(); ++k)
        for (size_t l = 0; l < b.cols(); ++l) r(i * b.rows() + k, j * b.cols() + l) = a(i, j) * b(k, l);
    }
  return r;
}

}  // namespace

RatMat TensorModel::rho(const RatMat& g) const {
  int n = this->n();
  require(g.rows() == static_cast<size_t>(n) && g.square(), "rho: matrix size does not match the weight");
  BigRat det = determinant(g);
  if (det == 0) fail(ErrorKind::singular, "rho of a singular matrix");
  RatMat out(1, 1);
  out(0, 0) = pow_rat(det, k_.back());
  for (const auto& f : factors_) {
    if (f.power == 0) continue;
    size_t r = f.subsets.size();
    // Lambda^i action: g e_S = sum_T det(g[T,S]) e_T
    RatMat wedge(r, r);
    for (size_t a = 0; a < r; ++a)
      for (size_t b = 0; b < r; ++b) {
        RatMat minor(f.wedge, f.wedge);
        for (int x = 0; x < f.wedge; ++x)
          for (int y = 0; y < f.wedge; ++y) minor(x, y) = g(f.subsets[a][x], f.subsets[b][y]);
        wedge(a, b) = determinant(minor);
      }
    std::map<std::vector<int>, size_t> index;
    for (size_t i = 0; i < f.monomials.size(); ++i) index[f.monomials[i]] = i;
    RatMat sym(f.monomials.size(), f.monomials.size());
    for (size_t col = 0; col < f.monomials.size(); ++col) {
      Poly p{{std::vector<int>(r, 0), BigRat(1)}};
      for (size_t s = 0; s < r; ++s) {
        std::vector<BigRat> lin(r);
        for (size_t t = 0; t < r; ++t) lin[t] = wedge(t, s);
        for (int e = 0; e < f.monomials[col][s]; ++e) p = multiply_linear(p, lin);
      }
      for (const auto& [e, c] : p) sym(index.at(e), col) = c;
    }
    out = kronecker(out, sym);
  }
  return out;
}

std::vector<CycInt> TensorModel::apply(const RatMat& g, const std::vector<CycInt>& v) const {
  require(v.size() == dimension(), "rho: coefficient vector has wrong length");
  RatMat r = rho(g);
  std::vector<CycInt> out(v.size());
  for (size_t i = 0; i < r.rows(); ++i)
    for (size_t j = 0; j < r.cols(); ++j)
      if (r(i, j) != 0 && !v[j].is_zero()) out[i] += CycInt(r(i, j)) * v[j];
  return out;
}

std::vector<WeightMultiplicity> weight_list(const TensorModel& m) {
  std::map<std::vector<int>, size_t, std::greater<>> agg;
  for (const auto& w : m.basis_weights()) ++agg[w];
  int kn = m.highest_weight().back();
  std::vector<WeightMultiplicity> out;
  for (const auto& [w, mult] : agg) {
    for (int x : w)
      if (x < kn) fail(ErrorKind::verification, "weight component below k_n");
    out.push_back({w, mult});
  }
  return out;
}

}  // namespace heckeint
