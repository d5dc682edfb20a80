#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "heckeint/character.hpp"
#include "heckeint/cyclotomic.hpp"
#include "heckeint/matrix.hpp"
#include "heckeint/weights.hpp"

namespace heckeint {

/// Half-integral symmetric matrix T, stored as G = 2T (even diagonal).
/// Ordered by trace, then lexicographically on the upper triangle of G.
class HalfIntMat {
 public:
  HalfIntMat() = default;
  /// Validates symmetry and even diagonal; positivity is not required.
  explicit HalfIntMat(SmallMat g);
  static HalfIntMat zero(int n);
  /// Upper-triangular entries of G, row-major: n(n+1)/2 values.
  static HalfIntMat from_upper(int n, const std::vector<int64_t>& upper);

  int n() const { return static_cast<int>(g_.rows()); }
  const SmallMat& g() const { return g_; }
  int64_t operator()(size_t i, size_t j) const { return g_(i, j); }
  std::vector<int64_t> upper() const;
  /// tr(T) = tr(G) / 2.
  int64_t trace() const;
  /// Exact principal-minor test on G.
  bool is_psd() const;
  BigInt det_g() const;
  /// gcd of the entries of G.
  int64_t content() const;
  /// "g11 g12 ... gnn"
  std::string str() const;

  bool operator==(const HalfIntMat& o) const { return g_ == o.g_; }
  bool operator!=(const HalfIntMat& o) const { return !(g_ == o.g_); }
  bool operator<(const HalfIntMat& o) const;

 private:
  SmallMat g_;
};

/// All positive semi-definite T with tr(T) <= bound, in canonical order.
std::vector<HalfIntMat> enumerate_indices(int n, int64_t trace_bound);

/// U T tU.
HalfIntMat congruence(const HalfIntMat& t, const SmallMat& u);

/// S = p^-delta D T tD when S is again half-integral and PSD.
std::optional<HalfIntMat> transform_index(const HalfIntMat& t, const IntMat& d, int64_t p, int delta);

/// GL2(Z) reduction: returns (T', U) with T' = U T tU and, for positive
/// definite T, 0 <= 2t12 <= t11 <= t22; rank one maps to m*diag(1,0).
std::pair<HalfIntMat, SmallMat> reduce_binary(const HalfIntMat& t);

/// Canonical GL_n(Z) class representative, n <= 2.
HalfIntMat class_representative(const HalfIntMat& t);

enum class StorageMode { explicit_support, class_function };

/// Which exact ring the coefficients live in: "Z", "Q" or "cyc:<M>".
struct CoefficientRing {
  enum Kind { integers, rationals, cyclotomic } kind = integers;
  int64_t conductor = 1;

  static CoefficientRing parse(const std::string& text);
  std::string str() const;
  bool contains(const CycInt& x) const;
};

/// Finite Fourier expansion: canonical index -> coefficient vector.
class QExpansion {
 public:
  QExpansion(int n, int64_t level, HighestWeight weight, CharacterTuple chi, CoefficientRing ring,
             StorageMode mode);

  int n() const { return n_; }
  int64_t level() const { return level_; }
  const HighestWeight& weight() const { return weight_; }
  const CharacterTuple& chi() const { return chi_; }
  const CoefficientRing& ring() const { return ring_; }
  StorageMode mode() const { return mode_; }
  size_t dimension() const { return dim_; }
  const std::map<HalfIntMat, std::vector<CycInt>>& coefficients() const { return coeffs_; }
  bool empty() const { return coeffs_.empty(); }

  /// Key under which T is stored (class representative in class mode).
  HalfIntMat key(const HalfIntMat& t) const;
  void set(const HalfIntMat& t, std::vector<CycInt> v);
  void set_scalar(const HalfIntMat& t, const CycInt& c) { set(t, {c}); }
  /// Coefficient a(T), or nullptr when T is not stored.
  const std::vector<CycInt>* find(const HalfIntMat& t) const;
  /// Throws ErrorKind::missing_indices when absent.
  const std::vector<CycInt>& at(const HalfIntMat& t) const;

  /// Copy with the same metadata and no coefficients.
  QExpansion empty_like() const;
  /// Smallest ring tag holding every stored coefficient.
  void shrink_ring();
  /// Replace the ring tag; throws unless every stored coefficient fits.
  void retag_ring(const CoefficientRing& r);

 private:
  int n_;
  int64_t level_;
  HighestWeight weight_;
  CharacterTuple chi_;
  CoefficientRing ring_;
  StorageMode mode_;
  size_t dim_;
  std::map<HalfIntMat, std::vector<CycInt>> coeffs_;
};

QExpansion parse_qexp(const std::string& text);
std::string write_qexp(const QExpansion& f);
QExpansion read_qexp_file(const std::string& path);
void write_qexp_file(const QExpansion& f, const std::string& path);

/// Coefficient text: integer, a/b, or [c0,...] in Q(zeta_M) coordinates.
CycInt parse_coefficient(const std::string& text, int64_t conductor);
std::string format_coefficient(const CycInt& c, int64_t conductor);

}  // namespace heckeint
