#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "heckeint/fourier.hpp"

namespace heckeint {

/// B_k from the recurrence sum_{j<=m} C(m+1, j) B_j = 0.
BigRat bernoulli(int k);

/// Level-1 weight-k Eisenstein series scaled to coprime integer coefficients:
/// constant term num(-B_k/2k), a(m) = den(-B_k/2k) sigma_{k-1}(m). k = 6 comes out as -E_6.
QExpansion eisenstein(int k, int64_t trace_bound);

/// q prod (1 - q^m)^24 up to q^trace_bound.
QExpansion delta(int64_t trace_bound);

/// E8 in doubled coordinates y = 2x: all y_i even or all odd, sum y_i = 0 mod 4.
/// <x, x'> = (y . y') / 4.
class E8Lattice {
 public:
  using Vec = std::array<int8_t, 8>;

  /// Shells up to norm 2*max_t. With a non-empty cache_dir the shells are read
  /// from (or written to) a versioned text file there.
  explicit E8Lattice(int64_t max_t, const std::string& cache_dir = "");

  /// Gram matrix of the simple-root basis (the E8 Cartan matrix).
  static SmallMat gram();
  static bool contains(const Vec& y);

  int64_t max_t() const { return static_cast<int64_t>(shells_.size()) - 1; }
  /// Vectors x with <x, x> = 2t.
  const std::vector<Vec>& shell(int64_t t) const;

  struct Orbit {
    Vec rep;
    int64_t size;
  };
  /// Orbits of the shell under even sign changes and coordinate permutations.
  std::vector<Orbit> orbits(int64_t t) const;

 private:
  void enumerate(int64_t max_t);
  bool load(const std::string& path, int64_t max_t);
  void save(const std::string& path) const;

  std::vector<std::vector<Vec>> shells_;
};

/// Representation numbers a(T) = #{(x_1..x_n) in E8^n : <x_i, x_j> = (2T)_ij},
/// n in {1, 2}, level 1, weight 4, class mode. `cache_dir` empty means the
/// HECKEINT_CACHE_DIR environment variable, if set.
QExpansion theta_e8(int n, const std::vector<HalfIntMat>& indices, const std::string& cache_dir = "");

}  // namespace heckeint
