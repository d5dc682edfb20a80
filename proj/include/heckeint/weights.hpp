#pragma once

#include <cstdint>
#include <vector>

#include "heckeint/cyclotomic.hpp"
#include "heckeint/matrix.hpp"

namespace heckeint {

/// k_1 >= k_2 >= ... >= k_n >= 0.
using HighestWeight = std::vector<int>;

void validate_weight(const HighestWeight& k);
bool is_scalar_weight(const HighestWeight& k);

constexpr size_t kDefaultDimensionCap = 10000;

/// Sym^{k1-k2}(Lambda^1) x Sym^{k2-k3}(Lambda^2) x ... x det^{kn}, realized on
/// monomials in the wedge bases. Basis order: Kronecker order over factors,
/// monomials in each factor by descending exponent vector.
class TensorModel {
 public:
  explicit TensorModel(HighestWeight k, size_t dimension_cap = kDefaultDimensionCap);

  int n() const { return static_cast<int>(k_.size()); }
  const HighestWeight& highest_weight() const { return k_; }
  size_t dimension() const { return weights_.size(); }
  /// False when the model may contain components beyond the Cartan one.
  bool irreducible() const { return irreducible_; }
  /// Weight of each basis vector.
  const std::vector<std::vector<int>>& basis_weights() const { return weights_; }

  /// rho(g) as a dim x dim matrix; g must be invertible.
  RatMat rho(const RatMat& g) const;
  RatMat rho(const IntMat& g) const { return rho(to_rat(g)); }
  std::vector<CycInt> apply(const RatMat& g, const std::vector<CycInt>& v) const;

 private:
  struct Factor {
    int wedge;                            // i in Lambda^i
    int power;                            // symmetric power
    std::vector<std::vector<int>> subsets;
    std::vector<std::vector<int>> monomials;
  };
  HighestWeight k_;
  std::vector<Factor> factors_;
  std::vector<std::vector<int>> weights_;
  bool irreducible_ = true;
};

/// Dimension of the tensor model without building it.
BigInt model_dimension(const HighestWeight& k);

struct WeightMultiplicity {
  std::vector<int> weight;
  size_t multiplicity;
};

/// All weights with multiplicity, descending lexicographic. Throws
/// ErrorKind::verification if some component falls below k_n.
std::vector<WeightMultiplicity> weight_list(const TensorModel& m);

}  // namespace heckeint
