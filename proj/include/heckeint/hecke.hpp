#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "heckeint/cosets.hpp"
#include "heckeint/fourier.hpp"

namespace heckeint {

struct GaussSumResult {
  BigInt value;
  bool vanished = false;
  std::vector<BigInt> snf_divisors;
};

/// Sum of exp(2 pi i tr(S B D^-1)) over B in Lambda_D / Sym D, term by term.
GaussSumResult gauss_brute(const HalfIntMat& s, const IntMat& d);
/// Group order when B -> tr(S B D^-1) mod Z is trivial on a basis of Lambda_D, else 0.
GaussSumResult gauss_closed(const HalfIntMat& s, const IntMat& d);
/// The divisibility rule d_nu | s_{mu nu} (mu <= nu) on S[tU], U D V = diag(d).
GaussSumResult gauss_literal(const HalfIntMat& s, const IntMat& d);
/// Same rule with the smaller divisor d_mu, equivalent to gauss_closed.
GaussSumResult gauss_divisor_rule(const HalfIntMat& s, const IntMat& d);
/// Sum over an explicit list of B; throws unless the value is a rational integer.
BigInt gauss_partial(const HalfIntMat& s, const IntMat& d, const std::vector<IntMat>& bs);
/// tr(G B adj D) reduced modulo 2|det D| with the sign of det D folded in.
int64_t gauss_phase(const SmallMat& g, const SmallMat& b, const SmallMat& adj, int64_t sign, int64_t modulus);
SmallMat adjugate(const SmallMat& d);

enum class OperatorKind { t_p, t_j };

/// Exponent e of the scaling p^e from the integrality theorem: for T(p^delta)
/// delta * [k_n < n] (n-k_n)(n-k_n+1)/2, for T_{j,n-j}(p^2) [k_n <= n] n(n-k_n+1).
int norm_factor(int n, int kn, OperatorKind kind, int delta = 1);

struct HeckeOptions {
  int64_t seed = 0;
  CosetCaps caps;
  /// Multiply the result by p^norm_factor.
  bool normalize = false;
  unsigned threads = 0;  // 0: hardware concurrency
  /// Evaluate every Gauss sum both term by term and in closed form.
  bool cross_check_gauss = false;
};

/// Indices a target set pulls from the input.
std::vector<HalfIntMat> needed_indices_T(int n, const std::vector<HalfIntMat>& targets, int64_t p, int delta,
                                         int64_t level, const HeckeOptions& opt = {});
std::vector<HalfIntMat> needed_indices_Tj(int n, const std::vector<HalfIntMat>& targets, int j, int64_t p,
                                          int64_t level, const HeckeOptions& opt = {});

/// Output index set for a trace bound (class representatives in class mode).
std::vector<HalfIntMat> output_indices(const QExpansion& f, int64_t trace_bound);

QExpansion apply_T(const QExpansion& f, int64_t p, int delta, int64_t trace_out, const HeckeOptions& opt = {});
QExpansion apply_Tj(const QExpansion& f, int j, int64_t p, int64_t trace_out, const HeckeOptions& opt = {});

/// The action of ((Z/N)^x)^n on coefficients: for each group element, index T
/// goes to (T', c) meaning (gamma f)[T'] = c f[T].
struct TorusAction {
  int n = 1;
  int64_t level = 1;
  std::vector<std::vector<int64_t>> elements;
  std::vector<std::map<HalfIntMat, std::pair<HalfIntMat, CycInt>>> maps;

  /// Throws unless elements form the whole group and maps compose as an action.
  void validate() const;
  QExpansion act(size_t element, const QExpansion& f) const;
  /// Every element acting as the identity on `indices`.
  static TorusAction identity(int n, int64_t level, const std::vector<HalfIntMat>& indices);
};

/// phi(N)^-n sum_gamma chi(gamma)^-1 (gamma f).
QExpansion project_char(const QExpansion& f, const CharacterTuple& chi, const TorusAction& action);

}  // namespace heckeint
