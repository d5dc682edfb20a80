#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "heckeint/fourier.hpp"
#include "heckeint/poly.hpp"

namespace heckeint {

using CycMat = Matrix<CycInt>;
using HeckeOp = std::function<QExpansion(const QExpansion&)>;

/// Indices stored in every expansion, ascending.
std::vector<HalfIntMat> shared_indices(const std::vector<QExpansion>& forms);

/// Smallest N such that the first N shared indices already separate the basis.
/// Throws ErrorKind::verification naming a dependency when none does.
size_t injective_truncation(const std::vector<QExpansion>& basis);

/// C with op(f_i) = sum_j C_ij f_j, solved on the first N* indices and checked
/// on every other shared index.
CycMat hecke_matrix(const std::vector<QExpansion>& basis, const std::vector<QExpansion>& images);
CycMat hecke_matrix(const std::vector<QExpansion>& basis, const HeckeOp& op);

struct IntegralityCertificate {
  std::string params;
  std::string ring;            // "Z" or "cyc:<M>"
  size_t truncation = 0;       // N*
  std::string fingerprint;     // FNV-1a of the basis coefficients
  CycMat matrix;
  CycPoly charpoly;
  std::vector<RatPoly> factors;  // over Z, when rational and degree <= 4
  bool lattice_checked = false;
  bool lattice_stable = false;
  std::vector<BigRat> witness;   // lattice vector (basis coordinates) leaving the lattice
  bool verdict = false;

  std::string text() const;
};

/// Saturates the coefficient lattice {c : sum c_i f_i has integer coefficients},
/// rewrites C on a lattice basis and decides integrality of the charpoly.
/// Cyclotomic data skips the lattice step; the verdict is the charpoly test.
IntegralityCertificate certify(const CycMat& c, const std::vector<QExpansion>& basis, const std::string& params = "");
/// Same with the standard lattice Z^r.
IntegralityCertificate certify(const CycMat& c, const std::string& params = "");

std::string fingerprint(const std::vector<QExpansion>& basis);

struct ScanReport {
  size_t checked = 0;
  std::vector<std::string> violations;
  std::vector<std::string> notes;
  bool ok() const { return violations.empty(); }
};

/// F_b(a) = (2n-a-2b) k_n - n(n+1) + b(a+b+1) over 0 <= a, b, a+b <= n, with the
/// minimum locations and lower bounds used for T_{j,n-j}(p^2), plus the full
/// weight inequality for dominant weights with k_1 - k_n <= spread.
ScanReport check_Fb(int n, int kn, int spread = 2);
/// The commonly printed closed form for F_b(0); it differs from F_b(0) by b - k_n.
int64_t fb_zero_printed(int n, int kn, int b);
int64_t fb_value(int n, int kn, int a, int b);

/// Margins k_j - k_n + j - 1 >= 0, and (with `matrices`) integrality of
/// p^e (p^delta)^(sum k - n(n+1)/2) rho(D^-1) prod d_j^(n-j+1) over the D of
/// V(p^delta) at level 1.
ScanReport check_weight_exponent(int n, const HighestWeight& k, int delta, bool matrices = false, int64_t p = 2);

struct CountE {
  int64_t count = 0;
  BigInt bound;       // (16 M)^(d^2)
  bool exact = true;  // d <= 2 uses closed-form root tests
};

/// #{algebraic integers of degree <= d with every conjugate of modulus <= M}.
CountE count_E(int64_t m, int d);

}  // namespace heckeint
