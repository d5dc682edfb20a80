#pragma once

#include <cstdint>
#include <vector>

#include "heckeint/matrix.hpp"

namespace heckeint {

struct CosetCaps {
  int max_n = 3;
  int64_t max_similitude = 27;   // p^delta
  size_t max_representatives = 200000;
};

/// One representative g_1(p^a1)...g_n(p^an) [[p^delta tD^-1, N B], [0, D]].
struct CosetRep {
  std::vector<int> alpha;  // alpha_0 .. alpha_n, alpha_n = delta - sum
  IntMat d, b, assembled;
  size_t group = 0;        // index of the (alpha, D) block this B belongs to
};

/// J = [[0, 1], [-1, 0]] of size 2n.
IntMat symplectic_form(int n);
/// tg J g == nu J.
bool is_similitude(const IntMat& g, const BigInt& nu);
/// g == [[1, 0], [0, nu]] blockwise modulo N.
bool in_congruence_set(const IntMat& g, int64_t nu, int64_t level);

/// Element of Sp_2n(Z) congruent mod N to diag(m^-1 1_j, 1_{n-j}, m 1_j, 1_{n-j}).
IntMat gj_matrix(int n, int j, int64_t m, int64_t level);

/// h in SL_n(Z) with h == x (mod m); x must have det == 1 (mod m).
IntMat lift_sl(const IntMat& x, int64_t m);

/// Representatives R of (SL_n(Z) cap diag(p^beta)^-1 SL_n(Z) diag(p^beta)) \ SL_n(Z),
/// each congruent to 1 mod N. `seed` perturbs the choice inside each coset.
std::vector<IntMat> sl_cosets(const std::vector<int>& beta, int64_t p, int64_t level, int64_t seed = 0);

/// Lattice Lambda_D = {B : tB D = tD B} modulo Sym_n(Z) D, as a box of
/// coordinates over a basis of Lambda_D.
struct BLattice {
  IntMat basis;               // rows: Z-basis of Lambda_D, as flattened n x n matrices
  std::vector<int64_t> box;   // quotient is {sum c_i basis_i : 0 <= c_i < box_i}
  size_t n = 0;
  size_t count() const;
  /// Coordinates of the k-th representative (last coordinate fastest).
  std::vector<int64_t> coords(size_t k) const;
  IntMat element(const std::vector<int64_t>& c) const;
};

BLattice b_lattice(const IntMat& d);
std::vector<IntMat> b_reps(const IntMat& d);
/// prod_j d_j^(n-j+1) over the elementary divisors of D.
BigInt b_count_formula(const IntMat& d);

/// All representatives sharing one (alpha, D): B runs over `lattice`.
struct CosetBlock {
  std::vector<int> alpha;
  IntMat d, a, twist;      // a = p^delta tD^-1, twist = g_1(p^a1)...g_n(p^an)
  BLattice lattice;
  IntMat assemble(const IntMat& b, int64_t level) const;
};

/// The (alpha, D) blocks of V_N(p^delta) in emission order.
std::vector<CosetBlock> v_blocks(int n, int64_t p, int delta, int64_t level, int64_t seed = 0,
                                 const CosetCaps& caps = {});

std::vector<CosetRep> v_cosets(int n, int64_t p, int delta, int64_t level, int64_t seed = 0,
                               const CosetCaps& caps = {});

/// Elementary divisors of diag(1_j, p 1_{n-j}, p^2 1_j, p 1_{n-j}), ascending.
std::vector<int64_t> tj_type(int n, int j, int64_t p);
/// Representatives of the similitude-p^2 classes of symplectic divisor type j.
std::vector<CosetRep> tj_cosets(int n, int j, int64_t p, int64_t level, int64_t seed = 0,
                                const CosetCaps& caps = {});

/// Brute-force oracle: row-HNF invariants of all left classes of integral g with
/// tg J g = p^delta J. Left Gamma(N)-classes inside the congruence set are in
/// bijection with these, so the result does not depend on N.
std::vector<SmallMat> brute_cosets_oracle(int n, int64_t p, int delta, int64_t level);
/// The oracle's class invariant of an arbitrary nonsingular integer matrix.
SmallMat oracle_invariant(const IntMat& g);

}  // namespace heckeint
