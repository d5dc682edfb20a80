#include "heckeint/hecke.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <set>
#include <thread>

#include "heckeint/linalg.hpp"
#include "heckeint/weights.hpp"

namespace heckeint {

SmallMat adjugate(const SmallMat& d) {
  require(d.square(), "adjugate needs a square matrix");
  size_t n = d.rows();
  SmallMat adj(n, n);
  if (n == 1) {
    adj(0, 0) = 1;
    return adj;
  }
  IntMat big = to_big(d);
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) {
      IntMat minor(n - 1, n - 1);
      for (size_t r = 0, rr = 0; r < n; ++r) {
        if (r == j) continue;
        for (size_t c = 0, cc = 0; c < n; ++c) {
          if (c == i) continue;
          minor(rr, cc++) = big(r, c);
        }
        ++rr;
      }
      BigInt v = determinant(minor);
      if ((i + j) % 2) v = -v;
      adj(i, j) = v.get_si();
    }
  return adj;
}

int64_t gauss_phase(const SmallMat& g, const SmallMat& b, const SmallMat& adj, int64_t sign, int64_t modulus) {
  size_t n = g.rows();
  __int128 t = 0;
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) {
      if (!g(i, j)) continue;
      __int128 w = 0;
      for (size_t k = 0; k < n; ++k) w += static_cast<__int128>(b(j, k)) * adj(k, i);
      t += static_cast<__int128>(g(i, j)) * w;
    }
  t *= sign;
  __int128 r = t % modulus;
  if (r < 0) r += modulus;
  return static_cast<int64_t>(r);
}

namespace {

// Everything about D needed to evaluate exp(2 pi i tr(S B D^-1)) as zeta_M^phase.
struct PhaseFrame {
  SmallMat adj;
  int64_t sign = 1, modulus = 2;
};

PhaseFrame phase_frame(const IntMat& d) {
  BigInt det = determinant(d);
  if (det == 0) fail(ErrorKind::singular, "Gauss sum: D is singular");
  PhaseFrame f;
  f.adj = adjugate(to_small(d));
  f.sign = det > 0 ? 1 : -1;
  BigInt m = 2 * abs(det);
  if (!m.fits_slong_p()) fail(ErrorKind::cap_exceeded, "Gauss sum modulus too large");
  f.modulus = m.get_si();
  return f;
}

SmallMat basis_element(const BLattice& lat, size_t i) {
  size_t n = lat.n;
  SmallMat b(n, n);
  for (size_t k = 0; k < n * n; ++k) {
    if (!lat.basis(i, k).fits_slong_p()) fail(ErrorKind::cap_exceeded, "lattice basis entry too large");
    b(k / n, k % n) = lat.basis(i, k).get_si();
  }
  return b;
}

BigInt collapse(const std::vector<int64_t>& hist, const char* what) {
  CycInt v = root_sum(hist);
  if (!v.is_rational() || !is_integer(v.rational()))
    fail(ErrorKind::internal, std::string(what) + " did not collapse to a rational integer: " + v.str());
  return v.rational().get_num();
}

std::vector<BigInt> abs_divisors(const IntMat& d) {
  std::vector<BigInt> out;
  for (const auto& x : snf(d).divisors()) out.push_back(abs(x));
  return out;
}

GaussSumResult make_result(BigInt v, const IntMat& d) {
  GaussSumResult r;
  r.vanished = v == 0;
  r.value = std::move(v);
  r.snf_divisors = abs_divisors(d);
  return r;
}

void check_gauss_args(const HalfIntMat& s, const IntMat& d) {
  require(d.square() && d.rows() == static_cast<size_t>(s.n()), "Gauss sum: S and D sizes differ");
}

// s = U G tU from U D V = diag(d); the rule asks d_{row or col} | s_{mu nu}
// with the diagonal of s halved.
GaussSumResult divisor_rule(const HalfIntMat& s, const IntMat& d, bool use_column) {
  check_gauss_args(s, d);
  SmithForm sf = snf(d);
  auto div = sf.divisors();
  IntMat su = sf.u * to_big(s.g()) * sf.u.transpose();
  size_t n = d.rows();
  bool ok = true;
  for (size_t mu = 0; mu < n && ok; ++mu)
    for (size_t nu = mu; nu < n && ok; ++nu) {
      BigInt entry = mu == nu ? BigInt(su(mu, mu) / 2) : su(mu, nu);
      BigInt dv = abs(div[use_column ? nu : mu]);
      if (entry % dv != 0) ok = false;
    }
  return make_result(ok ? b_count_formula(d) : BigInt(0), d);
}

}  // namespace

GaussSumResult gauss_brute(const HalfIntMat& s, const IntMat& d) {
  check_gauss_args(s, d);
  PhaseFrame fr = phase_frame(d);
  BLattice lat = b_lattice(d);
  std::vector<int64_t> hist(fr.modulus, 0), next(fr.modulus);
  hist[0] = 1;
  for (size_t i = 0; i < lat.box.size(); ++i) {
    int64_t t = gauss_phase(s.g(), basis_element(lat, i), fr.adj, fr.sign, fr.modulus);
    std::fill(next.begin(), next.end(), 0);
    for (int64_t x = 0; x < fr.modulus; ++x) {
      if (!hist[x]) continue;
      int64_t y = x;
      for (int64_t c = 0; c < lat.box[i]; ++c) {
        next[y] += hist[x];
        y = (y + t) % fr.modulus;
      }
    }
    hist.swap(next);
  }
  return make_result(collapse(hist, "Gauss sum"), d);
}

GaussSumResult gauss_closed(const HalfIntMat& s, const IntMat& d) {
  check_gauss_args(s, d);
  PhaseFrame fr = phase_frame(d);
  BLattice lat = b_lattice(d);
  for (size_t i = 0; i < lat.box.size(); ++i)
    if (gauss_phase(s.g(), basis_element(lat, i), fr.adj, fr.sign, fr.modulus) != 0) return make_result(0, d);
  return make_result(b_count_formula(d), d);
}

GaussSumResult gauss_literal(const HalfIntMat& s, const IntMat& d) { return divisor_rule(s, d, true); }
GaussSumResult gauss_divisor_rule(const HalfIntMat& s, const IntMat& d) { return divisor_rule(s, d, false); }

BigInt gauss_partial(const HalfIntMat& s, const IntMat& d, const std::vector<IntMat>& bs) {
  check_gauss_args(s, d);
  PhaseFrame fr = phase_frame(d);
  std::vector<int64_t> hist(fr.modulus, 0);
  for (const auto& b : bs) ++hist[gauss_phase(s.g(), to_small(b), fr.adj, fr.sign, fr.modulus)];
  return collapse(hist, "partial Gauss sum");
}

int norm_factor(int n, int kn, OperatorKind kind, int delta) {
  if (kind == OperatorKind::t_p) return kn < n ? delta * (n - kn) * (n - kn + 1) / 2 : 0;
  return kn <= n ? n * (n - kn + 1) : 0;
}

namespace {

// One (alpha, D) block prepared for coefficient evaluation. For T(p^delta)
// the Gauss sum runs over the whole lattice quotient (closed form); for T_j
// over the explicit subset `subset`.
struct PreparedBlock {
  const CosetBlock* block = nullptr;
  IntMat d;
  PhaseFrame frame;
  std::vector<SmallMat> generators;  // lattice basis, for the closed form
  std::vector<SmallMat> subset;      // explicit B list (T_j only)
  BigInt group_order;
  std::vector<int> alpha;
};

struct Plan {
  int n = 1;
  int64_t p = 2;
  int delta = 1;
  bool partial = false;
  std::vector<CosetBlock> blocks;
  std::vector<PreparedBlock> prepared;
};

Plan make_plan(int n, int64_t p, int delta, int64_t level, const HeckeOptions& opt, int tj) {
  Plan plan;
  plan.n = n;
  plan.p = p;
  plan.delta = delta;
  plan.partial = tj >= 0;
  plan.blocks = v_blocks(n, p, delta, level, opt.seed, opt.caps);
  std::vector<int64_t> want;
  if (plan.partial) want = tj_type(n, tj, p);
  for (const auto& blk : plan.blocks) {
    PreparedBlock pb;
    pb.block = &blk;
    pb.d = blk.d;
    pb.alpha = blk.alpha;
    pb.frame = phase_frame(blk.d);
    for (size_t i = 0; i < blk.lattice.box.size(); ++i) pb.generators.push_back(basis_element(blk.lattice, i));
    pb.group_order = b_count_formula(blk.d);
    if (plan.partial) {
      // Left multiplication by the symplectic twist does not change the
      // elementary divisors, so the type test uses the untwisted matrix.
      size_t nn = static_cast<size_t>(n);
      SmallMat g(2 * nn, 2 * nn);
      SmallMat a = to_small(blk.a), d = to_small(blk.d);
      for (size_t i = 0; i < nn; ++i)
        for (size_t j = 0; j < nn; ++j) {
          g(i, j) = a(i, j);
          g(nn + i, nn + j) = d(i, j);
        }
      for (size_t k = 0; k < blk.lattice.count(); ++k) {
        SmallMat b = to_small(blk.lattice.element(blk.lattice.coords(k)));
        for (size_t i = 0; i < nn; ++i)
          for (size_t j = 0; j < nn; ++j) g(i, nn + j) = b(i, j) * level;
        if (smith_diagonal(g) == want) pb.subset.push_back(std::move(b));
      }
      if (pb.subset.empty()) continue;
    }
    plan.prepared.push_back(std::move(pb));
  }
  return plan;
}

BigInt block_gauss(const PreparedBlock& pb, const HalfIntMat& s, bool partial, bool cross_check) {
  const auto& fr = pb.frame;
  if (partial) {
    std::vector<int64_t> hist(fr.modulus, 0);
    for (const auto& b : pb.subset) ++hist[gauss_phase(s.g(), b, fr.adj, fr.sign, fr.modulus)];
    return collapse(hist, "partial Gauss sum");
  }
  bool trivial = true;
  for (const auto& b : pb.generators)
    if (gauss_phase(s.g(), b, fr.adj, fr.sign, fr.modulus) != 0) {
      trivial = false;
      break;
    }
  BigInt v = trivial ? pb.group_order : BigInt(0);
  if (cross_check) {
    BigInt w = gauss_brute(s, pb.d).value;
    if (w != v)
      fail(ErrorKind::verification, "Gauss sum mismatch at S=" + s.str() + ": closed " + to_string(v) + ", brute " +
                                        to_string(w));
  }
  return v;
}

std::vector<HalfIntMat> needed_from_plan(const Plan& plan, const std::vector<HalfIntMat>& targets) {
  std::set<HalfIntMat> out;
  for (const auto& t : targets) {
    require(t.n() == plan.n, "target index has the wrong degree");
    for (const auto& pb : plan.prepared)
      if (auto s = transform_index(t, pb.d, plan.p, plan.delta)) out.insert(*s);
  }
  return {out.begin(), out.end()};
}

int64_t lcm64(int64_t a, int64_t b) { return a / gcd64(a, b) * b; }

std::vector<CycInt> rat_matvec(const RatMat& m, const std::vector<CycInt>& v) {
  std::vector<CycInt> r(m.rows(), CycInt(0));
  for (size_t i = 0; i < m.rows(); ++i)
    for (size_t j = 0; j < m.cols(); ++j)
      if (m(i, j) != 0 && !v[j].is_zero()) r[i] += CycInt(m(i, j)) * v[j];
  return r;
}

QExpansion run_plan(const QExpansion& f, const Plan& plan, int64_t trace_out, const HeckeOptions& opt,
                    OperatorKind kind) {
  int n = f.n();
  require(trace_out >= 0, "output trace bound must be non-negative");
  auto targets = output_indices(f, trace_out);
  int64_t cond = f.ring().kind == CoefficientRing::cyclotomic ? f.ring().conductor : 1;
  cond = lcm64(cond, f.chi().common_order());
  QExpansion out(n, f.level(), f.weight(), f.chi(), {CoefficientRing::cyclotomic, cond}, f.mode());
  if (f.empty()) {
    out.retag_ring(f.ring());
    return out;
  }

  // Missing inputs are reported together, never treated as zero.
  std::vector<std::string> missing;
  for (const auto& s : needed_from_plan(plan, targets))
    if (!f.find(s)) missing.push_back(f.key(s).str());
  if (!missing.empty()) {
    std::sort(missing.begin(), missing.end());
    missing.erase(std::unique(missing.begin(), missing.end()), missing.end());
    std::string msg = "missing " + std::to_string(missing.size()) + " input indices:";
    for (const auto& m : missing) msg += "\n  " + m;
    fail(ErrorKind::missing_indices, msg);
  }

  TensorModel model(f.weight());
  BigInt p(static_cast<long>(plan.p));
  BigInt nu = pow_int(p, plan.delta);
  long wexp = -static_cast<long>(n) * (n + 1) / 2;
  for (int k : f.weight()) wexp += k;
  BigRat global = pow_rat(BigRat(nu), wexp);
  if (opt.normalize) global *= BigRat(pow_int(p, norm_factor(n, f.weight().back(), kind, plan.delta)));

  // Per block: chi-factor * global * rho(D)^-1.
  std::vector<RatMat> rho_inv;
  std::vector<CycInt> char_factor;
  for (const auto& pb : plan.prepared) {
    rho_inv.push_back(model.rho(inverse(to_rat(pb.d))));
    CycInt c(global);
    for (int j = 1; j <= n; ++j) c *= f.chi().chars[j - 1](pow64(plan.p, pb.alpha[j]) % f.level());
    char_factor.push_back(c);
  }

  std::vector<std::vector<CycInt>> results(targets.size());
  std::atomic<size_t> next{0};
  std::exception_ptr err;
  std::mutex err_mu;
  auto worker = [&]() {
    try {
      for (size_t i = next++; i < targets.size(); i = next++) {
        std::vector<CycInt> acc(f.dimension(), CycInt(0));
        for (size_t b = 0; b < plan.prepared.size(); ++b) {
          const auto& pb = plan.prepared[b];
          auto s = transform_index(targets[i], pb.d, plan.p, plan.delta);
          if (!s) continue;
          BigInt g = block_gauss(pb, *s, plan.partial, opt.cross_check_gauss);
          if (g == 0) continue;
          const auto& a = f.at(*s);
          auto v = rat_matvec(rho_inv[b], a);
          CycInt c = char_factor[b] * CycInt(g);
          for (size_t k = 0; k < acc.size(); ++k) acc[k] += c * v[k];
        }
        results[i] = std::move(acc);
      }
    } catch (...) {
      std::lock_guard<std::mutex> lock(err_mu);
      if (!err) err = std::current_exception();
      next = targets.size();
    }
  };
  unsigned threads = opt.threads ? opt.threads : std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<size_t>(threads, std::max<size_t>(1, targets.size())));
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  if (err) std::rethrow_exception(err);

  for (size_t i = 0; i < targets.size(); ++i) out.set(targets[i], std::move(results[i]));
  out.shrink_ring();
  bool fits = true;
  for (const auto& [t, v] : out.coefficients())
    for (const auto& c : v) fits = fits && f.ring().contains(c);
  if (fits) out.retag_ring(f.ring());
  return out;
}

}  // namespace

std::vector<HalfIntMat> output_indices(const QExpansion& f, int64_t trace_bound) {
  auto all = enumerate_indices(f.n(), trace_bound);
  if (f.mode() != StorageMode::class_function) return all;
  std::vector<HalfIntMat> out;
  for (auto& t : all)
    if (class_representative(t) == t) out.push_back(std::move(t));
  return out;
}

std::vector<HalfIntMat> needed_indices_T(int n, const std::vector<HalfIntMat>& targets, int64_t p, int delta,
                                         int64_t level, const HeckeOptions& opt) {
  require(delta >= 1, "T(p^delta) needs delta >= 1");
  return needed_from_plan(make_plan(n, p, delta, level, opt, -1), targets);
}

std::vector<HalfIntMat> needed_indices_Tj(int n, const std::vector<HalfIntMat>& targets, int j, int64_t p,
                                          int64_t level, const HeckeOptions& opt) {
  require(j >= 0 && j <= n, "T_j needs 0 <= j <= n");
  return needed_from_plan(make_plan(n, p, 2, level, opt, j), targets);
}

QExpansion apply_T(const QExpansion& f, int64_t p, int delta, int64_t trace_out, const HeckeOptions& opt) {
  require(delta >= 1, "T(p^delta) needs delta >= 1");
  Plan plan = make_plan(f.n(), p, delta, f.level(), opt, -1);
  return run_plan(f, plan, trace_out, opt, OperatorKind::t_p);
}

QExpansion apply_Tj(const QExpansion& f, int j, int64_t p, int64_t trace_out, const HeckeOptions& opt) {
  require(j >= 0 && j <= f.n(), "T_j needs 0 <= j <= n");
  Plan plan = make_plan(f.n(), p, 2, f.level(), opt, j);
  return run_plan(f, plan, trace_out, opt, OperatorKind::t_j);
}

namespace {

size_t element_index(const TorusAction& a, const std::vector<int64_t>& e) {
  auto it = std::find(a.elements.begin(), a.elements.end(), e);
  if (it == a.elements.end()) fail(ErrorKind::verification, "torus action is missing a group element");
  return static_cast<size_t>(it - a.elements.begin());
}

std::vector<int64_t> multiply(const std::vector<int64_t>& x, const std::vector<int64_t>& y, int64_t level) {
  std::vector<int64_t> r(x.size());
  for (size_t i = 0; i < x.size(); ++i) r[i] = level == 1 ? 0 : floor_mod(x[i] * y[i], level);
  return r;
}

}  // namespace

TorusAction TorusAction::identity(int n, int64_t level, const std::vector<HalfIntMat>& indices) {
  TorusAction a;
  a.n = n;
  a.level = level;
  auto units = units_mod(level);
  std::vector<int64_t> e(n, 0);
  auto rec = [&](auto&& self, int i) -> void {
    if (i == n) {
      a.elements.push_back(e);
      return;
    }
    for (auto u : units) {
      e[i] = u;
      self(self, i + 1);
    }
  };
  rec(rec, 0);
  std::map<HalfIntMat, std::pair<HalfIntMat, CycInt>> m;
  for (const auto& t : indices) m.emplace(t, std::make_pair(t, CycInt(1)));
  a.maps.assign(a.elements.size(), m);
  return a;
}

void TorusAction::validate() const {
  auto units = units_mod(level);
  size_t expect = 1;
  for (int i = 0; i < n; ++i) expect *= units.size();
  if (elements.size() != expect || maps.size() != expect)
    fail(ErrorKind::verification, "torus action must list every element of ((Z/N)^x)^n exactly once");
  std::set<std::vector<int64_t>> seen;
  for (const auto& e : elements) {
    if (static_cast<int>(e.size()) != n) fail(ErrorKind::verification, "torus element has the wrong length");
    for (auto x : e)
      if (std::find(units.begin(), units.end(), x) == units.end())
        fail(ErrorKind::verification, "torus element component is not a unit");
    seen.insert(e);
  }
  if (seen.size() != expect) fail(ErrorKind::verification, "torus action lists an element twice");
  const auto& domain = maps[0];
  for (size_t g = 0; g < expect; ++g) {
    if (maps[g].size() != domain.size()) fail(ErrorKind::verification, "torus maps have different domains");
    std::set<HalfIntMat> image;
    for (const auto& [t, tc] : maps[g]) {
      if (!domain.count(t) || !domain.count(tc.first))
        fail(ErrorKind::verification, "torus map leaves the index set at " + t.str());
      image.insert(tc.first);
    }
    if (image.size() != domain.size()) fail(ErrorKind::verification, "torus map is not a permutation");
  }
  size_t id = element_index(*this, std::vector<int64_t>(n, level == 1 ? 0 : 1));
  for (const auto& [t, tc] : maps[id])
    if (tc.first != t || tc.second != 1) fail(ErrorKind::verification, "identity does not act trivially");
  for (size_t g = 0; g < expect; ++g)
    for (size_t h = 0; h < expect; ++h) {
      size_t gh = element_index(*this, multiply(elements[g], elements[h], level));
      for (const auto& [t, first] : maps[h]) {
        const auto& second = maps[g].at(first.first);
        const auto& direct = maps[gh].at(t);
        if (direct.first != second.first || direct.second != second.second * first.second)
          fail(ErrorKind::verification, "torus maps do not compose as a group action at " + t.str());
      }
    }
}

QExpansion TorusAction::act(size_t element, const QExpansion& f) const {
  require(element < maps.size(), "torus element out of range");
  int64_t cond = f.ring().kind == CoefficientRing::cyclotomic ? f.ring().conductor : 1;
  for (const auto& [t, tc] : maps[element])
    if (!tc.second.is_rational()) cond = lcm64(cond, tc.second.conductor());
  QExpansion out(f.n(), f.level(), f.weight(), f.chi(), {CoefficientRing::cyclotomic, cond}, f.mode());
  for (const auto& [t, v] : f.coefficients()) {
    auto it = maps[element].find(t);
    if (it == maps[element].end()) fail(ErrorKind::missing_indices, "torus action has no entry for " + t.str());
    std::vector<CycInt> w = v;
    for (auto& c : w) c *= it->second.second;
    out.set(it->second.first, std::move(w));
  }
  out.shrink_ring();
  return out;
}

QExpansion project_char(const QExpansion& f, const CharacterTuple& chi, const TorusAction& action) {
  require(action.n == f.n() && action.level == f.level(), "torus action does not match the expansion");
  require(static_cast<int>(chi.chars.size()) == f.n(), "character tuple must have n components");
  action.validate();
  int64_t cond = f.ring().kind == CoefficientRing::cyclotomic ? f.ring().conductor : 1;
  cond = lcm64(cond, chi.common_order());
  for (const auto& m : action.maps)
    for (const auto& [t, tc] : m)
      if (!tc.second.is_rational()) cond = lcm64(cond, tc.second.conductor());
  std::map<HalfIntMat, std::vector<CycInt>> acc;
  for (size_t g = 0; g < action.elements.size(); ++g) {
    CycInt weight(1);
    for (int j = 0; j < f.n(); ++j)
      weight *= f.level() == 1 ? CycInt(1) : chi.chars[j](action.elements[g][j]).inverse();
    for (const auto& [t, v] : f.coefficients()) {
      auto it = action.maps[g].find(t);
      if (it == action.maps[g].end()) fail(ErrorKind::missing_indices, "torus action has no entry for " + t.str());
      auto& slot = acc[it->second.first];
      if (slot.empty()) slot.assign(v.size(), CycInt(0));
      CycInt c = weight * it->second.second;
      for (size_t k = 0; k < v.size(); ++k) slot[k] += c * v[k];
    }
  }
  CycInt scale(BigRat(1, static_cast<unsigned long>(action.elements.size())));
  QExpansion out(f.n(), f.level(), f.weight(), chi, {CoefficientRing::cyclotomic, cond}, f.mode());
  for (auto& [t, v] : acc) {
    for (auto& c : v) c *= scale;
    out.set(t, std::move(v));
  }
  out.shrink_ring();
  return out;
}

}  // namespace heckeint
