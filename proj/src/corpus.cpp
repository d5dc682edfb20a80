#include "heckeint/corpus.hpp"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <mutex>
#include <set>
#include <sstream>
#include <thread>

namespace heckeint {

BigRat bernoulli(int k) {
  require(k >= 0, "Bernoulli index must be non-negative");
  std::vector<BigRat> b(k + 1);
  b[0] = 1;
  for (int m = 1; m <= k; ++m) {
    BigRat s = 0;
    BigInt binom = 1;  // C(m+1, j)
    for (int j = 0; j < m; ++j) {
      s += BigRat(binom) * b[j];
      binom = binom * (m + 1 - j) / (j + 1);
    }
    b[m] = -s / BigRat(m + 1);
  }
  return b[k];
}

namespace {

QExpansion level_one(int k) {
  return QExpansion(1, 1, {k}, CharacterTuple::trivial(1, 1), {CoefficientRing::integers, 1},
                    StorageMode::explicit_support);
}

}  // namespace

QExpansion eisenstein(int k, int64_t trace_bound) {
  require(k >= 4 && k <= 14 && k % 2 == 0, "eisenstein supports even k in 4..14");
  require(trace_bound >= 0, "trace bound must be non-negative");
  BigRat c = -bernoulli(k) / BigRat(2 * k);
  QExpansion f = level_one(k);
  f.set_scalar(HalfIntMat::from_upper(1, {0}), CycInt(BigInt(c.get_num())));
  for (int64_t m = 1; m <= trace_bound; ++m) {
    BigInt s = 0;
    for (auto d : divisors(m)) s += pow_int(BigInt(static_cast<long>(d)), k - 1);
    f.set_scalar(HalfIntMat::from_upper(1, {2 * m}), CycInt(BigInt(c.get_den() * s)));
  }
  return f;
}

QExpansion delta(int64_t trace_bound) {
  require(trace_bound >= 0, "trace bound must be non-negative");
  size_t len = static_cast<size_t>(trace_bound);  // prod needed up to q^(bound-1)
  std::vector<BigInt> eta(len + 1, 0);
  // Pentagonal exponents k(3k-1)/2 and k(3k+1)/2 carry sign (-1)^k.
  for (int64_t k = 0; k * (3 * k - 1) / 2 <= static_cast<int64_t>(len); ++k) {
    int sign = k % 2 ? -1 : 1;
    eta[k * (3 * k - 1) / 2] += sign;
    if (k > 0 && k * (3 * k + 1) / 2 <= static_cast<int64_t>(len)) eta[k * (3 * k + 1) / 2] += sign;
  }
  auto mul = [&](const std::vector<BigInt>& a, const std::vector<BigInt>& b) {
    std::vector<BigInt> r(len + 1, 0);
    for (size_t i = 0; i <= len; ++i) {
      if (a[i] == 0) continue;
      for (size_t j = 0; i + j <= len; ++j) r[i + j] += a[i] * b[j];
    }
    return r;
  };
  auto e2 = mul(eta, eta), e4 = mul(e2, e2), e8 = mul(e4, e4), e16 = mul(e8, e8);
  auto e24 = mul(e16, e8);
  QExpansion f = level_one(12);
  f.set_scalar(HalfIntMat::from_upper(1, {0}), CycInt(0L));
  for (int64_t m = 1; m <= trace_bound; ++m) f.set_scalar(HalfIntMat::from_upper(1, {2 * m}), CycInt(e24[m - 1]));
  return f;
}

SmallMat E8Lattice::gram() {
  // Simple roots in doubled coordinates.
  const int roots[8][8] = {
      {1, -1, -1, -1, -1, -1, -1, 1}, {2, 2, 0, 0, 0, 0, 0, 0},  {-2, 2, 0, 0, 0, 0, 0, 0},
      {0, -2, 2, 0, 0, 0, 0, 0},      {0, 0, -2, 2, 0, 0, 0, 0}, {0, 0, 0, -2, 2, 0, 0, 0},
      {0, 0, 0, 0, -2, 2, 0, 0},      {0, 0, 0, 0, 0, -2, 2, 0},
  };
  SmallMat g(8, 8);
  for (int i = 0; i < 8; ++i)
    for (int j = 0; j < 8; ++j) {
      int64_t s = 0;
      for (int k = 0; k < 8; ++k) s += roots[i][k] * roots[j][k];
      g(i, j) = s / 4;
    }
  return g;
}

bool E8Lattice::contains(const Vec& y) {
  int par = y[0] & 1, sum = 0;
  for (auto v : y) {
    if ((v & 1) != par) return false;
    sum += v;
  }
  return floor_mod(sum, 4) == 0;
}

const std::vector<E8Lattice::Vec>& E8Lattice::shell(int64_t t) const {
  require(t >= 0 && t <= max_t(), "E8 shell bound exceeded");
  return shells_[t];
}

void E8Lattice::enumerate(int64_t max_t) {
  shells_.assign(max_t + 1, {});
  int64_t budget = 8 * max_t;
  Vec y{};
  for (int par = 0; par < 2; ++par) {
    auto rec = [&](auto&& self, int i, int64_t used, int sum) -> void {
      if (i == 8) {
        if (floor_mod(sum, 4) == 0 && used % 8 == 0) shells_[used / 8].push_back(y);
        return;
      }
      for (int v = -9; v <= 9; ++v) {
        if ((v & 1) != par) continue;
        int64_t u = used + v * v;
        if (u > budget) continue;
        y[i] = static_cast<int8_t>(v);
        self(self, i + 1, u, sum + v);
      }
    };
    rec(rec, 0, 0, 0);
  }
  for (auto& s : shells_) std::sort(s.begin(), s.end());
}

namespace {

constexpr const char* kCacheHeader = "heckeint-e8-shells 1";

}  // namespace

bool E8Lattice::load(const std::string& path, int64_t max_t) {
  std::ifstream in(path);
  if (!in) return false;
  std::string line;
  if (!std::getline(in, line) || line != kCacheHeader) return false;
  int64_t have = -1;
  if (!std::getline(in, line) || std::sscanf(line.c_str(), "max_t: %ld", &have) != 1 || have < max_t) return false;
  shells_.assign(max_t + 1, {});
  for (int64_t t = 0; t <= have && t <= max_t; ++t) {
    int64_t norm = -1, count = -1;
    if (!std::getline(in, line) || std::sscanf(line.c_str(), "%ld: %ld", &norm, &count) != 2 || norm != 2 * t)
      return false;
    auto& s = shells_[t];
    for (int64_t c = 0; c < count; ++c) {
      if (!std::getline(in, line)) return false;
      std::istringstream ls(line);
      Vec y;
      int64_t sq = 0;
      for (auto& v : y) {
        int x;
        if (!(ls >> x)) return false;
        v = static_cast<int8_t>(x);
        sq += x * x;
      }
      if (!contains(y) || sq != 8 * t) return false;
      s.push_back(y);
    }
  }
  return true;
}

void E8Lattice::save(const std::string& path) const {
  std::filesystem::create_directories(std::filesystem::path(path).parent_path());
  std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp);
    out << kCacheHeader << "\nmax_t: " << max_t() << "\n";
    for (int64_t t = 0; t <= max_t(); ++t) {
      out << 2 * t << ": " << shells_[t].size() << "\n";
      for (const auto& y : shells_[t]) {
        for (int i = 0; i < 8; ++i) out << (i ? " " : "") << static_cast<int>(y[i]);
        out << "\n";
      }
    }
  }
  std::filesystem::rename(tmp, path);
}

E8Lattice::E8Lattice(int64_t max_t, const std::string& cache_dir) {
  require(max_t >= 0, "shell bound must be non-negative");
  if (max_t > 12) fail(ErrorKind::cap_exceeded, "E8 shell bound exceeds 12");
  std::string path = cache_dir.empty() ? "" : (std::filesystem::path(cache_dir) / "e8_shells.txt").string();
  if (!path.empty() && load(path, max_t)) return;
  enumerate(max_t);
  if (!path.empty()) save(path);
}

std::vector<E8Lattice::Orbit> E8Lattice::orbits(int64_t t) const {
  std::map<std::vector<int>, size_t> where;
  std::vector<Orbit> out;
  for (const auto& y : shell(t)) {
    std::vector<int> key;
    int neg = 0;
    bool zero = false;
    for (auto v : y) {
      key.push_back(std::abs(v));
      neg += v < 0;
      zero = zero || v == 0;
    }
    std::sort(key.rbegin(), key.rend());
    key.push_back(zero ? 0 : neg % 2);
    auto it = where.find(key);
    if (it == where.end()) {
      where.emplace(key, out.size());
      out.push_back({y, 1});
    } else {
      ++out[it->second].size;
    }
  }
  return out;
}

QExpansion theta_e8(int n, const std::vector<HalfIntMat>& indices, const std::string& cache_dir) {
  require(n == 1 || n == 2, "theta_e8 supports n in {1, 2}");
  std::string dir = cache_dir;
  if (dir.empty())
    if (const char* env = std::getenv("HECKEINT_CACHE_DIR")) dir = env;
  QExpansion f(n, 1, HighestWeight(n, 4), CharacterTuple::trivial(n, 1), {CoefficientRing::integers, 1},
               StorageMode::class_function);
  std::set<HalfIntMat> keys;
  int64_t max_t = 0;
  for (const auto& t : indices) {
    require(t.n() == n, "index degree does not match");
    require(t.is_psd(), "index " + t.str() + " is not positive semi-definite");
    HalfIntMat k = f.key(t);
    keys.insert(k);
    for (int i = 0; i < n; ++i) max_t = std::max(max_t, k(i, i) / 2);
  }
  if (keys.empty()) return f;
  E8Lattice lat(max_t, dir);

  // (t1, t2) with t1 <= t2 -> inner products wanted.
  std::map<std::pair<int64_t, int64_t>, std::set<int64_t>> pairs;
  for (const auto& k : keys) {
    if (n == 1) {
      f.set_scalar(k, CycInt(BigInt(static_cast<unsigned long>(lat.shell(k(0, 0) / 2).size()))));
      continue;
    }
    int64_t t1 = k(0, 0) / 2, t2 = k(1, 1) / 2;
    pairs[{std::min(t1, t2), std::max(t1, t2)}].insert(k(0, 1));
  }
  for (const auto& [tt, gs] : pairs) {
    auto [t1, t2] = tt;
    std::map<int64_t, BigInt> hist;
    if (t1 == 0) {
      hist[0] = static_cast<unsigned long>(lat.shell(t2).size());
    } else {
      auto orbits = lat.orbits(t1);
      const auto& sh = lat.shell(t2);
      std::atomic<size_t> next{0};
      std::mutex mu;
      auto worker = [&]() {
        std::map<int64_t, int64_t> local;
        for (size_t o = next++; o < orbits.size(); o = next++) {
          const auto& r = orbits[o].rep;
          std::map<int64_t, int64_t> h;
          for (const auto& y : sh) {
            int dot = 0;
            for (int i = 0; i < 8; ++i) dot += r[i] * y[i];
            int64_t g = dot / 4;
            if (gs.count(g)) ++h[g];
          }
          for (auto [g, c] : h) local[g] += c * orbits[o].size;
        }
        std::lock_guard<std::mutex> lock(mu);
        for (auto [g, c] : local) hist[g] += BigInt(static_cast<long>(c));
      };
      unsigned threads = std::max(1u, std::thread::hardware_concurrency());
      std::vector<std::thread> pool;
      for (unsigned i = 1; i < threads; ++i) pool.emplace_back(worker);
      worker();
      for (auto& th : pool) th.join();
    }
    for (const auto& k : keys) {
      int64_t a = k(0, 0) / 2, b = k(1, 1) / 2;
      if (std::min(a, b) != t1 || std::max(a, b) != t2) continue;
      auto it = hist.find(k(0, 1));
      f.set_scalar(k, CycInt(it == hist.end() ? BigInt(0) : it->second));
    }
  }
  return f;
}

}  // namespace heckeint
