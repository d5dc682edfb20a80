#include "heckeint/fourier.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>

#include "heckeint/error.hpp"

namespace heckeint {

HalfIntMat::HalfIntMat(SmallMat g) : g_(std::move(g)) {
  require(g_.square(), "index matrix must be square");
  for (size_t i = 0; i < g_.rows(); ++i) {
    require(g_(i, i) % 2 == 0, "index matrix G = 2T must have even diagonal");
    for (size_t j = 0; j < i; ++j) require(g_(i, j) == g_(j, i), "index matrix must be symmetric");
  }
}

HalfIntMat HalfIntMat::zero(int n) { return HalfIntMat(SmallMat(n, n)); }

HalfIntMat HalfIntMat::from_upper(int n, const std::vector<int64_t>& upper) {
  require(n >= 1, "index degree must be positive");
  require(upper.size() == static_cast<size_t>(n * (n + 1) / 2),
          "index needs " + std::to_string(n * (n + 1) / 2) + " upper-triangular entries");
  SmallMat g(n, n);
  size_t k = 0;
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) g(i, j) = g(j, i) = upper[k++];
  return HalfIntMat(std::move(g));
}

std::vector<int64_t> HalfIntMat::upper() const {
  std::vector<int64_t> u;
  for (size_t i = 0; i < g_.rows(); ++i)
    for (size_t j = i; j < g_.cols(); ++j) u.push_back(g_(i, j));
  return u;
}

int64_t HalfIntMat::trace() const {
  int64_t t = 0;
  for (size_t i = 0; i < g_.rows(); ++i) t += g_(i, i);
  return t / 2;
}

bool HalfIntMat::is_psd() const {
  size_t n = g_.rows();
  for (unsigned mask = 1; mask < (1u << n); ++mask) {
    std::vector<size_t> idx;
    for (size_t i = 0; i < n; ++i)
      if (mask >> i & 1) idx.push_back(i);
    IntMat m(idx.size(), idx.size());
    for (size_t a = 0; a < idx.size(); ++a)
      for (size_t b = 0; b < idx.size(); ++b) m(a, b) = BigInt(static_cast<long>(g_(idx[a], idx[b])));
    if (determinant(m) < 0) return false;
  }
  return true;
}

BigInt HalfIntMat::det_g() const { return determinant(to_big(g_)); }

int64_t HalfIntMat::content() const {
  int64_t c = 0;
  for (auto x : g_.data()) c = gcd64(c, x);
  return c;
}

std::string HalfIntMat::str() const {
  std::string s;
  for (auto x : upper()) s += (s.empty() ? "" : " ") + std::to_string(x);
  return s;
}

bool HalfIntMat::operator<(const HalfIntMat& o) const {
  if (n() != o.n()) return n() < o.n();
  int64_t a = trace(), b = o.trace();
  if (a != b) return a < b;
  return upper() < o.upper();
}

std::vector<HalfIntMat> enumerate_indices(int n, int64_t bound) {
  require(n >= 1 && n <= 3, "index enumeration supports n in {1,2,3}");
  require(bound >= 0, "trace bound must be non-negative");
  std::vector<HalfIntMat> out;
  SmallMat g(n, n);
  std::vector<std::pair<int, int>> off;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) off.push_back({i, j});
  auto fill_off = [&](auto&& self, size_t k) -> void {
    if (k == off.size()) {
      HalfIntMat t(g);
      if (t.is_psd()) out.push_back(t);
      return;
    }
    auto [i, j] = off[k];
    int64_t prod = g(i, i) * g(j, j);
    int64_t lim = static_cast<int64_t>(std::sqrt(static_cast<double>(prod)));
    while (lim * lim > prod) --lim;
    while ((lim + 1) * (lim + 1) <= prod) ++lim;
    for (int64_t v = -lim; v <= lim; ++v) {
      g(i, j) = g(j, i) = v;
      self(self, k + 1);
    }
    g(i, j) = g(j, i) = 0;
  };
  auto fill_diag = [&](auto&& self, int i, int64_t left) -> void {
    if (i == n) {
      fill_off(fill_off, 0);
      return;
    }
    for (int64_t t = 0; t <= left; ++t) {
      g(i, i) = 2 * t;
      self(self, i + 1, left - t);
    }
  };
  fill_diag(fill_diag, 0, bound);
  std::sort(out.begin(), out.end());
  return out;
}

HalfIntMat congruence(const HalfIntMat& t, const SmallMat& u) { return HalfIntMat(u * t.g() * u.transpose()); }

std::optional<HalfIntMat> transform_index(const HalfIntMat& t, const IntMat& d, int64_t p, int delta) {
  require(d.rows() == static_cast<size_t>(t.n()) && d.square(), "transform_index: size mismatch");
  IntMat g = d * to_big(t.g()) * d.transpose();
  BigInt q = pow_int(BigInt(static_cast<long>(p)), delta);
  SmallMat s(g.rows(), g.cols());
  for (size_t i = 0; i < g.rows(); ++i)
    for (size_t j = 0; j < g.cols(); ++j) {
      if (g(i, j) % q != 0) return std::nullopt;
      BigInt v = g(i, j) / q;
      if (i == j && v % 2 != 0) return std::nullopt;
      if (!v.fits_slong_p()) fail(ErrorKind::cap_exceeded, "transformed index exceeds machine range");
      s(i, j) = v.get_si();
    }
  HalfIntMat r(std::move(s));
  if (!r.is_psd()) return std::nullopt;
  return r;
}

namespace {

int64_t isqrt(int64_t v) {
  int64_t r = static_cast<int64_t>(std::sqrt(static_cast<double>(v)));
  while (r * r > v) --r;
  while ((r + 1) * (r + 1) <= v) ++r;
  return r;
}

}  // namespace

std::pair<HalfIntMat, SmallMat> reduce_binary(const HalfIntMat& t) {
  require(t.n() == 2, "reduce_binary needs a binary index");
  require(t.is_psd(), "reduce_binary needs a positive semi-definite index");
  // form a x^2 + b xy + c y^2 with G = [[2a, b], [b, 2c]]
  int64_t a = t(0, 0) / 2, b = t(0, 1), c = t(1, 1) / 2;
  SmallMat u = SmallMat::identity(2);
  auto build = [](int64_t a, int64_t b, int64_t c) { return HalfIntMat::from_upper(2, {2 * a, b, 2 * c}); };
  if (a == 0 && b == 0 && c == 0) return {t, u};
  if (4 * a * c - b * b == 0) {
    int64_t m = gcd64(gcd64(a, b), c);
    int64_t x = isqrt(a / m), y = isqrt(c / m);
    if (b < 0) y = -y;
    int64_t s, r;
    ext_gcd64(x, y, s, r);  // s x + r y = 1
    u = SmallMat{{s, r}, {-y, x}};
    return {build(m, 0, 0), u};
  }
  for (;;) {
    int64_t k = floor_div(a - b, 2 * a);
    if (k != 0) {
      // y -> y + k x
      SmallMat e{{1, 0}, {k, 1}};
      c = c + k * b + k * k * a;
      b = b + 2 * k * a;
      u = e * u;
    }
    if (a > c) {
      std::swap(a, c);
      u = SmallMat{{0, 1}, {1, 0}} * u;
      continue;
    }
    break;
  }
  if (b < 0) {
    b = -b;
    u = SmallMat{{1, 0}, {0, -1}} * u;
  }
  return {build(a, b, c), u};
}

HalfIntMat class_representative(const HalfIntMat& t) {
  if (t.n() == 1) return t;
  require(t.n() == 2, "class representatives are only available for n <= 2");
  return reduce_binary(t).first;
}

CoefficientRing CoefficientRing::parse(const std::string& text) {
  if (text == "Z") return {integers, 1};
  if (text == "Q") return {rationals, 1};
  if (text.rfind("cyc:", 0) == 0) {
    int64_t m = 0;
    try {
      m = std::stoll(text.substr(4));
    } catch (const std::exception&) {
    }
    if (m >= 1) return {cyclotomic, m};
  }
  fail(ErrorKind::parse, "unknown coefficient ring '" + text + "'");
}

std::string CoefficientRing::str() const {
  switch (kind) {
    case integers: return "Z";
    case rationals: return "Q";
    case cyclotomic: return "cyc:" + std::to_string(conductor);
  }
  return "Z";
}

bool CoefficientRing::contains(const CycInt& x) const {
  switch (kind) {
    case integers: return x.is_rational() && is_integer(x.rational());
    case rationals: return x.is_rational();
    case cyclotomic: return conductor % x.conductor() == 0;
  }
  return false;
}

QExpansion::QExpansion(int n, int64_t level, HighestWeight weight, CharacterTuple chi, CoefficientRing ring,
                       StorageMode mode)
    : n_(n), level_(level), weight_(std::move(weight)), chi_(std::move(chi)), ring_(ring), mode_(mode) {
  require(n_ >= 1, "degree must be positive");
  require(level_ >= 1, "level must be positive");
  require(static_cast<int>(weight_.size()) == n_, "weight must have n entries");
  validate_weight(weight_);
  require(static_cast<int>(chi_.chars.size()) == n_, "character tuple must have n components");
  for (const auto& c : chi_.chars) require(c.modulus() == level_, "character modulus must equal the level");
  BigInt dim = model_dimension(weight_);
  if (dim > BigInt(static_cast<unsigned long>(kDefaultDimensionCap)))
    fail(ErrorKind::cap_exceeded, "coefficient dimension exceeds cap");
  dim_ = dim.get_ui();
  if (mode_ == StorageMode::class_function) {
    require(level_ == 1, "class mode requires level 1");
    require(is_scalar_weight(weight_) && weight_[0] % 2 == 0, "class mode requires scalar even weight");
    require(n_ <= 2, "class mode requires n <= 2");
  }
}

HalfIntMat QExpansion::key(const HalfIntMat& t) const {
  require(t.n() == n_, "index degree does not match the expansion");
  return mode_ == StorageMode::class_function ? class_representative(t) : t;
}

void QExpansion::set(const HalfIntMat& t, std::vector<CycInt> v) {
  require(t.is_psd(), "index " + t.str() + " is not positive semi-definite");
  require(v.size() == dim_, "coefficient vector has length " + std::to_string(v.size()) + ", expected " +
                                std::to_string(dim_));
  for (const auto& c : v)
    require(ring_.contains(c), "coefficient " + c.str() + " is not in ring " + ring_.str());
  coeffs_[key(t)] = std::move(v);
}

const std::vector<CycInt>* QExpansion::find(const HalfIntMat& t) const {
  auto it = coeffs_.find(key(t));
  return it == coeffs_.end() ? nullptr : &it->second;
}

const std::vector<CycInt>& QExpansion::at(const HalfIntMat& t) const {
  const auto* v = find(t);
  if (!v) fail(ErrorKind::missing_indices, "missing index " + t.str());
  return *v;
}

QExpansion QExpansion::empty_like() const { return QExpansion(n_, level_, weight_, chi_, ring_, mode_); }

void QExpansion::shrink_ring() {
  bool all_int = true, all_rat = true;
  int64_t cond = 1;
  for (const auto& [t, v] : coeffs_)
    for (const auto& c : v) {
      if (!c.is_rational()) {
        all_rat = all_int = false;
        cond = cond / gcd64(cond, c.conductor()) * c.conductor();
      } else if (!is_integer(c.rational())) {
        all_int = false;
      }
    }
  if (all_int)
    ring_ = {CoefficientRing::integers, 1};
  else if (all_rat)
    ring_ = {CoefficientRing::rationals, 1};
  else if (ring_.kind != CoefficientRing::cyclotomic || ring_.conductor % cond != 0)
    ring_ = {CoefficientRing::cyclotomic, cond};
}

void QExpansion::retag_ring(const CoefficientRing& r) {
  for (const auto& [t, v] : coeffs_)
    for (const auto& c : v)
      require(r.contains(c), "coefficient " + c.str() + " at " + t.str() + " is not in ring " + r.str());
  ring_ = r;
}

CycInt parse_coefficient(const std::string& text, int64_t conductor) {
  if (!text.empty() && text.front() == '[') {
    if (text.back() != ']') fail(ErrorKind::parse, "unterminated cyclotomic coefficient '" + text + "'");
    std::vector<BigRat> coords;
    std::stringstream ss(text.substr(1, text.size() - 2));
    std::string item;
    while (std::getline(ss, item, ',')) coords.push_back(parse_rat(item));
    if (static_cast<int64_t>(coords.size()) != euler_phi(conductor))
      fail(ErrorKind::parse, "cyclotomic coefficient needs " + std::to_string(euler_phi(conductor)) + " coordinates");
    return CycInt::from_coords(conductor, std::move(coords));
  }
  return CycInt(parse_rat(text));
}

std::string format_coefficient(const CycInt& c, int64_t conductor) {
  if (c.is_rational()) return to_string(c.rational());
  std::string s = "[";
  auto coords = c.coords_in(conductor);
  for (size_t i = 0; i < coords.size(); ++i) s += (i ? "," : "") + to_string(coords[i]);
  return s + "]";
}

namespace {

std::vector<std::string> split_top_level(const std::string& s) {
  std::vector<std::string> out;
  std::string cur;
  int depth = 0;
  for (char ch : s) {
    if (ch == '[') ++depth;
    if (ch == ']') --depth;
    if (ch == ',' && depth == 0) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += ch;
    }
  }
  out.push_back(cur);
  return out;
}

std::string trim(const std::string& s) {
  size_t a = s.find_first_not_of(" \t\r"), b = s.find_last_not_of(" \t\r");
  return a == std::string::npos ? "" : s.substr(a, b - a + 1);
}

[[noreturn]] void line_error(size_t line, const std::string& what) {
  fail(ErrorKind::parse, "line " + std::to_string(line) + ": " + what);
}

}  // namespace

QExpansion parse_qexp(const std::string& text) {
  std::vector<std::string> lines;
  std::stringstream ss(text);
  std::string l;
  while (std::getline(ss, l)) lines.push_back(l);
  if (lines.empty() || trim(lines[0]) != "QEXP 1") line_error(1, "expected 'QEXP 1'");
  if (lines.size() < 2) line_error(2, "missing header");
  std::map<std::string, std::string> kv;
  {
    std::stringstream hs(lines[1]);
    std::string tok;
    while (hs >> tok) {
      auto eq = tok.find('=');
      if (eq == std::string::npos) line_error(2, "malformed header field '" + tok + "'");
      std::string k = tok.substr(0, eq);
      static const std::vector<std::string> known{"n", "N", "weight", "chi", "ring", "mode"};
      if (std::find(known.begin(), known.end(), k) == known.end()) line_error(2, "unknown header key '" + k + "'");
      if (kv.count(k)) line_error(2, "duplicate header key '" + k + "'");
      kv[k] = tok.substr(eq + 1);
    }
    for (const char* k : {"n", "N", "weight", "chi", "ring", "mode"})
      if (!kv.count(k)) line_error(2, std::string("missing header key '") + k + "'");
  }
  std::optional<QExpansion> f;
  try {
    int n = std::stoi(kv["n"]);
    int64_t level = std::stoll(kv["N"]);
    HighestWeight w;
    for (const auto& part : split_top_level(kv["weight"])) w.push_back(std::stoi(part));
    StorageMode mode;
    if (kv["mode"] == "explicit")
      mode = StorageMode::explicit_support;
    else if (kv["mode"] == "class")
      mode = StorageMode::class_function;
    else
      line_error(2, "mode must be explicit or class");
    f.emplace(n, level, w, CharacterTuple::parse(kv["chi"], n, level), CoefficientRing::parse(kv["ring"]), mode);
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::parse && std::string(e.what()).rfind("line", 0) == 0) throw;
    line_error(2, e.what());
  } catch (const std::exception&) {
    line_error(2, "malformed numeric header value");
  }
  int n = f->n();
  std::optional<HalfIntMat> prev;
  for (size_t i = 2; i < lines.size(); ++i) {
    size_t ln = i + 1;
    std::string line = trim(lines[i]);
    if (line.empty()) continue;
    auto colon = line.find(':');
    if (colon == std::string::npos) line_error(ln, "missing ':'");
    std::vector<int64_t> upper;
    {
      std::stringstream is(line.substr(0, colon));
      std::string tok;
      while (is >> tok) {
        try {
          size_t used;
          upper.push_back(std::stoll(tok, &used));
          if (used != tok.size()) throw std::invalid_argument(tok);
        } catch (const std::exception&) {
          line_error(ln, "bad index entry '" + tok + "'");
        }
      }
    }
    if (upper.size() != static_cast<size_t>(n * (n + 1) / 2))
      line_error(ln, "index needs " + std::to_string(n * (n + 1) / 2) + " entries, got " + std::to_string(upper.size()));
    std::optional<HalfIntMat> t;
    try {
      t = HalfIntMat::from_upper(n, upper);
    } catch (const Error& e) {
      line_error(ln, e.what());
    }
    if (!t->is_psd()) line_error(ln, "index " + t->str() + " is not positive semi-definite");
    if (f->mode() == StorageMode::class_function && f->key(*t) != *t)
      line_error(ln, "index " + t->str() + " is not a class representative");
    if (prev && !(*prev < *t)) line_error(ln, "indices must be strictly increasing");
    std::vector<CycInt> v;
    try {
      for (const auto& part : split_top_level(line.substr(colon + 1)))
        v.push_back(parse_coefficient(trim(part), f->ring().conductor));
      f->set(*t, std::move(v));
    } catch (const Error& e) {
      line_error(ln, e.what());
    }
    prev = t;
  }
  return std::move(*f);
}

std::string write_qexp(const QExpansion& f) {
  std::ostringstream os;
  os << "QEXP 1\n";
  os << "n=" << f.n() << " N=" << f.level() << " weight=";
  for (size_t i = 0; i < f.weight().size(); ++i) os << (i ? "," : "") << f.weight()[i];
  os << " chi=" << f.chi().str() << " ring=" << f.ring().str()
     << " mode=" << (f.mode() == StorageMode::class_function ? "class" : "explicit") << "\n";
  for (const auto& [t, v] : f.coefficients()) {
    os << t.str() << " : ";
    for (size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << format_coefficient(v[i], f.ring().conductor);
    os << "\n";
  }
  return os.str();
}

QExpansion read_qexp_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorKind::invalid_argument, "cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_qexp(ss.str());
}

void write_qexp_file(const QExpansion& f, const std::string& path) {
  std::ofstream out(path);
  if (!out) fail(ErrorKind::invalid_argument, "cannot write " + path);
  out << write_qexp(f);
}

}  // namespace heckeint
