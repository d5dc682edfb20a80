#include "heckeint/character.hpp"

#include <algorithm>
#include <sstream>

#include "heckeint/error.hpp"

namespace heckeint {

std::vector<int64_t> units_mod(int64_t modulus) {
  require(modulus >= 1, "character modulus must be positive");
  if (modulus == 1) return {0};
  std::vector<int64_t> u;
  for (int64_t a = 1; a < modulus; ++a)
    if (gcd64(a, modulus) == 1) u.push_back(a);
  return u;
}

DirichletChar DirichletChar::trivial(int64_t modulus) {
  return DirichletChar(modulus, 1, std::vector<int64_t>(units_mod(modulus).size(), 0));
}

DirichletChar::DirichletChar(int64_t modulus, int64_t order, std::vector<int64_t> exps)
    : modulus_(modulus), order_(order), units_(units_mod(modulus)), exps_(std::move(exps)) {
  require(order >= 1, "character order must be positive");
  require(exps_.size() == units_.size(),
          "character needs " + std::to_string(units_.size()) + " exponents mod " + std::to_string(modulus));
  for (auto& e : exps_) e = floor_mod(e, order_);
  for (int64_t a : units_)
    for (int64_t b : units_)
      if (floor_mod(exponent(a) + exponent(b) - exponent(a * b % modulus_), order_) != 0)
        fail(ErrorKind::invalid_argument, "character exponents do not define a homomorphism");
}

bool DirichletChar::is_trivial() const {
  return std::all_of(exps_.begin(), exps_.end(), [](int64_t e) { return e == 0; });
}

int64_t DirichletChar::exponent(int64_t a) const {
  if (modulus_ == 1) return 0;
  int64_t r = floor_mod(a, modulus_);
  auto it = std::lower_bound(units_.begin(), units_.end(), r);
  require(it != units_.end() && *it == r, "character evaluated at a non-unit");
  return exps_[it - units_.begin()];
}

CycInt DirichletChar::operator()(int64_t a) const {
  if (gcd64(floor_mod(a, modulus_), modulus_) != 1 && modulus_ != 1) return CycInt(0L);
  return CycInt::zeta(order_, exponent(a));
}

CharacterTuple CharacterTuple::trivial(int n, int64_t modulus) {
  return CharacterTuple{std::vector<DirichletChar>(n, DirichletChar::trivial(modulus))};
}

CharacterTuple CharacterTuple::parse(const std::string& spec, int n, int64_t modulus) {
  if (spec == "trivial") return trivial(n, modulus);
  std::vector<std::string> parts;
  std::stringstream ss(spec);
  std::string item;
  while (std::getline(ss, item, '/')) parts.push_back(item);
  if (static_cast<int>(parts.size()) != n + 1)
    fail(ErrorKind::parse, "character spec '" + spec + "' needs an order and " + std::to_string(n) + " exponent lists");
  int64_t order;
  try {
    order = std::stoll(parts[0]);
  } catch (const std::exception&) {
    fail(ErrorKind::parse, "bad character order in '" + spec + "'");
  }
  CharacterTuple t;
  for (int j = 1; j <= n; ++j) {
    std::vector<int64_t> exps;
    std::stringstream es(parts[j]);
    while (std::getline(es, item, ',')) {
      try {
        exps.push_back(std::stoll(item));
      } catch (const std::exception&) {
        fail(ErrorKind::parse, "bad character exponent '" + item + "'");
      }
    }
    t.chars.emplace_back(modulus, order, std::move(exps));
  }
  return t;
}

bool CharacterTuple::is_trivial() const {
  return std::all_of(chars.begin(), chars.end(), [](const DirichletChar& c) { return c.is_trivial(); });
}

int64_t CharacterTuple::common_order() const {
  int64_t o = 1;
  for (const auto& c : chars) o = o / gcd64(o, c.order()) * c.order();
  return o;
}

std::string CharacterTuple::str() const {
  if (is_trivial()) return "trivial";
  std::string s = std::to_string(common_order());
  for (const auto& c : chars) {
    int64_t scale = common_order() / c.order();
    s += "/";
    for (size_t i = 0; i < c.exponents().size(); ++i) s += (i ? "," : "") + std::to_string(c.exponents()[i] * scale);
  }
  return s;
}

}  // namespace heckeint
