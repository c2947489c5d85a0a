#include "feyncomb/poly.hpp"

#include <algorithm>
#include <limits>
#include <sstream>

#include "feyncomb/errors.hpp"

namespace feyncomb {

Rational parse_rational(const std::string& text) {
  Rational r;
  if (text.empty() || r.set_str(text, 10) != 0) {
    throw InputError("malformed rational: '" + text + "'");
  }
  if (r.get_den() == 0) throw InputError("zero denominator: '" + text + "'");
  r.canonicalize();
  return r;
}

std::string rational_string(const Rational& r) { return r.get_str(); }

// ---------------------------------------------------------------- Monomial

Monomial::Monomial(std::initializer_list<Factor> factors) : factors_(factors) { normalize(); }

Monomial::Monomial(std::vector<Factor> factors) : factors_(std::move(factors)) { normalize(); }

Monomial Monomial::var(const std::string& name, std::uint32_t exponent) {
  if (name.empty()) throw InputError("empty variable name");
  return Monomial({{name, exponent}});
}

void Monomial::normalize() {
  std::sort(factors_.begin(), factors_.end());
  std::vector<Factor> merged;
  for (const auto& [name, e] : factors_) {
    if (!merged.empty() && merged.back().first == name) {
      merged.back().second += e;
    } else {
      merged.emplace_back(name, e);
    }
  }
  std::erase_if(merged, [](const Factor& f) { return f.second == 0; });
  factors_ = std::move(merged);
}

std::uint32_t Monomial::degree() const {
  std::uint32_t d = 0;
  for (const auto& f : factors_) d += f.second;
  return d;
}

std::uint32_t Monomial::exponent_of(const std::string& name) const {
  auto it = std::lower_bound(factors_.begin(), factors_.end(), name,
                             [](const Factor& f, const std::string& n) { return f.first < n; });
  return (it != factors_.end() && it->first == name) ? it->second : 0;
}

Monomial Monomial::operator*(const Monomial& other) const {
  std::vector<Factor> out;
  out.reserve(factors_.size() + other.factors_.size());
  auto a = factors_.begin();
  auto b = other.factors_.begin();
  while (a != factors_.end() || b != other.factors_.end()) {
    if (b == other.factors_.end() || (a != factors_.end() && a->first < b->first)) {
      out.push_back(*a++);
    } else if (a == factors_.end() || b->first < a->first) {
      out.push_back(*b++);
    } else {
      out.emplace_back(a->first, a->second + b->second);
      ++a;
      ++b;
    }
  }
  Monomial m;
  m.factors_ = std::move(out);
  return m;
}

bool Monomial::divides(const Monomial& other) const {
  for (const auto& [name, e] : factors_) {
    if (other.exponent_of(name) < e) return false;
  }
  return true;
}

Monomial Monomial::operator/(const Monomial& divisor) const {
  if (!divisor.divides(*this)) {
    throw ArithmeticError("monomial " + divisor.to_string() + " does not divide " + to_string());
  }
  std::vector<Factor> out;
  for (const auto& [name, e] : factors_) {
    std::uint32_t d = divisor.exponent_of(name);
    if (e > d) out.emplace_back(name, e - d);
  }
  Monomial m;
  m.factors_ = std::move(out);
  return m;
}

Monomial Monomial::without(const std::string& name) const {
  Monomial m;
  for (const auto& f : factors_) {
    if (f.first != name) m.factors_.push_back(f);
  }
  return m;
}

std::string Monomial::to_string() const {
  if (factors_.empty()) return "1";
  std::string s;
  for (const auto& [name, e] : factors_) {
    if (!s.empty()) s += '*';
    s += name;
    if (e != 1) s += '^' + std::to_string(e);
  }
  return s;
}

bool CanonicalOrder::operator()(const Monomial& a, const Monomial& b) const {
  const auto da = a.degree();
  const auto db = b.degree();
  if (da != db) return da > db;
  // Lexicographic comparison of exponent vectors; the larger vector comes first.
  const auto& fa = a.factors();
  const auto& fb = b.factors();
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < fa.size() && j < fb.size()) {
    if (fa[i].first == fb[j].first) {
      if (fa[i].second != fb[j].second) return fa[i].second > fb[j].second;
      ++i;
      ++j;
    } else {
      // The monomial holding the smaller variable has a positive exponent
      // where the other has zero.
      return fa[i].first < fb[j].first;
    }
  }
  return i < fa.size() && j == fb.size();
}

// ---------------------------------------------------------------- MultiPoly

MultiPoly::MultiPoly(const Rational& constant) { add_term(Monomial{}, constant); }

MultiPoly MultiPoly::var(const std::string& name) { return term(Monomial::var(name)); }

MultiPoly MultiPoly::term(const Monomial& m, const Rational& c) {
  MultiPoly p;
  p.add_term(m, c);
  return p;
}

bool MultiPoly::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.is_one());
}

Rational MultiPoly::constant_term() const { return coefficient(Monomial{}); }

Rational MultiPoly::coefficient(const Monomial& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? Rational(0) : it->second;
}

std::uint32_t MultiPoly::total_degree() const {
  return terms_.empty() ? 0 : terms_.begin()->first.degree();
}

std::uint32_t MultiPoly::degree_in(const std::string& name) const {
  std::uint32_t d = 0;
  for (const auto& [m, c] : terms_) d = std::max(d, m.exponent_of(name));
  return d;
}

std::set<std::string> MultiPoly::variables() const {
  std::set<std::string> vars;
  for (const auto& [m, c] : terms_) {
    for (const auto& f : m.factors()) vars.insert(f.first);
  }
  return vars;
}

void MultiPoly::add_term(const Monomial& m, const Rational& c) {
  Rational r = c;
  r.canonicalize();  // callers may pass an unreduced p/q
  if (r == 0) return;
  auto [it, inserted] = terms_.try_emplace(m, r);
  if (!inserted) {
    it->second += r;
    if (it->second == 0) terms_.erase(it);
  }
}

MultiPoly& MultiPoly::operator+=(const MultiPoly& other) {
  for (const auto& [m, c] : other.terms_) add_term(m, c);
  return *this;
}

MultiPoly& MultiPoly::operator-=(const MultiPoly& other) {
  for (const auto& [m, c] : other.terms_) add_term(m, -c);
  return *this;
}

MultiPoly MultiPoly::operator-() const {
  MultiPoly r = *this;
  for (auto& [m, c] : r.terms_) c = -c;
  return r;
}

MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) {
  MultiPoly r;
  for (const auto& [ma, ca] : a.terms_) {
    for (const auto& [mb, cb] : b.terms_) r.add_term(ma * mb, ca * cb);
  }
  return r;
}

MultiPoly& MultiPoly::operator*=(const MultiPoly& other) { return *this = *this * other; }

bool operator==(const MultiPoly& a, const MultiPoly& b) {
  if (a.terms_.size() != b.terms_.size()) return false;
  auto i = a.terms_.begin();
  auto j = b.terms_.begin();
  for (; i != a.terms_.end(); ++i, ++j) {
    if (!(i->first == j->first) || i->second != j->second) return false;
  }
  return true;
}

MultiPoly MultiPoly::pow(std::uint32_t exponent) const {
  MultiPoly result(1);
  MultiPoly base = *this;
  while (exponent > 0) {
    if (exponent & 1U) result *= base;
    exponent >>= 1U;
    if (exponent > 0) base *= base;
  }
  return result;
}

// ---------------------------------------------------------------- free functions

MultiPoly add(const MultiPoly& p, const MultiPoly& q) { return p + q; }
MultiPoly mul(const MultiPoly& p, const MultiPoly& q) { return p * q; }

MultiPoly substitute(const MultiPoly& p, const Bindings& bindings) {
  // Powers of each image are shared across terms.
  std::map<std::pair<std::string, std::uint32_t>, MultiPoly> power_cache;
  auto power = [&](const std::string& name, std::uint32_t e) -> const MultiPoly& {
    auto key = std::make_pair(name, e);
    auto it = power_cache.find(key);
    if (it == power_cache.end()) {
      it = power_cache.emplace(key, bindings.at(name).pow(e)).first;
    }
    return it->second;
  };

  MultiPoly result;
  for (const auto& [m, c] : p.terms()) {
    std::vector<Monomial::Factor> kept;
    MultiPoly factor(c);
    for (const auto& [name, e] : m.factors()) {
      if (bindings.count(name)) {
        factor *= power(name, e);
        if (factor.is_zero()) break;
      } else {
        kept.emplace_back(name, e);
      }
    }
    if (factor.is_zero()) continue;
    result += factor * MultiPoly::term(Monomial(std::move(kept)));
  }
  return result;
}

MultiPoly coefficient_of(const MultiPoly& p, const std::string& v, std::uint32_t power) {
  MultiPoly r;
  for (const auto& [m, c] : p.terms()) {
    if (m.exponent_of(v) == power) r.add_term(m.without(v), c);
  }
  return r;
}

MultiPoly lowest_homogeneous_part(const MultiPoly& p, const std::set<std::string>& vars) {
  if (p.is_zero()) throw PreconditionError("lowest_homogeneous_part of the zero polynomial");
  auto degree_in_vars = [&](const Monomial& m) {
    std::uint32_t d = 0;
    for (const auto& [name, e] : m.factors()) {
      if (vars.count(name)) d += e;
    }
    return d;
  };
  std::uint32_t lowest = std::numeric_limits<std::uint32_t>::max();
  for (const auto& [m, c] : p.terms()) lowest = std::min(lowest, degree_in_vars(m));
  MultiPoly r;
  for (const auto& [m, c] : p.terms()) {
    if (degree_in_vars(m) == lowest) r.add_term(m, c);
  }
  return r;
}

Rational eval_rational(const MultiPoly& p, const RationalBindings& bindings) {
  Rational total = 0;
  for (const auto& [m, c] : p.terms()) {
    Rational t = c;
    for (const auto& [name, e] : m.factors()) {
      auto it = bindings.find(name);
      if (it == bindings.end()) throw PreconditionError("unbound variable '" + name + "'");
      Rational base = it->second;
      mpz_class num, den;
      mpz_pow_ui(num.get_mpz_t(), base.get_num_mpz_t(), e);
      mpz_pow_ui(den.get_mpz_t(), base.get_den_mpz_t(), e);
      t *= Rational(num, den);
    }
    total += t;
  }
  total.canonicalize();
  return total;
}

MultiPoly divide_exact(const MultiPoly& p, const Monomial& m) {
  MultiPoly r;
  for (const auto& [t, c] : p.terms()) r.add_term(t / m, c);
  return r;
}

std::string canonical_string(const MultiPoly& p) {
  if (p.is_zero()) return "0";
  std::string s;
  bool first = true;
  for (const auto& [m, c] : p.terms()) {
    const bool negative = c < 0;
    const Rational magnitude = negative ? Rational(-c) : c;
    if (first) {
      if (negative) s += '-';
    } else {
      s += negative ? " - " : " + ";
    }
    first = false;
    if (m.is_one()) {
      s += rational_string(magnitude);
    } else if (magnitude == 1) {
      s += m.to_string();
    } else {
      s += rational_string(magnitude) + '*' + m.to_string();
    }
  }
  return s;
}

}  // namespace feyncomb
