#pragma once

// Sparse multivariate polynomials over the rationals.
//
// A polynomial is a map from monomials to nonzero rational coefficients.
// Monomials are sorted (variable, exponent) lists with positive exponents.
// The map is ordered in canonical print order: total degree descending,
// then exponent vectors compared lexicographically (variables in name
// order), larger first.

#include <gmpxx.h>

#include <cstdint>
#include <initializer_list>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace feyncomb {

using Rational = mpq_class;
using Integer = mpz_class;

/// Parses "3", "-2/5". Throws InputError on malformed text.
Rational parse_rational(const std::string& text);

class Monomial {
 public:
  using Factor = std::pair<std::string, std::uint32_t>;

  Monomial() = default;
  Monomial(std::initializer_list<Factor> factors);
  explicit Monomial(std::vector<Factor> factors);

  static Monomial var(const std::string& name, std::uint32_t exponent = 1);

  const std::vector<Factor>& factors() const { return factors_; }
  bool is_one() const { return factors_.empty(); }
  std::uint32_t degree() const;
  std::uint32_t exponent_of(const std::string& name) const;

  Monomial operator*(const Monomial& other) const;
  bool divides(const Monomial& other) const;
  /// Requires divisor.divides(*this).
  Monomial operator/(const Monomial& divisor) const;

  /// Drops `name` entirely.
  Monomial without(const std::string& name) const;

  std::string to_string() const;

  friend bool operator==(const Monomial&, const Monomial&) = default;

 private:
  void normalize();
  std::vector<Factor> factors_;
};

/// Strict weak order placing monomials in canonical print order.
struct CanonicalOrder {
  bool operator()(const Monomial& a, const Monomial& b) const;
};

class MultiPoly {
 public:
  using TermMap = std::map<Monomial, Rational, CanonicalOrder>;

  MultiPoly() = default;
  MultiPoly(const Rational& constant);  // NOLINT(google-explicit-constructor)
  MultiPoly(long constant) : MultiPoly(Rational(constant)) {}
  MultiPoly(int constant) : MultiPoly(Rational(constant)) {}

  static MultiPoly var(const std::string& name);
  static MultiPoly term(const Monomial& m, const Rational& c = 1);

  const TermMap& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  /// Constant term (0 if absent).
  Rational constant_term() const;
  Rational coefficient(const Monomial& m) const;

  std::uint32_t total_degree() const;
  std::uint32_t degree_in(const std::string& name) const;
  std::set<std::string> variables() const;

  MultiPoly& operator+=(const MultiPoly& other);
  MultiPoly& operator-=(const MultiPoly& other);
  MultiPoly& operator*=(const MultiPoly& other);
  MultiPoly operator-() const;

  friend MultiPoly operator+(MultiPoly a, const MultiPoly& b) { return a += b; }
  friend MultiPoly operator-(MultiPoly a, const MultiPoly& b) { return a -= b; }
  friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b);
  friend bool operator==(const MultiPoly& a, const MultiPoly& b);

  MultiPoly pow(std::uint32_t exponent) const;

  /// Adds c*m in place.
  void add_term(const Monomial& m, const Rational& c);

 private:
  TermMap terms_;
};

MultiPoly add(const MultiPoly& p, const MultiPoly& q);
MultiPoly mul(const MultiPoly& p, const MultiPoly& q);

using Bindings = std::map<std::string, MultiPoly>;
using RationalBindings = std::map<std::string, Rational>;

/// Ring homomorphism sending each bound variable to its image; unbound
/// variables are left alone.
MultiPoly substitute(const MultiPoly& p, const Bindings& bindings);

/// Coefficient polynomial of v^power (v removed from the result).
MultiPoly coefficient_of(const MultiPoly& p, const std::string& v, std::uint32_t power);

/// Terms whose total degree in `vars` is minimal. Requires p != 0.
MultiPoly lowest_homogeneous_part(const MultiPoly& p, const std::set<std::string>& vars);

/// Throws PreconditionError if a variable of p is unbound.
Rational eval_rational(const MultiPoly& p, const RationalBindings& bindings);

/// Exact division by a monomial; throws ArithmeticError if some term is not divisible.
MultiPoly divide_exact(const MultiPoly& p, const Monomial& m);

/// Deterministic text form, e.g. "x*y - x - y + 1"; zero prints as "0".
std::string canonical_string(const MultiPoly& p);

std::string rational_string(const Rational& r);

}  // namespace feyncomb
