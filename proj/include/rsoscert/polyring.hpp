#pragma once

#include <compare>
#include <cstddef>
#include <initializer_list>
#include <map>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <gmpxx.h>

namespace rsoscert {

using Rational = mpq_class;
using Integer = mpz_class;

// Exponent vector alpha in N^n. Ordered graded-lexicographically: total degree
// first, then the first differing entry (x1 > x2 > ... > xn).
class Exponent {
 public:
  Exponent() = default;
  explicit Exponent(std::size_t n) : entries_(n, 0) {}
  explicit Exponent(std::vector<int> entries);
  Exponent(std::initializer_list<int> entries) : Exponent(std::vector<int>(entries)) {}

  std::size_t size() const noexcept { return entries_.size(); }
  int operator[](std::size_t i) const { return entries_[i]; }
  const std::vector<int>& entries() const noexcept { return entries_; }
  int degree() const noexcept;

  Exponent operator+(const Exponent& other) const;
  Exponent scaled(int factor) const;
  // Componentwise difference; caller ensures other <= *this.
  Exponent operator-(const Exponent& other) const;
  bool divides(const Exponent& other) const;
  bool all_even() const;

  bool operator==(const Exponent& other) const = default;
  std::strong_ordering operator<=>(const Exponent& other) const;

  std::string to_string() const;  // "4 2"

 private:
  std::vector<int> entries_;
};

class TermSet {
 public:
  TermSet() = default;
  explicit TermSet(std::size_t n) : n_(n) {}
  TermSet(std::size_t n, std::initializer_list<Exponent> members);

  std::size_t nvars() const noexcept { return n_; }
  std::size_t size() const noexcept { return members_.size(); }
  bool empty() const noexcept { return members_.empty(); }
  bool contains(const Exponent& a) const { return members_.count(a) != 0; }
  void insert(const Exponent& a);
  int max_degree() const;  // -1 when empty

  auto begin() const { return members_.begin(); }
  auto end() const { return members_.end(); }
  std::vector<Exponent> to_vector() const { return {members_.begin(), members_.end()}; }

  bool operator==(const TermSet& other) const = default;

 private:
  std::size_t n_ = 0;
  std::set<Exponent> members_;
};

// Sparse polynomial over Q in n variables; no stored zero coefficients.
class Polynomial {
 public:
  using Terms = std::map<Exponent, Rational>;

  Polynomial() = default;
  explicit Polynomial(std::size_t n) : n_(n) {}
  static Polynomial constant(std::size_t n, const Rational& c);
  static Polynomial monomial(const Exponent& a, const Rational& c = 1);
  // x_i, 0-based index.
  static Polynomial variable(std::size_t n, std::size_t i);

  std::size_t nvars() const noexcept { return n_; }
  const Terms& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }
  std::size_t term_count() const noexcept { return terms_.size(); }
  // -1 for the zero polynomial.
  int degree() const;
  Rational coefficient(const Exponent& a) const;

  // Adds c*X^a; drops the entry if it cancels.
  void add_term(const Exponent& a, const Rational& c);

  Polynomial operator+(const Polynomial& other) const;
  Polynomial operator-(const Polynomial& other) const;
  Polynomial operator-() const;
  Polynomial operator*(const Polynomial& other) const;
  Polynomial operator*(const Rational& c) const;
  Polynomial pow(unsigned k) const;

  Rational evaluate(std::span<const Rational> point) const;

  bool operator==(const Polynomial& other) const = default;

  // Leading (grlex-largest) term first, e.g. "x1^4*x2^2 - 3*x1^2*x2^2 + 1".
  std::string to_string() const;

 private:
  void require_same_ring(const Polynomial& other) const;

  std::size_t n_ = 0;
  Terms terms_;
};

// Grammar: terms joined by '+'/'-'; term = [coef]['*']factor('*'factor)*;
// factor = x<idx>['^'<exp>]; coef = integer or p/q. Whitespace is ignored.
Polynomial parse_polynomial(std::string_view text, std::size_t n);

// "p/q" or integer, optionally signed; also accepts decimal notation such as
// "1e-8" or "0.25", converted exactly.
Rational parse_rational(std::string_view text);

TermSet support(const Polynomial& f);
TermSet terms_up_to(std::size_t n, int e);

// Even symmetric sextic f_{n,k} built from power sums M_r = sum_i x_i^r.
Polynomial ess_polynomial(std::size_t n, int k);
Polynomial motzkin_polynomial();
// (1 - eps^2) x1^2 + x2^2 - 2 x1 x2.
Polynomial illposed_polynomial(const Rational& eps);

// Minkowski sums of term sets.
TermSet sum_set(const TermSet& a, const TermSet& b);

}  // namespace rsoscert
