#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <variant>
#include <vector>

#include "rsoscert/polyring.hpp"
#include "rsoscert/ratmatrix.hpp"

namespace rsoscert::sdp {

// Row/column labels of a Gram block, sorted ascending in grlex order.
class MonomialIndex {
 public:
  MonomialIndex() = default;
  explicit MonomialIndex(const TermSet& terms);

  std::size_t size() const noexcept { return terms_.size(); }
  const Exponent& operator[](std::size_t i) const { return terms_[i]; }
  const std::vector<Exponent>& terms() const noexcept { return terms_; }
  std::optional<std::size_t> position(const Exponent& a) const;
  TermSet as_set(std::size_t n) const;

  bool operator==(const MonomialIndex& o) const { return terms_ == o.terms_; }

 private:
  std::vector<Exponent> terms_;
  std::map<Exponent, std::size_t> lookup_;
};

// Exponent -> rational. Absent entries are unassigned, never implicitly zero.
class MomentVector {
 public:
  using Map = std::map<Exponent, Rational>;

  MomentVector() = default;
  explicit MomentVector(Map values) : values_(std::move(values)) {}

  const Rational& at(const Exponent& a) const;
  bool contains(const Exponent& a) const { return values_.count(a) != 0; }
  void set(const Exponent& a, const Rational& v) { values_[a] = v; }
  std::size_t size() const noexcept { return values_.size(); }
  const Map& values() const noexcept { return values_; }

  // L_y(q) = sum_alpha y_alpha q_alpha.
  Rational apply(const Polynomial& q) const;

  bool operator==(const MomentVector& o) const = default;

 private:
  Map values_;
};

// Symmetric matrix stored as its upper triangle (row <= col).
struct SymEntry {
  std::size_t row;
  std::size_t col;
  Rational value;
};

struct SparseSym {
  std::size_t dim = 0;
  std::vector<SymEntry> entries;

  void add(std::size_t r, std::size_t c, const Rational& v);
  RatMatrix dense() const;
  // Frobenius product with a dense symmetric matrix.
  Rational dot(const RatMatrix& W) const;
  Rational trace() const;
};

enum class BasisKind { Newton, Dense };

// What is being refuted: f (or f/g) in RSOS_T with T a subset of terms of degree <= e.
struct Problem {
  Polynomial f;
  std::optional<Polynomial> g;
  int e = 0;
  TermSet T;
  bool use_sparsity = true;  // polynomial case only

  bool is_rational() const noexcept { return g.has_value(); }

  bool operator==(const Problem& o) const = default;
};

struct SdpInstance {
  Problem problem;
  BasisKind basis_kind = BasisKind::Dense;
  int d = 0;
  MonomialIndex numerator_basis;    // k1 labels
  MonomialIndex denominator_basis;  // k2 labels (the set T)
  std::vector<Exponent> constraint_monomials;  // grlex ascending, size m
  std::vector<SparseSym> G;  // numerator block, one per constraint monomial
  std::vector<SparseSym> H;  // denominator block, one per constraint monomial
  // The trace row is the identity on the denominator block: Tr(W2) = 1.

  std::size_t k1() const noexcept { return numerator_basis.size(); }
  std::size_t k2() const noexcept { return denominator_basis.size(); }
  std::size_t m() const noexcept { return constraint_monomials.size(); }
  std::size_t nvars() const noexcept { return problem.f.nvars(); }

  // Moment/localizing matrix on the numerator block: M(y) or M(g y).
  RatMatrix numerator_matrix(const MomentVector& y) const;
  // M_e(f y) on the denominator block (note: +f, the certificate's sign).
  RatMatrix denominator_matrix(const MomentVector& y) const;
};

struct SupportObstruction {
  Exponent witness;  // in Gamma2 \ Gamma1

  bool operator==(const SupportObstruction& o) const = default;
};

// Degree of the numerator basis.
int numerator_degree(const Problem& p);

// Gamma1 = supp(g) + B + B (g = 1 for polynomials); Gamma2 = supp(f) + T + T.
TermSet gamma_one(const Problem& p, const MonomialIndex& basis);
TermSet gamma_two(const Problem& p);

// Validates the problem (nonzero f, nonempty T within degree e, matching n).
void validate(const Problem& p);

SdpInstance assemble_polynomial_instance(const Polynomial& f, const TermSet& T,
                                         bool use_sparsity);
std::variant<SdpInstance, SupportObstruction> assemble_rational_instance(const Polynomial& f,
                                                                         const Polynomial& g,
                                                                         const TermSet& T);
// Dispatches on p.is_rational(); keeps p.e in the fingerprint.
std::variant<SdpInstance, SupportObstruction> assemble(const Problem& p);

RatMatrix moment_matrix(const MomentVector& y, const MonomialIndex& basis);
RatMatrix localizing_matrix(const Polynomial& q, const MomentVector& y,
                            const MonomialIndex& basis);

}  // namespace rsoscert::sdp
