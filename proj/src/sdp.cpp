#include "rsoscert/sdp.hpp"

#include <algorithm>

#include "rsoscert/errors.hpp"
#include "rsoscert/newton.hpp"

namespace rsoscert::sdp {

MonomialIndex::MonomialIndex(const TermSet& terms) : terms_(terms.to_vector()) {
  for (std::size_t i = 0; i < terms_.size(); ++i) lookup_.emplace(terms_[i], i);
}

std::optional<std::size_t> MonomialIndex::position(const Exponent& a) const {
  auto it = lookup_.find(a);
  if (it == lookup_.end()) return std::nullopt;
  return it->second;
}

TermSet MonomialIndex::as_set(std::size_t n) const {
  TermSet s(n);
  for (const auto& a : terms_) s.insert(a);
  return s;
}

const Rational& MomentVector::at(const Exponent& a) const {
  auto it = values_.find(a);
  if (it == values_.end()) throw MissingMoment("moment vector has no entry for (" + a.to_string() + ")");
  return it->second;
}

Rational MomentVector::apply(const Polynomial& q) const {
  Rational total = 0;
  for (const auto& [a, c] : q.terms()) total += c * at(a);
  return total;
}

void SparseSym::add(std::size_t r, std::size_t c, const Rational& v) {
  if (r > c) std::swap(r, c);
  entries.push_back({r, c, v});
}

RatMatrix SparseSym::dense() const {
  RatMatrix m(dim, dim);
  for (const auto& e : entries) {
    m(e.row, e.col) += e.value;
    if (e.row != e.col) m(e.col, e.row) += e.value;
  }
  return m;
}

Rational SparseSym::dot(const RatMatrix& W) const {
  Rational total = 0;
  for (const auto& e : entries) {
    if (e.row == e.col) {
      total += e.value * W(e.row, e.col);
    } else {
      total += e.value * (W(e.row, e.col) + W(e.col, e.row));
    }
  }
  return total;
}

Rational SparseSym::trace() const {
  Rational t = 0;
  for (const auto& e : entries) {
    if (e.row == e.col) t += e.value;
  }
  return t;
}

RatMatrix SdpInstance::numerator_matrix(const MomentVector& y) const {
  if (problem.g) return localizing_matrix(*problem.g, y, numerator_basis);
  return moment_matrix(y, numerator_basis);
}

RatMatrix SdpInstance::denominator_matrix(const MomentVector& y) const {
  return localizing_matrix(problem.f, y, denominator_basis);
}

int numerator_degree(const Problem& p) {
  const int df = p.f.degree();
  if (!p.g) return (2 * p.e + df + 1) / 2;  // ceil(e + deg f / 2)
  const int diff = df - p.g->degree();
  const int half = diff <= 0 ? 0 : (diff + 1) / 2;
  return p.e + half;
}

void validate(const Problem& p) {
  if (p.f.is_zero()) throw InvalidArgument("f is the zero polynomial");
  if (p.g && p.g->is_zero()) throw InvalidArgument("g is the zero polynomial");
  if (p.g && p.g->nvars() != p.f.nvars()) throw InvalidArgument("f and g differ in n");
  if (p.T.empty()) throw InvalidArgument("denominator term set is empty");
  if (p.T.nvars() != p.f.nvars()) throw InvalidArgument("term set and f differ in n");
  if (p.e < 0) throw InvalidArgument("denominator degree bound must be nonnegative");
  if (p.T.max_degree() > p.e) throw InvalidArgument("term set exceeds the degree bound e");
}

TermSet gamma_one(const Problem& p, const MonomialIndex& basis) {
  const std::size_t n = p.f.nvars();
  const TermSet bb = sum_set(basis.as_set(n), basis.as_set(n));
  if (!p.g) return bb;
  return sum_set(support(*p.g), bb);
}

TermSet gamma_two(const Problem& p) { return sum_set(support(p.f), sum_set(p.T, p.T)); }

namespace {

SdpInstance build(const Problem& p, MonomialIndex basis, BasisKind kind, const TermSet& gamma1,
                  const TermSet& gamma2) {
  SdpInstance inst;
  inst.problem = p;
  inst.basis_kind = kind;
  inst.d = numerator_degree(p);
  inst.numerator_basis = std::move(basis);
  inst.denominator_basis = MonomialIndex(p.T);

  TermSet all = gamma1;
  for (const auto& a : gamma2) all.insert(a);
  inst.constraint_monomials = all.to_vector();
  std::map<Exponent, std::size_t> row_of;
  for (std::size_t i = 0; i < inst.constraint_monomials.size(); ++i) {
    row_of.emplace(inst.constraint_monomials[i], i);
  }
  inst.G.assign(inst.m(), SparseSym{inst.k1(), {}});
  inst.H.assign(inst.m(), SparseSym{inst.k2(), {}});

  const Polynomial g = p.g ? *p.g : Polynomial::constant(p.f.nvars(), 1);
  const auto& B = inst.numerator_basis;
  for (std::size_t i = 0; i < B.size(); ++i) {
    for (std::size_t j = i; j < B.size(); ++j) {
      const Exponent bij = B[i] + B[j];
      for (const auto& [gamma, c] : g.terms()) inst.G[row_of.at(gamma + bij)].add(i, j, c);
    }
  }
  const auto& T = inst.denominator_basis;
  for (std::size_t i = 0; i < T.size(); ++i) {
    for (std::size_t j = i; j < T.size(); ++j) {
      const Exponent tij = T[i] + T[j];
      for (const auto& [gamma, c] : p.f.terms()) inst.H[row_of.at(gamma + tij)].add(i, j, -c);
    }
  }
  return inst;
}

}  // namespace

std::variant<SdpInstance, SupportObstruction> assemble(const Problem& p) {
  validate(p);
  const std::size_t n = p.f.nvars();
  const int d = numerator_degree(p);
  if (!p.g) {
    MonomialIndex basis(p.use_sparsity ? newton::restricted_basis(p.f, p.T) : terms_up_to(n, d));
    TermSet g1 = gamma_one(p, basis);
    TermSet g2 = gamma_two(p);
    return build(p, std::move(basis), p.use_sparsity ? BasisKind::Newton : BasisKind::Dense, g1,
                 g2);
  }
  MonomialIndex basis(terms_up_to(n, d));
  TermSet g1 = gamma_one(p, basis);
  TermSet g2 = gamma_two(p);
  for (const auto& a : g2) {
    if (!g1.contains(a)) return SupportObstruction{a};
  }
  return build(p, std::move(basis), BasisKind::Dense, g1, g2);
}

SdpInstance assemble_polynomial_instance(const Polynomial& f, const TermSet& T,
                                         bool use_sparsity) {
  Problem p{f, std::nullopt, T.max_degree(), T, use_sparsity};
  return std::get<SdpInstance>(assemble(p));
}

std::variant<SdpInstance, SupportObstruction> assemble_rational_instance(const Polynomial& f,
                                                                         const Polynomial& g,
                                                                         const TermSet& T) {
  Problem p{f, g, T.max_degree(), T, false};
  return assemble(p);
}

RatMatrix moment_matrix(const MomentVector& y, const MonomialIndex& basis) {
  const std::size_t k = basis.size();
  RatMatrix M(k, k);
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = i; j < k; ++j) {
      M(i, j) = y.at(basis[i] + basis[j]);
      M(j, i) = M(i, j);
    }
  }
  return M;
}

RatMatrix localizing_matrix(const Polynomial& q, const MomentVector& y,
                            const MonomialIndex& basis) {
  const std::size_t k = basis.size();
  RatMatrix M(k, k);
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = i; j < k; ++j) {
      const Exponent bij = basis[i] + basis[j];
      Rational v = 0;
      for (const auto& [gamma, c] : q.terms()) v += c * y.at(gamma + bij);
      M(i, j) = v;
      M(j, i) = v;
    }
  }
  return M;
}

}  // namespace rsoscert::sdp
