#include <random>
#include <variant>

#include "doctest.h"
#include "rsoscert/errors.hpp"
#include "rsoscert/sdp.hpp"
#include "support.hpp"

using namespace rsoscert;
using sdp::MomentVector;
using sdp::MonomialIndex;

namespace {

long choose(long n, long k) {
  long r = 1;
  for (long i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

MomentVector random_moments(std::mt19937_64& rng, const std::vector<Exponent>& monomials) {
  MomentVector y;
  for (const auto& a : monomials) y.set(a, testkit::random_rational(rng));
  return y;
}

RatMatrix combine(const std::vector<sdp::SparseSym>& mats, const sdp::SdpInstance& inst,
                  const MomentVector& y, std::size_t dim) {
  RatMatrix out(dim, dim);
  for (std::size_t i = 0; i < inst.m(); ++i) out = out + mats[i].dense().scaled(y.at(inst.constraint_monomials[i]));
  return out;
}

// m_B^T W m_B as a polynomial.
Polynomial gram_polynomial(const MonomialIndex& b, const RatMatrix& W, std::size_t n) {
  Polynomial p(n);
  for (std::size_t i = 0; i < b.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) p.add_term(b[i] + b[j], W(i, j));
  }
  return p;
}

}  // namespace

TEST_SUITE("sdp") {

TEST_CASE("paper dimensions") {
  const auto motz = sdp::assemble_polynomial_instance(motzkin_polynomial(), terms_up_to(2, 0), true);
  CHECK(motz.k1() == 4);
  CHECK(motz.k2() == 1);
  CHECK(motz.m() == 10);
  CHECK(motz.basis_kind == sdp::BasisKind::Newton);

  const auto f42 = sdp::assemble_polynomial_instance(ess_polynomial(4, 2), terms_up_to(4, 1), true);
  CHECK(f42.k1() == 55);
  CHECK(f42.k2() == 5);
  CHECK(f42.m() == 369);
}

TEST_CASE("f_{5,2} dimensions") {
  const auto f52 = sdp::assemble_polynomial_instance(ess_polynomial(5, 2), terms_up_to(5, 1), true);
  CHECK(f52.k1() == 105);
  CHECK(f52.k2() == 6);
  CHECK(f52.m() == 1035);  // lattice points of New(f * (1 + sum x_i)^2), counted independently
}

TEST_CASE("dense univariate example") {
  const auto inst = sdp::assemble_polynomial_instance(parse_polynomial("x1^2", 1), terms_up_to(1, 0), false);
  CHECK(inst.d == 1);
  CHECK(inst.k1() == 2);
  CHECK(inst.k2() == 1);
  CHECK(inst.k1() + inst.k2() == 3);
}

TEST_CASE("dense m equals C(n+2d, 2d)") {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 10; ++trial) {
    const std::size_t n = 1 + trial % 3;
    const Polynomial f = testkit::random_nonzero(rng, n, 4, 3);
    const int e = trial % 2;
    const auto inst = sdp::assemble_polynomial_instance(f, terms_up_to(n, e), false);
    CHECK(static_cast<long>(inst.m()) == choose(static_cast<long>(n) + 2 * inst.d, 2 * inst.d));
    CHECK(static_cast<long>(inst.k1()) == choose(static_cast<long>(n) + inst.d, inst.d));
  }
}

TEST_CASE("rational-function instances") {
  sdp::Problem p;
  p.f = motzkin_polynomial();
  p.g = parse_polynomial("x1^2 + 1", 2);
  p.e = 1;
  p.T = terms_up_to(2, 1);
  p.use_sparsity = false;
  const auto r = sdp::assemble(p);
  REQUIRE(std::holds_alternative<sdp::SdpInstance>(r));
  const auto& inst = std::get<sdp::SdpInstance>(r);
  CHECK(inst.d == 1 + 2);
  CHECK(inst.k1() == 10);
  CHECK(inst.k2() == 3);

  const auto ob = sdp::assemble_rational_instance(parse_polynomial("x1", 2), parse_polynomial("x2^2", 2),
                                                  terms_up_to(2, 0));
  REQUIRE(std::holds_alternative<sdp::SupportObstruction>(ob));
  CHECK(std::get<sdp::SupportObstruction>(ob).witness == Exponent{1, 0});
}

TEST_CASE("g = 1 reproduces the dense polynomial instance") {
  std::mt19937_64 rng(32);
  for (int trial = 0; trial < 5; ++trial) {
    const std::size_t n = 1 + trial % 2;
    const Polynomial f = testkit::random_nonzero(rng, n, 4, 3);
    const TermSet T = terms_up_to(n, 1);
    const auto a = sdp::assemble_polynomial_instance(f, T, false);
    const auto r = sdp::assemble_rational_instance(f, Polynomial::constant(n, 1), T);
    REQUIRE(std::holds_alternative<sdp::SdpInstance>(r));
    const auto& b = std::get<sdp::SdpInstance>(r);
    CHECK(a.numerator_basis == b.numerator_basis);
    CHECK(a.denominator_basis == b.denominator_basis);
    CHECK(a.constraint_monomials == b.constraint_monomials);
    for (std::size_t i = 0; i < a.m(); ++i) {
      CHECK(a.G[i].dense() == b.G[i].dense());
      CHECK(a.H[i].dense() == b.H[i].dense());
    }
  }
}

TEST_CASE("moment and localizing matrix examples") {
  const MonomialIndex b1(terms_up_to(1, 1));
  MomentVector y;
  y.set(Exponent{0}, 1);
  y.set(Exponent{1}, 0);
  y.set(Exponent{2}, 1);
  CHECK(sdp::moment_matrix(y, b1) == RatMatrix::identity(2));
  CHECK(sdp::localizing_matrix(Polynomial::constant(1, 1), y, b1) == sdp::moment_matrix(y, b1));
  CHECK(sdp::localizing_matrix(Polynomial(1), y, b1).is_zero());
  const MonomialIndex unit(terms_up_to(1, 0));
  CHECK(sdp::moment_matrix(y, unit)(0, 0) == 1);

  const auto motz = sdp::assemble_polynomial_instance(motzkin_polynomial(), terms_up_to(2, 0), true);
  MomentVector paper;
  for (const auto& a : motz.constraint_monomials) paper.set(a, 0);
  paper.set(Exponent{2, 2}, 300);
  const RatMatrix M = sdp::moment_matrix(paper, motz.numerator_basis);
  const std::size_t xy = *motz.numerator_basis.position(Exponent{1, 1});
  for (std::size_t i = 0; i < M.rows(); ++i) {
    for (std::size_t j = 0; j < M.cols(); ++j) CHECK(M(i, j) == ((i == xy && j == xy) ? 300 : 0));
  }
  CHECK(motz.denominator_matrix(paper)(0, 0) == -900);

  MomentVector partial;
  partial.set(Exponent{0}, 1);
  CHECK_THROWS_AS(sdp::moment_matrix(partial, b1), MissingMoment);
}

TEST_CASE("assembly identity holds symbolically") {
  std::mt19937_64 rng(33);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t n = 1 + trial % 3;
    const Polynomial f = testkit::random_nonzero(rng, n, 4, 3);
    const TermSet T = terms_up_to(n, trial % 2);
    const auto inst = sdp::assemble_polynomial_instance(f, T, trial % 3 != 0);
    const RatMatrix W1 = testkit::random_symmetric(rng, inst.k1());
    const RatMatrix W2 = testkit::random_symmetric(rng, inst.k2());
    const Polynomial lhs = gram_polynomial(inst.numerator_basis, W1, n) -
                           f * gram_polynomial(inst.denominator_basis, W2, n);
    Polynomial rhs(n);
    for (std::size_t i = 0; i < inst.m(); ++i) {
      rhs.add_term(inst.constraint_monomials[i], inst.G[i].dot(W1) + inst.H[i].dot(W2));
    }
    CHECK(lhs == rhs);
  }
}

TEST_CASE("assembly identity for rational functions") {
  std::mt19937_64 rng(34);
  int checked = 0;
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t n = 1 + trial % 2;
    const Polynomial f = testkit::random_nonzero(rng, n, 3, 3);
    const Polynomial g = testkit::random_nonzero(rng, n, 2, 3);
    const auto r = sdp::assemble_rational_instance(f, g, terms_up_to(n, 1));
    if (!std::holds_alternative<sdp::SdpInstance>(r)) continue;
    const auto& inst = std::get<sdp::SdpInstance>(r);
    const RatMatrix W1 = testkit::random_symmetric(rng, inst.k1());
    const RatMatrix W2 = testkit::random_symmetric(rng, inst.k2());
    const Polynomial lhs = g * gram_polynomial(inst.numerator_basis, W1, n) -
                           f * gram_polynomial(inst.denominator_basis, W2, n);
    Polynomial rhs(n);
    for (std::size_t i = 0; i < inst.m(); ++i) {
      rhs.add_term(inst.constraint_monomials[i], inst.G[i].dot(W1) + inst.H[i].dot(W2));
    }
    CHECK(lhs == rhs);
    ++checked;
  }
  CHECK(checked > 0);
}

TEST_CASE("dual consistency and block structure") {
  std::mt19937_64 rng(35);
  for (int trial = 0; trial < 10; ++trial) {
    const std::size_t n = 1 + trial % 3;
    const Polynomial f = testkit::random_nonzero(rng, n, 4, 3);
    const auto inst = sdp::assemble_polynomial_instance(f, terms_up_to(n, trial % 2), trial % 2 == 0);
    const MomentVector y = random_moments(rng, inst.constraint_monomials);
    CHECK(combine(inst.G, inst, y, inst.k1()) == sdp::moment_matrix(y, inst.numerator_basis));
    CHECK(combine(inst.H, inst, y, inst.k2()) == sdp::localizing_matrix(-f, y, inst.denominator_basis));
    for (std::size_t i = 0; i < inst.m(); ++i) {
      CHECK(inst.G[i].dim == inst.k1());
      CHECK(inst.H[i].dim == inst.k2());
      for (const auto& e : inst.G[i].entries) CHECK((e.row <= e.col && e.col < inst.k1()));
      for (const auto& e : inst.H[i].entries) CHECK((e.row <= e.col && e.col < inst.k2()));
      CHECK((!inst.G[i].entries.empty() || !inst.H[i].entries.empty()));
    }
  }
  const Polynomial g = parse_polynomial("x1^2 + 1", 2);
  const auto r = sdp::assemble_rational_instance(motzkin_polynomial(), g, terms_up_to(2, 1));
  const auto& inst = std::get<sdp::SdpInstance>(r);
  const MomentVector y = random_moments(rng, inst.constraint_monomials);
  CHECK(combine(inst.G, inst, y, inst.k1()) == sdp::localizing_matrix(g, y, inst.numerator_basis));
}

TEST_CASE("constraint monomials are sorted and distinct") {
  const auto inst = sdp::assemble_polynomial_instance(ess_polynomial(3, 2), terms_up_to(3, 1), true);
  for (std::size_t i = 1; i < inst.m(); ++i) CHECK(inst.constraint_monomials[i - 1] < inst.constraint_monomials[i]);
}

TEST_CASE("invalid problems") {
  CHECK_THROWS_AS(sdp::assemble_polynomial_instance(Polynomial(2), terms_up_to(2, 0), true), InvalidArgument);
  CHECK_THROWS_AS(sdp::assemble_polynomial_instance(motzkin_polynomial(), TermSet(2), true), InvalidArgument);
}

}  // TEST_SUITE
