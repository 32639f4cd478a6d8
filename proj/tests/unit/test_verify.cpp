#include <random>
#include <vector>

#include "doctest.h"
#include "rsoscert/certfile.hpp"
#include "rsoscert/errors.hpp"
#include "rsoscert/verify.hpp"
#include "oracles.hpp"
#include "support.hpp"

using namespace rsoscert;
using verify::nd_check_exact;
using verify::psd_check_exact;

namespace {

RatMatrix mat(std::initializer_list<std::initializer_list<long>> rows) {
  RatMatrix m(rows.size(), rows.begin()->size());
  std::size_t i = 0;
  for (const auto& r : rows) {
    std::size_t j = 0;
    for (long v : r) m(i, j++) = v;
    ++i;
  }
  return m;
}

using oracles::det;
using oracles::psd_by_minors;

Rational quad(const RatMatrix& m, const std::vector<Rational>& x) { return oracles::quadratic_form(m, x); }

RatMatrix random_test_matrix(std::mt19937_64& rng, int trial) {
  const std::size_t k = 1 + trial % 6;
  switch (trial % 4) {
    case 0: return testkit::random_symmetric(rng, k);
    case 1: return testkit::random_psd(rng, k, 1 + trial % k);
    case 2: {
      // PSD minus a small multiple of the identity: borderline cases.
      RatMatrix m = testkit::random_psd(rng, k, k);
      return m + RatMatrix::identity(k).scaled(Rational(-1, 8));
    }
    default: return testkit::random_psd(rng, k, k);
  }
}

}  // namespace

TEST_SUITE("verify") {

TEST_CASE("psd examples") {
  CHECK(psd_check_exact(RatMatrix::identity(3)).holds);
  const auto bad = psd_check_exact(mat({{1, 2}, {2, 1}}));
  CHECK_FALSE(bad.holds);
  CHECK(quad(mat({{1, 2}, {2, 1}}), bad.witness) < 0);
  CHECK(psd_check_exact(mat({{1, 1}, {1, 1}})).holds);
  CHECK(psd_check_exact(RatMatrix(3, 3)).holds);
  const auto zero_pivot = psd_check_exact(mat({{0, 1}, {1, 0}}));
  CHECK_FALSE(zero_pivot.holds);
  CHECK(quad(mat({{0, 1}, {1, 0}}), zero_pivot.witness) < 0);
  // Largest diagonal zero with a negative diagonal elsewhere.
  const auto neg = psd_check_exact(mat({{0, 0}, {0, -3}}));
  CHECK_FALSE(neg.holds);
  CHECK(quad(mat({{0, 0}, {0, -3}}), neg.witness) < 0);
  CHECK_THROWS_AS(psd_check_exact(mat({{1, 2}, {3, 1}})), InvalidArgument);
}

TEST_CASE("nd examples") {
  CHECK(nd_check_exact(mat({{-1}})).holds);
  CHECK_FALSE(nd_check_exact(RatMatrix(2, 2)).holds);
  CHECK(nd_check_exact(mat({{-900}})).holds);
  CHECK_FALSE(nd_check_exact(mat({{-1, 0}, {0, 0}})).holds);
  const RatMatrix m = mat({{-1, 2}, {2, -1}});
  const auto r = nd_check_exact(m);
  CHECK_FALSE(r.holds);
  CHECK(quad(m, r.witness) >= 0);
  CHECK_THROWS_AS(nd_check_exact(mat({{-1, 2}, {0, -1}})), InvalidArgument);
}

TEST_CASE("psd check matches the principal-minor oracle") {
  std::mt19937_64 rng(41);
  int psd = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const RatMatrix m = random_test_matrix(rng, trial);
    const auto r = psd_check_exact(m);
    const bool expected = psd_by_minors(m);
    CHECK(r.holds == expected);
    if (!r.holds) CHECK(quad(m, r.witness) < 0);
    psd += expected;
  }
  CHECK(psd > 20);
  CHECK(psd < 100);
}

TEST_CASE("LDL recomposition is exact") {
  std::mt19937_64 rng(42);
  for (int trial = 0; trial < 100; ++trial) {
    const RatMatrix m = random_test_matrix(rng, trial);
    CHECK(psd_check_exact(m).factors.recompose() == m);
    CHECK(nd_check_exact(m).factors.recompose() == -m);
  }
}

TEST_CASE("nd agrees with strict psd of -M") {
  std::mt19937_64 rng(43);
  for (int trial = 0; trial < 100; ++trial) {
    const RatMatrix m = -random_test_matrix(rng, trial);
    const bool strict = psd_check_exact(-m).holds && det(-m) != 0;
    const auto r = nd_check_exact(m);
    CHECK(r.holds == strict);
    if (!r.holds) CHECK(quad(m, r.witness) >= 0);
  }
}

TEST_CASE("paper Motzkin certificate") {
  const Certificate c = certfile::read_file(testkit::fixture("motzkin_paper.cert"));
  const auto rep = verify::verify_certificate(c);
  CHECK(rep.accepted);
  CHECK(c.moments().apply(c.problem.f) == -900);
  CHECK(rep.nd_block->factors.recompose()(0, 0) == 900);

  const auto spot = verify::spot_check_linear_form(c, 100, 7);
  CHECK(spot.passed());
  CHECK(spot.evaluations == 200);
  // L(u^2) for u = x1 x2 and u = 1
  CHECK(c.moments().apply(parse_polynomial("x1^2*x2^2", 2)) == 300);
  CHECK(c.moments().apply(Polynomial::constant(2, 1)) == 0);
}

TEST_CASE("paper ill-posed certificate") {
  const Certificate c = certfile::read_file(testkit::fixture("illposed_paper.cert"));
  CHECK(c.problem.f == illposed_polynomial(Rational(1, 100000000)));
  const auto rep = verify::verify_certificate(c);
  CHECK(rep.accepted);
  CHECK(c.moments().apply(c.problem.f) < 0);
  CHECK(verify::spot_check_linear_form(c, 100, 8).passed());
}

TEST_CASE("rejections") {
  Certificate c = certfile::read_file(testkit::fixture("motzkin_paper.cert"));
  sdp::MomentVector zero;
  for (const auto& [a, v] : c.moments().values()) zero.set(a, 0);
  Certificate z = c;
  z.body = zero;
  const auto rz = verify::verify_certificate(z);
  CHECK_FALSE(rz.accepted);
  CHECK_FALSE(rz.nd_block->holds);

  const Certificate neg = certfile::read_file(testkit::fixture("motzkin_negated.cert"));
  const auto rn = verify::verify_certificate(neg);
  CHECK_FALSE(rn.accepted);
  CHECK_FALSE(rn.psd_block->holds);

  Certificate tampered = c;
  tampered.numerator_basis.pop_back();
  CHECK_THROWS_AS(verify::verify_certificate(tampered), verify::FingerprintMismatch);

  Certificate missing = c;
  sdp::MomentVector part;
  part.set(Exponent{2, 2}, 300);
  missing.body = part;
  CHECK_THROWS_AS(verify::verify_certificate(missing), MissingMoment);
}

TEST_CASE("no certificate verifies for (x1 - x2)^2") {
  // Gram fixture: (x1 - x2)^2 = m^T W m with W = [[1,-1],[-1,1]], m = (x2, x1).
  // Any y with M(y) >= 0 gives L(f) = <W, M(y)> >= 0, so M_0(f y) < 0 never holds.
  const Polynomial f = parse_polynomial("x1^2 - 2*x1*x2 + x2^2", 2);
  Certificate c;
  c.problem = {f, std::nullopt, 0, terms_up_to(2, 0), true};
  c.basis_kind = sdp::BasisKind::Newton;
  c.numerator_basis = verify::expected_basis(c.problem, c.basis_kind).terms();
  REQUIRE(c.numerator_basis.size() == 2);
  std::mt19937_64 rng(44);
  for (int trial = 0; trial < 50; ++trial) {
    sdp::MomentVector y;
    for (const auto& a : {Exponent{0, 2}, Exponent{1, 1}, Exponent{2, 0}}) y.set(a, testkit::random_rational(rng));
    c.body = y;
    const auto rep = verify::verify_certificate(c);
    CHECK_FALSE(rep.accepted);
    if (rep.psd_block->holds) CHECK(y.apply(f) >= 0);
  }
}

TEST_CASE("support obstruction certificates") {
  Certificate c;
  c.problem = {parse_polynomial("x1", 2), parse_polynomial("x2^2", 2), 0, terms_up_to(2, 0), false};
  c.basis_kind = sdp::BasisKind::Dense;
  c.numerator_basis = verify::expected_basis(c.problem, c.basis_kind).terms();
  c.body = sdp::SupportObstruction{Exponent{1, 0}};
  const auto ok = verify::verify_certificate(c);
  CHECK(ok.accepted);
  CHECK(*ok.support_check);
  c.body = sdp::SupportObstruction{Exponent{0, 0}};
  CHECK_FALSE(verify::verify_certificate(c).accepted);
}

}  // TEST_SUITE
