#include <random>
#include <vector>

#include "doctest.h"
#include "rsoscert/errors.hpp"
#include "rsoscert/newton.hpp"
#include "oracles.hpp"
#include "support.hpp"

using namespace rsoscert;
using newton::HullQuery;
using newton::Point;

namespace {

Point pt(std::initializer_list<long> v) {
  Point p;
  for (long x : v) p.emplace_back(x);
  return p;
}

}  // namespace

TEST_SUITE("newton") {

TEST_CASE("hull membership examples") {
  HullQuery q{{pt({0, 0}), pt({4, 2}), pt({2, 4})}, pt({4, 2})};
  CHECK(newton::hull_membership(q));
  q.point = {Rational(2), Rational(1)};
  CHECK(newton::hull_membership(q));  // midpoint of (0,0),(4,2)
  q.point = pt({5, 0});
  CHECK_FALSE(newton::hull_membership(q));
  q.point = pt({3, 3});
  CHECK(newton::hull_membership(q));
  q.point = pt({1, 3});
  CHECK_FALSE(newton::hull_membership(q));
}

TEST_CASE("hull membership degenerate and invalid") {
  HullQuery same{{pt({1, 1}), pt({1, 1})}, pt({1, 1})};
  CHECK(newton::hull_membership(same));
  same.point = pt({1, 0});
  CHECK_FALSE(newton::hull_membership(same));
  CHECK_THROWS_AS(newton::hull_membership(HullQuery{{}, pt({0})}), InvalidArgument);
  CHECK_THROWS_AS(newton::hull_membership(HullQuery{{pt({0, 1})}, pt({0})}), InvalidArgument);
}

TEST_CASE("restricted basis examples") {
  const TermSet one(2, {Exponent{0, 0}});
  CHECK(newton::restricted_basis(motzkin_polynomial(), one) ==
        TermSet(2, {Exponent{0, 0}, Exponent{1, 1}, Exponent{2, 1}, Exponent{1, 2}}));
  CHECK(newton::restricted_basis(illposed_polynomial(Rational(1, 100000000)), one) ==
        TermSet(2, {Exponent{1, 0}, Exponent{0, 1}}));
  CHECK(newton::restricted_basis(Polynomial::constant(2, 1), one) == one);
  CHECK_THROWS_AS(newton::restricted_basis(Polynomial(2), one), InvalidArgument);
  CHECK_THROWS_AS(newton::restricted_basis(motzkin_polynomial(), TermSet(2)), InvalidArgument);
}

TEST_CASE("restricted basis stays inside the dense basis") {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 15; ++trial) {
    const std::size_t n = 1 + trial % 3;
    const Polynomial f = testkit::random_nonzero(rng, n, 4, 4);
    const int e = trial % 2;
    const TermSet T = terms_up_to(n, e);
    const int d = (2 * e + f.degree() + 1) / 2;
    const TermSet dense = terms_up_to(n, d);
    for (const auto& a : newton::restricted_basis(f, T)) CHECK(dense.contains(a));
  }
}

TEST_CASE("hull membership matches the elimination oracle") {
  std::mt19937_64 rng(22);
  std::uniform_int_distribution<int> coord(0, 4), count(1, 6), dimd(1, 3);
  int inside = 0;
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t dim = dimd(rng);
    HullQuery q;
    const int g = count(rng);
    for (int i = 0; i < g; ++i) {
      Point p(dim);
      for (auto& v : p) v = coord(rng);
      q.generators.push_back(p);
    }
    q.point.resize(dim);
    // Half the queries are random convex combinations, so both outcomes occur.
    if (trial % 2 == 0) {
      Rational total = 0;
      std::vector<Rational> w(g);
      for (auto& v : w) {
        v = coord(rng);
        total += v;
      }
      if (total == 0) w[0] = total = 1;
      for (std::size_t r = 0; r < dim; ++r) {
        for (int i = 0; i < g; ++i) q.point[r] += w[i] / total * q.generators[i][r];
      }
    } else {
      for (auto& v : q.point) v = Rational(coord(rng) * 2 + 1, 2);
    }
    const bool expected = oracles::hull_by_elimination(q);
    inside += expected;
    CHECK(newton::hull_membership(q) == expected);
  }
  CHECK(inside > 10);
  CHECK(inside < 50);
}

}  // TEST_SUITE
