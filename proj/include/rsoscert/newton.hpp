#pragma once

#include <vector>

#include "rsoscert/polyring.hpp"

namespace rsoscert::newton {

using Point = std::vector<Rational>;

struct HullQuery {
  std::vector<Point> generators;
  Point point;

  static HullQuery from_exponents(const std::vector<Exponent>& generators, const Exponent& point);
};

// True iff query.point lies in the convex hull of query.generators. Decided
// exactly: phase-one simplex over Q with Bland's rule on
//   lambda >= 0, sum lambda = 1, sum lambda_i g_i = point.
bool hull_membership(const HullQuery& query);

// Generators beta + gamma1 + gamma2 with beta in supp(f) and gamma1, gamma2 in T.
TermSet hull_generators(const Polynomial& f, const TermSet& T);

// {alpha : 2 alpha in conv(hull_generators(f, T))}, searched over all terms of
// degree <= ceil(e + deg(f)/2), e = max degree in T.
TermSet restricted_basis(const Polynomial& f, const TermSet& T);

}  // namespace rsoscert::newton
