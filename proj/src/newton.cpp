#include "rsoscert/newton.hpp"

#include <algorithm>
#include <optional>

#include "rsoscert/errors.hpp"

namespace rsoscert::newton {

HullQuery HullQuery::from_exponents(const std::vector<Exponent>& generators,
                                    const Exponent& point) {
  auto to_point = [](const Exponent& a) {
    Point p;
    p.reserve(a.size());
    for (int v : a.entries()) p.emplace_back(v);
    return p;
  };
  HullQuery q;
  q.generators.reserve(generators.size());
  for (const auto& g : generators) q.generators.push_back(to_point(g));
  q.point = to_point(point);
  return q;
}

namespace {

// Dense tableau for: min sum(artificials) s.t. A x + I a = b, x, a >= 0, b >= 0.
// Returns true iff the optimum is zero.
bool phase_one_feasible(std::vector<std::vector<Rational>> A, std::vector<Rational> b) {
  const std::size_t rows = A.size();
  const std::size_t cols = rows ? A[0].size() : 0;
  const std::size_t total = cols + rows;
  for (std::size_t r = 0; r < rows; ++r) {
    if (b[r] < 0) {
      for (auto& v : A[r]) v = -v;
      b[r] = -b[r];
    }
  }
  // tableau rows: [A | I | b]
  std::vector<std::vector<Rational>> t(rows, std::vector<Rational>(total + 1));
  std::vector<std::size_t> basis(rows);
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) t[r][c] = A[r][c];
    t[r][cols + r] = 1;
    t[r][total] = b[r];
    basis[r] = cols + r;
  }
  // reduced costs of the phase-one objective: cost 1 on artificials
  std::vector<Rational> z(total + 1);
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c <= total; ++c) {
      if (c < cols || c == total) z[c] -= t[r][c];
    }
  }
  while (true) {
    // Bland: smallest index with negative reduced cost
    std::optional<std::size_t> enter;
    for (std::size_t c = 0; c < total; ++c) {
      if (z[c] < 0) {
        enter = c;
        break;
      }
    }
    if (!enter) break;
    std::optional<std::size_t> leave;
    Rational best_ratio;
    for (std::size_t r = 0; r < rows; ++r) {
      if (t[r][*enter] <= 0) continue;
      Rational ratio = t[r][total] / t[r][*enter];
      if (!leave || ratio < best_ratio ||
          (ratio == best_ratio && basis[r] < basis[*leave])) {
        leave = r;
        best_ratio = ratio;
      }
    }
    // Phase one is bounded below by zero, so an entering column always has a pivot row.
    if (!leave) break;
    const std::size_t pr = *leave;
    const Rational piv = t[pr][*enter];
    for (auto& v : t[pr]) v /= piv;
    for (std::size_t r = 0; r < rows; ++r) {
      if (r == pr || t[r][*enter] == 0) continue;
      const Rational factor = t[r][*enter];
      for (std::size_t c = 0; c <= total; ++c) t[r][c] -= factor * t[pr][c];
    }
    if (z[*enter] != 0) {
      const Rational factor = z[*enter];
      for (std::size_t c = 0; c <= total; ++c) z[c] -= factor * t[pr][c];
    }
    basis[pr] = *enter;
  }
  // z[total] holds minus the objective value
  return z[total] == 0;
}

}  // namespace

bool hull_membership(const HullQuery& query) {
  if (query.generators.empty()) throw InvalidArgument("hull query needs at least one generator");
  const std::size_t dim = query.point.size();
  for (const auto& g : query.generators) {
    if (g.size() != dim) throw InvalidArgument("hull query dimension mismatch");
  }
  for (const auto& g : query.generators) {
    if (g == query.point) return true;
  }
  for (std::size_t k = 0; k < dim; ++k) {
    Rational lo = query.generators[0][k], hi = lo;
    for (const auto& g : query.generators) {
      lo = std::min(lo, g[k]);
      hi = std::max(hi, g[k]);
    }
    if (query.point[k] < lo || query.point[k] > hi) return false;
  }
  const bool degenerate = std::all_of(query.generators.begin(), query.generators.end(),
                                      [&](const Point& g) { return g == query.generators[0]; });
  if (degenerate) return false;  // point differs from the single distinct generator

  const std::size_t cols = query.generators.size();
  std::vector<std::vector<Rational>> A(dim + 1, std::vector<Rational>(cols));
  std::vector<Rational> b(dim + 1);
  for (std::size_t c = 0; c < cols; ++c) {
    for (std::size_t k = 0; k < dim; ++k) A[k][c] = query.generators[c][k];
    A[dim][c] = 1;
  }
  for (std::size_t k = 0; k < dim; ++k) b[k] = query.point[k];
  b[dim] = 1;
  return phase_one_feasible(std::move(A), std::move(b));
}

TermSet hull_generators(const Polynomial& f, const TermSet& T) {
  if (f.nvars() != T.nvars()) throw InvalidArgument("polynomial and term set differ in n");
  return sum_set(support(f), sum_set(T, T));
}

TermSet restricted_basis(const Polynomial& f, const TermSet& T) {
  if (f.is_zero()) throw InvalidArgument("restricted basis of the zero polynomial");
  if (T.empty()) throw InvalidArgument("denominator term set is empty");
  const TermSet gens = hull_generators(f, T);
  const std::vector<Exponent> gen_list = gens.to_vector();
  const int e = T.max_degree();
  const int d = (2 * e + f.degree() + 1) / 2;
  TermSet out(f.nvars());
  for (const auto& alpha : terms_up_to(f.nvars(), d)) {
    const Exponent doubled = alpha.scaled(2);
    if (gens.contains(doubled) ||
        hull_membership(HullQuery::from_exponents(gen_list, doubled))) {
      out.insert(alpha);
    }
  }
  return out;
}

}  // namespace rsoscert::newton
