#pragma once

#include <random>
#include <string>

#include "rsoscert/polyring.hpp"
#include "rsoscert/ratmatrix.hpp"

#ifndef RSOSCERT_FIXTURES
#define RSOSCERT_FIXTURES "tests/fixtures"
#endif

namespace testkit {

using rsoscert::Exponent;
using rsoscert::Polynomial;
using rsoscert::RatMatrix;
using rsoscert::Rational;

inline std::string fixture(const std::string& name) { return std::string(RSOSCERT_FIXTURES) + "/" + name; }

inline Rational random_rational(std::mt19937_64& rng, int span = 9, int den = 9) {
  std::uniform_int_distribution<int> a(-span, span), b(1, den);
  Rational q(a(rng), b(rng));
  q.canonicalize();
  return q;
}

inline Exponent random_exponent(std::mt19937_64& rng, std::size_t n, int max_degree) {
  std::vector<int> e(n, 0);
  std::uniform_int_distribution<int> deg(0, max_degree);
  std::uniform_int_distribution<std::size_t> var(0, n - 1);
  for (int d = deg(rng); d > 0; --d) ++e[var(rng)];
  return Exponent(std::move(e));
}

inline Polynomial random_polynomial(std::mt19937_64& rng, std::size_t n, int max_degree,
                                    int terms) {
  Polynomial p(n);
  for (int t = 0; t < terms; ++t) p.add_term(random_exponent(rng, n, max_degree), random_rational(rng));
  return p;
}

inline Polynomial random_nonzero(std::mt19937_64& rng, std::size_t n, int max_degree, int terms) {
  for (;;) {
    Polynomial p = random_polynomial(rng, n, max_degree, terms);
    if (!p.is_zero()) return p;
  }
}

inline RatMatrix random_symmetric(std::mt19937_64& rng, std::size_t k, int span = 5) {
  RatMatrix m(k, k);
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = i; j < k; ++j) {
      m(i, j) = random_rational(rng, span, 3);
      m(j, i) = m(i, j);
    }
  }
  return m;
}

// B^T B scaled: PSD of rank <= r.
inline RatMatrix random_psd(std::mt19937_64& rng, std::size_t k, std::size_t r) {
  RatMatrix b(r, k);
  for (std::size_t i = 0; i < r; ++i) {
    for (std::size_t j = 0; j < k; ++j) b(i, j) = random_rational(rng, 3, 2);
  }
  return b.transpose() * b;
}

}  // namespace testkit
