#include "rsoscert/verify.hpp"

#include <random>
#include <sstream>

#include "rsoscert/newton.hpp"

namespace rsoscert::verify {

namespace {

// Solves L^T x' = w for unit lower triangular L and maps x' back through perm.
std::vector<Rational> pull_back(const LdlFactors& f, const std::vector<Rational>& w) {
  const std::size_t n = w.size();
  std::vector<Rational> xp(n);
  for (std::size_t i = n; i-- > 0;) {
    Rational v = w[i];
    for (std::size_t j = i + 1; j < n; ++j) v -= f.L(j, i) * xp[j];
    xp[i] = v;
  }
  std::vector<Rational> x(n);
  for (std::size_t i = 0; i < n; ++i) x[f.perm[i]] = xp[i];
  return x;
}

void swap_symmetric(RatMatrix& A, std::size_t a, std::size_t b) {
  const std::size_t n = A.rows();
  for (std::size_t j = 0; j < n; ++j) std::swap(A(a, j), A(b, j));
  for (std::size_t i = 0; i < n; ++i) std::swap(A(i, a), A(i, b));
}

// Eliminates column k of A (pivot A(k,k) != 0) into L and the trailing Schur block.
void eliminate(RatMatrix& A, LdlFactors& f, std::size_t k) {
  const std::size_t n = A.rows();
  const Rational piv = A(k, k);
  f.D[k] = piv;
  for (std::size_t i = k + 1; i < n; ++i) f.L(i, k) = A(i, k) / piv;
  for (std::size_t i = k + 1; i < n; ++i) {
    if (f.L(i, k) == 0) continue;
    for (std::size_t j = k + 1; j < n; ++j) A(i, j) -= f.L(i, k) * A(k, j);
  }
  for (std::size_t i = k; i < n; ++i) {
    A(i, k) = 0;
    A(k, i) = 0;
  }
}

LdlFactors start(std::size_t n) {
  LdlFactors f;
  f.perm.resize(n);
  for (std::size_t i = 0; i < n; ++i) f.perm[i] = i;
  f.L = RatMatrix::identity(n);
  f.D.assign(n, Rational(0));
  return f;
}

std::vector<Rational> unit(std::size_t n, std::size_t i) {
  std::vector<Rational> w(n);
  w[i] = 1;
  return w;
}

void require_symmetric(const RatMatrix& M) {
  if (!M.is_symmetric()) throw InvalidArgument("definiteness check needs a symmetric matrix");
}

}  // namespace

RatMatrix LdlFactors::recompose() const {
  const std::size_t n = L.rows();
  // middle = blockdiag(D[0..processed), schur)
  RatMatrix middle(n, n);
  for (std::size_t i = 0; i < processed; ++i) middle(i, i) = D[i];
  for (std::size_t i = processed; i < n; ++i) {
    for (std::size_t j = processed; j < n; ++j) middle(i, j) = schur(i - processed, j - processed);
  }
  const RatMatrix permuted = L * middle * L.transpose();
  RatMatrix out(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) out(perm[i], perm[j]) = permuted(i, j);
  }
  return out;
}

namespace {

void record_schur(const RatMatrix& A, LdlFactors& f, std::size_t from) {
  const std::size_t n = A.rows();
  f.processed = from;
  f.schur = RatMatrix(n - from, n - from);
  for (std::size_t i = from; i < n; ++i) {
    for (std::size_t j = from; j < n; ++j) f.schur(i - from, j - from) = A(i, j);
  }
}

}  // namespace

DefinitenessResult psd_check_exact(const RatMatrix& M) {
  require_symmetric(M);
  const std::size_t n = M.rows();
  RatMatrix A = M;
  DefinitenessResult res;
  res.factors = start(n);
  LdlFactors& f = res.factors;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    for (std::size_t i = k + 1; i < n; ++i) {
      if (A(i, i) > A(p, p)) p = i;
    }
    if (p != k) {
      swap_symmetric(A, k, p);
      std::swap(f.perm[k], f.perm[p]);
      for (std::size_t j = 0; j < k; ++j) std::swap(f.L(k, j), f.L(p, j));
    }
    const Rational piv = A(k, k);
    if (piv < 0) {
      record_schur(A, f, k);
      res.failing_pivot = k;
      res.failing_row = f.perm[k];
      res.witness = pull_back(f, unit(n, k));
      res.reason = "negative pivot " + piv.get_str() + " at row " + std::to_string(f.perm[k]);
      return res;
    }
    if (piv == 0) {
      // Largest remaining diagonal is zero: PSD iff the trailing block vanishes.
      for (std::size_t i = k; i < n; ++i) {
        if (A(i, i) == 0) continue;
        record_schur(A, f, k);
        res.failing_pivot = k;
        res.failing_row = f.perm[i];
        res.witness = pull_back(f, unit(n, i));
        res.reason = "negative diagonal " + A(i, i).get_str() + " at row " + std::to_string(f.perm[i]);
        return res;
      }
      for (std::size_t i = k; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
          if (A(i, j) == 0) continue;
          record_schur(A, f, k);
          std::vector<Rational> w(n);
          w[i] = 1;
          w[j] = A(i, j) > 0 ? -1 : 1;
          res.failing_pivot = k;
          res.failing_row = f.perm[i];
          res.witness = pull_back(f, w);
          res.reason = "zero pivot with nonzero remainder in row " + std::to_string(f.perm[i]);
          return res;
        }
      }
      record_schur(A, f, k);
      res.holds = true;
      return res;
    }
    eliminate(A, f, k);
  }
  record_schur(A, f, n);
  res.holds = true;
  return res;
}

DefinitenessResult nd_check_exact(const RatMatrix& M) {
  require_symmetric(M);
  const std::size_t n = M.rows();
  RatMatrix A = -M;
  DefinitenessResult res;
  res.factors = start(n);
  LdlFactors& f = res.factors;
  for (std::size_t k = 0; k < n; ++k) {
    if (A(k, k) <= 0) {
      record_schur(A, f, k);
      res.failing_pivot = k;
      res.failing_row = k;
      res.witness = pull_back(f, unit(n, k));
      res.reason = "pivot " + A(k, k).get_str() + " of -M at row " + std::to_string(k) +
                   " is not positive";
      return res;
    }
    eliminate(A, f, k);
  }
  record_schur(A, f, n);
  res.holds = true;
  return res;
}

sdp::MonomialIndex expected_basis(const sdp::Problem& problem, sdp::BasisKind kind) {
  sdp::validate(problem);
  if (problem.is_rational() && kind != sdp::BasisKind::Dense) {
    throw FingerprintMismatch("rational-function certificates use the dense basis");
  }
  const int d = sdp::numerator_degree(problem);
  if (kind == sdp::BasisKind::Newton) {
    return sdp::MonomialIndex(newton::restricted_basis(problem.f, problem.T));
  }
  return sdp::MonomialIndex(terms_up_to(problem.f.nvars(), d));
}

VerificationReport check_moments(const sdp::Problem& problem,
                                 const sdp::MonomialIndex& numerator_basis,
                                 const sdp::MomentVector& y) {
  const sdp::MonomialIndex den(problem.T);
  const RatMatrix num = problem.g ? sdp::localizing_matrix(*problem.g, y, numerator_basis)
                                  : sdp::moment_matrix(y, numerator_basis);
  const RatMatrix fblock = sdp::localizing_matrix(problem.f, y, den);
  VerificationReport rep;
  rep.psd_block = psd_check_exact(num);
  rep.nd_block = nd_check_exact(fblock);
  rep.accepted = rep.psd_block->holds && rep.nd_block->holds;
  const std::string num_name = problem.g ? "M_d(g y)" : "M_d(y)";
  std::ostringstream s;
  if (rep.accepted) {
    s << "accepted: " << num_name << " >= 0 (" << num.rows() << "x" << num.rows()
      << ") and M_e(f y) < 0 (" << fblock.rows() << "x" << fblock.rows() << ")";
  } else {
    s << "rejected:";
    if (!rep.psd_block->holds) s << " " << num_name << " not PSD [" << rep.psd_block->reason << "]";
    if (!rep.nd_block->holds) s << " M_e(f y) not negative definite [" << rep.nd_block->reason << "]";
  }
  rep.summary = s.str();
  return rep;
}

VerificationReport verify_certificate(const Certificate& cert) {
  if (cert.order != "grlex") throw FingerprintMismatch("unsupported monomial order " + cert.order);
  const sdp::MonomialIndex basis = expected_basis(cert.problem, cert.basis_kind);
  if (basis.terms() != cert.numerator_basis) {
    throw FingerprintMismatch("recorded numerator basis differs from the one rebuilt from f and T");
  }
  if (cert.is_obstruction()) {
    const Exponent& w = std::get<sdp::SupportObstruction>(cert.body).witness;
    VerificationReport rep;
    if (!cert.problem.is_rational()) {
      rep.support_check = false;
      rep.summary = "rejected: support obstructions only apply to rational functions";
      return rep;
    }
    const TermSet g1 = sdp::gamma_one(cert.problem, basis);
    const TermSet g2 = sdp::gamma_two(cert.problem);
    const bool ok = w.size() == cert.problem.f.nvars() && g2.contains(w) && !g1.contains(w);
    rep.support_check = ok;
    rep.accepted = ok;
    rep.summary = ok ? "accepted: witness (" + w.to_string() + ") lies in Gamma2 but not Gamma1"
                     : "rejected: witness (" + w.to_string() + ") is not in Gamma2 \\ Gamma1";
    return rep;
  }
  return check_moments(cert.problem, basis, cert.moments());
}

SpotCheckReport spot_check_linear_form(const Certificate& cert, std::size_t trials,
                                       std::uint64_t seed) {
  SpotCheckReport rep;
  rep.trials = trials;
  if (cert.is_obstruction()) return rep;
  const auto& y = cert.moments();
  const auto& p = cert.problem;
  const std::size_t n = p.f.nvars();
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> num(-9, 9);
  std::uniform_int_distribution<int> den(1, 9);
  auto random_poly = [&](const std::vector<Exponent>& terms) {
    Polynomial q(n);
    while (q.is_zero()) {
      for (const auto& a : terms) q.add_term(a, Rational(num(rng), den(rng)));
    }
    return q;
  };
  const std::vector<Exponent> tvec = p.T.to_vector();
  for (std::size_t t = 0; t < trials; ++t) {
    const Polynomial v = random_poly(tvec);
    const Rational lf = y.apply(p.f * v * v);
    if (lf >= 0) {
      rep.violations.push_back("L(f v^2) = " + lf.get_str() + " >= 0 for v = " + v.to_string());
    }
    const Polynomial u = random_poly(cert.numerator_basis);
    const Polynomial sq = p.g ? *p.g * u * u : u * u;
    const Rational lu = y.apply(sq);
    if (lu < 0) {
      rep.violations.push_back("L(" + std::string(p.g ? "g " : "") + "u^2) = " + lu.get_str() +
                               " < 0 for u = " + u.to_string());
    }
    rep.evaluations += 2;
  }
  return rep;
}

}  // namespace rsoscert::verify
