#include "rsoscert/solver.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <iomanip>
#include <limits>
#include <map>
#include <tuple>
#include <optional>

#include <mpfr.h>

#include <Eigen/Dense>
#include <boost/multiprecision/eigen.hpp>
#include <boost/multiprecision/mpfr.hpp>

#include "rsoscert/errors.hpp"
#include "rsoscert/verify.hpp"

namespace rsoscert::solver {

namespace bmp = boost::multiprecision;
using Real = bmp::number<bmp::mpfr_float_backend<0>, bmp::et_off>;
using Mat = Eigen::Matrix<Real, Eigen::Dynamic, Eigen::Dynamic>;
using Vec = Eigen::Matrix<Real, Eigen::Dynamic, 1>;

void SolverParams::validate() const {
  if (precision_digits < 16) throw InvalidArgument("precision_digits must be at least 16");
  if (negativity_margin <= 0) throw InvalidArgument("negativity margin must be positive");
  if (max_iterations <= 0) throw InvalidArgument("max_iterations must be positive");
  if (!(feasibility_tolerance > 0)) throw InvalidArgument("feasibility tolerance must be positive");
  if (precision_escalations < 0) throw InvalidArgument("precision escalations must be >= 0");
}

Rational default_big_m(const Polynomial& f) {
  Rational largest = 0;
  for (const auto& [a, c] : f.terms()) largest = std::max(largest, Rational(abs(c)));
  return Rational(1000000) * (1 + largest);
}

std::string to_string(SolveStatus s) {
  switch (s) {
    case SolveStatus::CertificateCandidateFound: return "CertificateCandidateFound";
    case SolveStatus::NoCertificateFound: return "NoCertificateFound";
    case SolveStatus::PrecisionExhausted: return "PrecisionExhausted";
  }
  return "unknown";
}

namespace {

// Sets the default precision of newly created Real values for one scope.
class PrecisionScope {
 public:
  explicit PrecisionScope(int digits) : saved_(Real::default_precision()) {
    Real::default_precision(static_cast<unsigned>(digits));
  }
  ~PrecisionScope() { Real::default_precision(saved_); }
  PrecisionScope(const PrecisionScope&) = delete;
  PrecisionScope& operator=(const PrecisionScope&) = delete;

 private:
  unsigned saved_;
};

Real to_real(const Rational& q) {
  Real r;
  mpfr_set_q(r.backend().data(), q.get_mpq_t(), MPFR_RNDN);
  return r;
}

Rational to_rational(const Real& r) {
  Rational q;
  mpfr_get_q(q.get_mpq_t(), r.backend().data());
  return q;
}

double to_double(const Real& r) { return mpfr_get_d(r.backend().data(), MPFR_RNDN); }

Mat to_mat(const RatMatrix& M) {
  Mat out(M.rows(), M.cols());
  for (std::size_t i = 0; i < M.rows(); ++i) {
    for (std::size_t j = 0; j < M.cols(); ++j) out(i, j) = to_real(M(i, j));
  }
  return out;
}

// One symmetric block of the LMI. pos[p*dim + q] lists (variable, coefficient)
// pairs so that S(p,q) = sum coeff * x[variable]; both triangles are stored.
struct Block {
  std::size_t dim = 0;
  std::vector<std::vector<std::pair<std::uint32_t, Real>>> pos;
  bool unit = true;

  void init(std::size_t k) {
    dim = k;
    pos.assign(k * k, {});
  }
  void add(std::size_t r, std::size_t c, std::uint32_t var, const Real& v) {
    if (v != 1) unit = false;
    pos[r * dim + c].emplace_back(var, v);
    if (r != c) pos[c * dim + r].emplace_back(var, v);
  }

  Mat apply(const Vec& x) const {
    Mat S = Mat::Zero(dim, dim);
    for (std::size_t p = 0; p < dim; ++p) {
      for (std::size_t q = 0; q < dim; ++q) {
        Real& out = S(p, q);
        for (const auto& [var, v] : pos[p * dim + q]) {
          mpfr_fma(out.backend().data(), v.backend().data(), x(var).backend().data(),
                   out.backend().data(), MPFR_RNDN);
        }
      }
    }
    return S;
  }

  // out_i += Tr(F_i R) for symmetric R.
  void traces(const Mat& R, Vec& out) const {
    for (std::size_t p = 0; p < dim; ++p) {
      for (std::size_t q = 0; q < dim; ++q) {
        const Real& rv = R(q, p);
        for (const auto& [var, v] : pos[p * dim + q]) {
          mpfr_fma(out(var).backend().data(), v.backend().data(), rv.backend().data(),
                   out(var).backend().data(), MPFR_RNDN);
        }
      }
    }
  }

  // H_ij += Tr(F_i Sinv F_j Z), upper triangle only (i <= j).
  void schur(const Mat& Sinv, const Mat& Z, Mat& H) const {
    const std::size_t k = dim;
    std::vector<Real> a(k);
    Real tmp;
    for (std::size_t p = 0; p < k; ++p) {
      for (std::size_t q = 0; q < k; ++q) {
        for (const auto& [i, v] : pos[p * k + q]) {
          for (std::size_t r = 0; r < k; ++r) {
            if (unit) {
              a[r] = Sinv(q, r);
            } else {
              mpfr_mul(a[r].backend().data(), v.backend().data(), Sinv(q, r).backend().data(),
                       MPFR_RNDN);
            }
          }
          for (std::size_t r = 0; r < k; ++r) {
            for (std::size_t t = 0; t < k; ++t) {
              const auto& cell = pos[r * k + t];
              if (cell.empty()) continue;
              if (unit) {
                for (const auto& [j, w] : cell) {
                  if (j < i) continue;
                  auto* h = H(i, j).backend().data();
                  mpfr_fma(h, a[r].backend().data(), Z(t, p).backend().data(), h, MPFR_RNDN);
                }
              } else {
                mpfr_mul(tmp.backend().data(), a[r].backend().data(), Z(t, p).backend().data(),
                         MPFR_RNDN);
                for (const auto& [j, w] : cell) {
                  if (j < i) continue;
                  auto* h = H(i, j).backend().data();
                  mpfr_fma(h, tmp.backend().data(), w.backend().data(), h, MPFR_RNDN);
                }
              }
            }
          }
        }
      }
    }
  }
};

Mat sym(const Mat& A) { return (A + A.transpose()) * Real(0.5); }

Real trace_product(const Mat& A, const Mat& B) { return A.cwiseProduct(B.transpose()).sum(); }

std::optional<Mat> chol_lower(const Mat& A) {
  Eigen::LLT<Mat> llt(A);
  if (llt.info() != Eigen::Success) return std::nullopt;
  Mat L = llt.matrixL();
  for (Eigen::Index i = 0; i < L.rows(); ++i) {
    if (!(L(i, i) > 0)) return std::nullopt;
  }
  return L;
}

Mat inverse_from_chol(const Mat& L) {
  const Eigen::Index n = L.rows();
  Mat Linv = L.triangularView<Eigen::Lower>().solve(Mat::Identity(n, n));
  return Linv.transpose() * Linv;
}

// Largest alpha in (0, 1] with A + alpha dA > 0, scaled by the fraction-to-boundary factor.
double step_to_boundary(const Mat& L, const Mat& dA, double fraction) {
  const Eigen::Index n = L.rows();
  if (n == 0) return 1.0;
  Mat tmp = L.triangularView<Eigen::Lower>().solve(dA);
  Mat G = L.triangularView<Eigen::Lower>().solve(tmp.transpose());
  Eigen::MatrixXd Gd(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) Gd(i, j) = to_double(G(i, j));
  }
  Gd = 0.5 * (Gd + Gd.transpose());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(Gd, Eigen::EigenvaluesOnly);
  const double lmin = es.eigenvalues()(0);
  if (lmin >= 0) return 1.0;
  return std::min(1.0, fraction * (-1.0 / lmin));
}

double scalar_step(const Real& a, const Real& da, double fraction) {
  if (!(da < 0)) return 1.0;
  return std::min(1.0, fraction * to_double(-a / da));
}

// The map (y, s) -> M(y, s) need not be injective (a g-localizing block only
// sees sums of moments). Exact sparse elimination picks a set of pivot
// variables spanning the same matrices; the rest are pinned to zero.
struct Reduction {
  std::vector<std::size_t> active;  // original indices, ascending; s (= m) is last
  // For each active variable: (free variable, coefficient) so that the projection
  // y'_a = y_a + sum coeff * y_free leaves M(y, s) unchanged.
  std::vector<std::vector<std::pair<std::size_t, Rational>>> expand;
};

Reduction reduce_variables(const sdp::SdpInstance& inst) {
  using Row = std::map<std::size_t, Rational>;
  const std::size_t m = inst.m();
  std::map<std::tuple<int, std::size_t, std::size_t>, Row> by_position;
  Row trace_row;
  for (std::size_t i = 0; i < m; ++i) {
    for (const auto& e : inst.G[i].entries) by_position[{0, e.row, e.col}][i] += e.value;
    for (const auto& e : inst.H[i].entries) by_position[{1, e.row, e.col}][i] += e.value;
    const Rational t = inst.G[i].trace() + inst.H[i].trace();
    if (t != 0) trace_row[i] = t;
  }
  for (std::size_t p = 0; p < inst.k2(); ++p) by_position[{1, p, p}][m] += 1;
  trace_row[m] = static_cast<long>(inst.k2());

  std::vector<Row> rows;
  rows.reserve(by_position.size() + 1);
  for (auto& [key, row] : by_position) {
    std::erase_if(row, [](const auto& kv) { return kv.second == 0; });
    if (!row.empty()) rows.push_back(std::move(row));
  }
  rows.push_back(std::move(trace_row));
  std::stable_sort(rows.begin(), rows.end(),
                   [](const Row& a, const Row& b) { return a.size() < b.size(); });

  // Pivot rows are kept reduced: each holds its pivot (coefficient 1) and free columns only.
  std::map<std::size_t, Row> pivots;
  for (Row& r : rows) {
    std::vector<std::pair<std::size_t, Rational>> hits;
    for (const auto& [c, v] : r) {
      if (pivots.count(c)) hits.emplace_back(c, v);
    }
    for (const auto& [c, v] : hits) {
      for (const auto& [j, w] : pivots.at(c)) {
        Rational& cell = r[j];
        cell -= v * w;
        if (cell == 0) r.erase(j);
      }
    }
    if (r.empty()) continue;
    const std::size_t pc = r.count(m) ? m : r.begin()->first;
    const Rational inv = 1 / r.at(pc);
    for (auto& [j, v] : r) v *= inv;
    for (auto& [c, pr] : pivots) {
      auto hit = pr.find(pc);
      if (hit == pr.end()) continue;
      const Rational v = hit->second;
      for (const auto& [j, w] : r) {
        Rational& cell = pr[j];
        cell -= v * w;
        if (cell == 0) pr.erase(j);
      }
    }
    pivots.emplace(pc, std::move(r));
  }
  if (!pivots.count(m)) throw SolverError("degenerate instance: s is not identifiable");

  Reduction red;
  for (const auto& [c, row] : pivots) {
    red.active.push_back(c);
    auto& ex = red.expand.emplace_back();
    for (const auto& [j, w] : row) {
      if (j != c) ex.emplace_back(j, w);
    }
  }
  return red;
}

struct Problem {
  std::size_t m = 0;   // active y variables; s is variable m
  std::size_t nv = 0;  // m + 1
  Block b1, b2;
  Vec tr;  // block 3 coefficients: -Tr(A_i), -k2 for s
  Real big_m;
};

Problem build_problem(const sdp::SdpInstance& inst, const Reduction& red, const Rational& big_m) {
  Problem P;
  P.nv = red.active.size();
  P.m = P.nv - 1;
  P.b1.init(inst.k1());
  P.b2.init(inst.k2());
  P.tr = Vec::Zero(P.nv);
  for (std::size_t k = 0; k < P.m; ++k) {
    const std::size_t i = red.active[k];
    Rational trace = inst.G[i].trace() + inst.H[i].trace();
    P.tr(k) = to_real(-trace);
    for (const auto& e : inst.G[i].entries) P.b1.add(e.row, e.col, k, to_real(e.value));
    for (const auto& e : inst.H[i].entries) P.b2.add(e.row, e.col, k, to_real(e.value));
  }
  for (std::size_t p = 0; p < inst.k2(); ++p) P.b2.add(p, p, P.m, Real(1));
  P.tr(P.m) = Real(-static_cast<long>(inst.k2()));
  P.big_m = to_real(big_m);
  return P;
}

struct Iterate {
  Vec x;
  Mat Z1, Z2;
  Real z3;
};

struct Direction {
  Vec dx;
  Mat dS1, dS2, dZ1, dZ2;
  Real dS3, dZ3;
};

SolveOutcome run(const sdp::SdpInstance& inst, const SolverParams& params, const Rational& big_m,
                 int digits, const StrictPoint& strict) {
  PrecisionScope scope(digits);
  SolveOutcome out;
  out.big_m = big_m;
  out.digits_used = digits;
  const Reduction red = reduce_variables(inst);
  const Problem P = build_problem(inst, red, big_m);
  const std::size_t N = P.b1.dim + P.b2.dim + 1;
  const Real delta = to_real(params.negativity_margin);
  const Real gap_floor = P.big_m * Real(pow(Real(10), -Real(2 * digits) / 3));
  const Real gap_tol = std::max(delta / 2, gap_floor);
  constexpr double fraction = 0.98;

  // Start from the scaled Gaussian point with Tr M = big_m / 2.
  Iterate it;
  it.x = Vec::Zero(P.nv);
  auto original = [&](std::size_t i) -> const Rational& {
    return i == inst.m() ? strict.s : strict.y.at(inst.constraint_monomials[i]);
  };
  for (std::size_t k = 0; k < P.nv; ++k) {
    Rational v = original(red.active[k]);
    for (const auto& [j, c] : red.expand[k]) v += c * original(j);
    it.x(k) = to_real(v);
  }
  const Real t0 = -P.tr.dot(it.x);
  it.x *= P.big_m / (2 * t0);
  it.Z1 = Mat::Identity(P.b1.dim, P.b1.dim);
  it.Z2 = Mat::Identity(P.b2.dim, P.b2.dim);
  it.z3 = 1;

  auto slack3 = [&](const Vec& x) { return P.big_m + P.tr.dot(x); };
  auto finish = [&](SolveStatus st, const Vec& x, bool chol_ok) {
    out.status = st;
    sdp::MomentVector y;
    for (const auto& a : inst.constraint_monomials) y.set(a, 0);
    for (std::size_t k = 0; k < P.m; ++k) {
      y.set(inst.constraint_monomials[red.active[k]], to_rational(x(k)));
    }
    out.y = std::move(y);
    out.s = to_rational(x(P.m));
    const Real excess = std::max(Real(0), -slack3(x));
    out.residual = to_double(excess / P.big_m) + (chol_ok ? 0.0 : 1.0);
    return out;
  };

  int stalled = 0;
  for (int iter = 0; iter < params.max_iterations; ++iter) {
    const Mat S1 = P.b1.apply(it.x);
    const Mat S2 = P.b2.apply(it.x);
    const Real s3 = slack3(it.x);
    const auto L1 = chol_lower(S1);
    const auto L2 = chol_lower(S2);
    if (!L1 || !L2 || !(s3 > 0)) {
      out.diagnostic = "iterate left the cone (Cholesky of M(y,s) failed)";
      return finish(SolveStatus::PrecisionExhausted, it.x, false);
    }
    const Real s = it.x(P.m);
    const Real gap = trace_product(S1, it.Z1) + trace_product(S2, it.Z2) + s3 * it.z3;
    const Real mu = gap / Real(static_cast<long>(N));

    // Z-side residual: c_i - Tr(F_i Z) with c = e_s.
    Vec fz = Vec::Zero(P.nv);
    P.b1.traces(it.Z1, fz);
    P.b2.traces(it.Z2, fz);
    fz += P.tr * it.z3;
    Vec rd = -fz;
    rd(P.m) += 1;
    const double resid = to_double(rd.cwiseAbs().maxCoeff());

    IterationRecord rec;
    rec.iteration = iter;
    rec.digits = digits;
    rec.s = to_double(s);
    rec.gap = to_double(gap);
    rec.residual = resid;

    if (s < -delta) {
      out.log.push_back(rec);
      if (params.log) {
        *params.log << "iter " << iter << " s " << std::setprecision(12) << rec.s
                    << " candidate found\n";
      }
      return finish(SolveStatus::CertificateCandidateFound, it.x, true);
    }
    if (resid <= params.feasibility_tolerance && gap <= gap_tol) {
      out.log.push_back(rec);
      return finish(SolveStatus::NoCertificateFound, it.x, true);
    }

    const Mat S1inv = inverse_from_chol(*L1);
    const Mat S2inv = inverse_from_chol(*L2);
    Mat H = Mat::Zero(P.nv, P.nv);
    P.b1.schur(S1inv, it.Z1, H);
    P.b2.schur(S2inv, it.Z2, H);
    const Real w3 = it.z3 / s3;
    for (std::size_t i = 0; i < P.nv; ++i) {
      for (std::size_t j = i; j < P.nv; ++j) H(i, j) += P.tr(i) * P.tr(j) * w3;
    }
    for (std::size_t i = 0; i < P.nv; ++i) {
      for (std::size_t j = 0; j < i; ++j) H(i, j) = H(j, i);
    }
    Eigen::LLT<Mat> hchol(H);
    if (hchol.info() != Eigen::Success) {
      Eigen::MatrixXd Hd(P.nv, P.nv);
      for (std::size_t i = 0; i < P.nv; ++i) {
        for (std::size_t j = 0; j < P.nv; ++j) Hd(i, j) = to_double(H(i, j));
      }
      Eigen::JacobiSVD<Eigen::MatrixXd> svd(Hd);
      const auto& sv = svd.singularValues();
      const double cond = sv(sv.size() - 1) > 0 ? sv(0) / sv(sv.size() - 1)
                                                : std::numeric_limits<double>::infinity();
      out.diagnostic = "Newton system not positive definite (condition estimate " +
                       std::to_string(cond) + ")";
      out.log.push_back(rec);
      return finish(SolveStatus::PrecisionExhausted, it.x, true);
    }

    // Newton direction for target mu_target with second-order term from a predictor.
    auto direction = [&](const Real& mu_target, const Direction* pred) {
      Direction d;
      Mat R1 = S1inv * mu_target;
      Mat R2 = S2inv * mu_target;
      Real R3 = mu_target / s3;
      if (pred) {
        R1 -= S1inv * pred->dS1 * pred->dZ1;
        R2 -= S2inv * pred->dS2 * pred->dZ2;
        R3 -= pred->dS3 * pred->dZ3 / s3;
      }
      R1 = sym(R1);
      R2 = sym(R2);
      Vec rhs = Vec::Zero(P.nv);
      P.b1.traces(R1, rhs);
      P.b2.traces(R2, rhs);
      rhs += P.tr * R3;
      rhs(P.m) -= 1;
      d.dx = hchol.solve(rhs);
      Vec zero = Vec::Zero(P.nv);
      d.dS1 = P.b1.apply(d.dx);
      d.dS2 = P.b2.apply(d.dx);
      d.dS3 = P.tr.dot(d.dx);
      d.dZ1 = sym(R1 - it.Z1 - S1inv * d.dS1 * it.Z1);
      d.dZ2 = sym(R2 - it.Z2 - S2inv * d.dS2 * it.Z2);
      d.dZ3 = R3 - it.z3 - d.dS3 * it.z3 / s3;
      return d;
    };
    auto steps = [&](const Direction& d) {
      double ap = std::min({step_to_boundary(*L1, d.dS1, fraction),
                            step_to_boundary(*L2, d.dS2, fraction),
                            scalar_step(s3, d.dS3, fraction)});
      const auto Lz1 = chol_lower(it.Z1);
      const auto Lz2 = chol_lower(it.Z2);
      double ad = 0;
      if (Lz1 && Lz2) {
        ad = std::min({step_to_boundary(*Lz1, d.dZ1, fraction),
                       step_to_boundary(*Lz2, d.dZ2, fraction),
                       scalar_step(it.z3, d.dZ3, fraction)});
      }
      return std::pair{ap, ad};
    };

    const Direction pred = direction(Real(0), nullptr);
    const auto [ap0, ad0] = steps(pred);
    const Real gap_aff =
        trace_product(S1 + pred.dS1 * Real(ap0), it.Z1 + pred.dZ1 * Real(ad0)) +
        trace_product(S2 + pred.dS2 * Real(ap0), it.Z2 + pred.dZ2 * Real(ad0)) +
        (s3 + pred.dS3 * Real(ap0)) * (it.z3 + pred.dZ3 * Real(ad0));
    Real sigma = gap_aff / gap;
    sigma = std::clamp(Real(sigma * sigma * sigma), Real(0), Real(1));
    const Direction corr = direction(sigma * mu, &pred);
    auto [ap, ad] = steps(corr);

    // Keep the objective s non-increasing over accepted primal moves.
    rec.primal_accepted = !(corr.dx(P.m) > 0);
    if (!rec.primal_accepted) ap = 0;

    // Guard against eigenvalue-estimate error: confirm the new slack is inside the cone.
    for (int tries = 0; ap > 0 && tries < 40; ++tries) {
      const Vec xn = it.x + corr.dx * Real(ap);
      if (chol_lower(P.b1.apply(xn)) && chol_lower(P.b2.apply(xn)) && slack3(xn) > 0) break;
      ap *= 0.8;
      if (tries == 39) ap = 0;
    }
    for (int tries = 0; ad > 0 && tries < 40; ++tries) {
      if (chol_lower(it.Z1 + corr.dZ1 * Real(ad)) && chol_lower(it.Z2 + corr.dZ2 * Real(ad)) &&
          it.z3 + corr.dZ3 * Real(ad) > 0) {
        break;
      }
      ad *= 0.8;
      if (tries == 39) ad = 0;
    }

    rec.step_primal = ap;
    rec.step_dual = ad;
    out.log.push_back(rec);
    if (params.log) {
      *params.log << "iter " << iter << " s " << std::setprecision(12) << rec.s << " gap "
                  << rec.gap << " residual " << rec.residual << " step " << ap << " " << ad
                  << " digits " << digits << "\n";
    }

    it.x += corr.dx * Real(ap);
    it.Z1 += corr.dZ1 * Real(ad);
    it.Z2 += corr.dZ2 * Real(ad);
    it.z3 += corr.dZ3 * Real(ad);

    stalled = std::max(ap, ad) < 1e-8 ? stalled + 1 : 0;
    if (stalled >= 3) {
      out.diagnostic = "step lengths collapsed";
      return finish(SolveStatus::PrecisionExhausted, it.x, true);
    }
  }
  throw SolverError("interior-point iteration limit (" + std::to_string(params.max_iterations) +
                    ") reached");
}

}  // namespace

Rational gaussian_moment(const Exponent& a) {
  Integer prod = 1;
  for (int v : a.entries()) {
    if (v % 2 != 0) return 0;
    for (int k = v - 1; k > 1; k -= 2) prod *= k;
  }
  return Rational(prod);
}

StrictPoint strictly_feasible_point(const sdp::SdpInstance& instance) {
  StrictPoint pt;
  for (const auto& a : instance.constraint_monomials) pt.y.set(a, gaussian_moment(a));
  const RatMatrix num = instance.numerator_matrix(pt.y);
  if (!verify::nd_check_exact(-num).holds) {
    throw SolverError("Gaussian moments do not give a strictly positive numerator block");
  }
  const RatMatrix loc = sdp::localizing_matrix(-instance.problem.f, pt.y, instance.denominator_basis);
  const double lmin = min_eigenvalue_estimate(loc);
  Rational s = std::max(1.0, std::ceil(-lmin) + 1.0);
  // Exact confirmation; one retry with a larger shift covers a poor estimate.
  for (int attempt = 0; attempt < 2; ++attempt) {
    RatMatrix shifted = loc + RatMatrix::identity(loc.rows()).scaled(s);
    if (verify::nd_check_exact(-shifted).holds) {
      pt.s = s;
      return pt;
    }
    s = 2 * s + Rational(static_cast<long>(std::ceil(std::abs(lmin)))) + 1;
  }
  throw SolverError("could not confirm strict positivity of the shifted localizing block");
}

SolveOutcome solve_big_m(const sdp::SdpInstance& instance, const SolverParams& params) {
  params.validate();
  const Rational big_m = params.big_m > 0 ? params.big_m : default_big_m(instance.problem.f);
  const StrictPoint strict = strictly_feasible_point(instance);
  int digits = params.precision_digits;
  SolveOutcome out;
  std::vector<IterationRecord> history;
  for (int esc = 0; esc <= params.precision_escalations; ++esc) {
    out = run(instance, params, big_m, digits, strict);
    history.insert(history.end(), out.log.begin(), out.log.end());
    if (out.status != SolveStatus::PrecisionExhausted) break;
    if (params.log) {
      *params.log << "precision exhausted at " << digits << " digits: " << out.diagnostic << "\n";
    }
    digits = (3 * digits + 1) / 2;
  }
  out.log = std::move(history);
  return out;
}

bool numerically_positive_definite(const RatMatrix& M, int digits) {
  if (M.rows() == 0) return true;
  PrecisionScope scope(digits);
  return chol_lower(to_mat(M)).has_value();
}

double min_eigenvalue_estimate(const RatMatrix& M) {
  const std::size_t n = M.rows();
  if (n == 0) return 0;
  Eigen::MatrixXd A(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) A(i, j) = M(i, j).get_d();
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(A, Eigen::EigenvaluesOnly);
  return es.eigenvalues()(0);
}

}  // namespace rsoscert::solver
