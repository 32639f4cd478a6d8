#pragma once

#include <cstddef>
#include <ostream>
#include <string>
#include <vector>

#include "rsoscert/polyring.hpp"
#include "rsoscert/ratmatrix.hpp"
#include "rsoscert/sdp.hpp"

namespace rsoscert::solver {

struct SolverParams {
  Rational big_m = 0;          // <= 0 selects default_big_m(f)
  int precision_digits = 30;   // decimal significand digits of the working arithmetic
  int max_iterations = 300;
  Rational negativity_margin = Rational(1, 1000);  // stop once s < -margin
  double feasibility_tolerance = 1e-10;            // relative dual residual at convergence
  int precision_escalations = 3;                   // digits *= 1.5 on stall
  std::ostream* log = nullptr;                     // verbose iteration records

  void validate() const;
};

// 10^6 (1 + largest |coefficient of f|).
Rational default_big_m(const Polynomial& f);

enum class SolveStatus { CertificateCandidateFound, NoCertificateFound, PrecisionExhausted };

std::string to_string(SolveStatus s);

struct IterationRecord {
  int iteration = 0;
  int digits = 0;
  double s = 0;         // dual objective
  double gap = 0;       // Tr(S Z)
  double residual = 0;  // relative residual of the Z-side equalities
  double step_primal = 0;
  double step_dual = 0;
  bool primal_accepted = true;
};

struct SolveOutcome {
  SolveStatus status = SolveStatus::NoCertificateFound;
  // Exact images of the working-precision iterate (binary floating point values are dyadic rationals).
  sdp::MomentVector y;
  Rational s;
  Rational big_m;
  int digits_used = 0;
  // max(0, Tr M(y,s) - big_m) / big_m, plus 1 if M(y,s) failed a Cholesky test.
  double residual = 0;
  std::vector<IterationRecord> log;
  std::string diagnostic;
};

// A point with M(y) > 0 (or M(g y) > 0) and M_e(-f y) + s I > 0, built from the
// moments of the standard Gaussian: E[x^a] = prod (a_i - 1)!! for even a, else 0.
struct StrictPoint {
  sdp::MomentVector y;
  Rational s;
};

Rational gaussian_moment(const Exponent& a);

StrictPoint strictly_feasible_point(const sdp::SdpInstance& instance);

// Interior-point solve of  min s  s.t.  M(y,s) >= 0, Tr M(y,s) <= big_m,
// raising precision on stalls.
SolveOutcome solve_big_m(const sdp::SdpInstance& instance, const SolverParams& params);

// Cholesky test at the given working precision.
bool numerically_positive_definite(const RatMatrix& M, int digits);

// Smallest eigenvalue, double precision estimate.
double min_eigenvalue_estimate(const RatMatrix& M);

}  // namespace rsoscert::solver
