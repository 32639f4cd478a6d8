#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "rsoscert/certificate.hpp"
#include "rsoscert/errors.hpp"
#include "rsoscert/ratmatrix.hpp"
#include "rsoscert/sdp.hpp"

namespace rsoscert::verify {

// The recorded numerator basis (or basis kind) disagrees with the one rebuilt
// from f, g, e and T.
class FingerprintMismatch : public Error {
 public:
  using Error::Error;
};

// P M P^T = L blockdiag(D, S) L^T with L unit lower triangular. `perm[i]` is
// the original index of the i-th pivot. Elimination stopped after `processed`
// steps; S (`schur`) is the untouched trailing Schur complement.
struct LdlFactors {
  std::vector<std::size_t> perm;
  RatMatrix L;
  std::vector<Rational> D;
  std::size_t processed = 0;
  RatMatrix schur;

  // P^T L D L^T P, exact.
  RatMatrix recompose() const;
};

struct DefinitenessResult {
  bool holds = false;
  std::optional<std::size_t> failing_pivot;  // elimination step
  std::optional<std::size_t> failing_row;    // original row index
  // x with x^T M x < 0 (PSD check) or x^T M x >= 0 (negative-definite check).
  std::vector<Rational> witness;
  std::string reason;
  LdlFactors factors;
};

// M >= 0, by LDL^T with symmetric pivoting on the largest remaining diagonal.
// A zero pivot requires the whole remaining block to vanish.
DefinitenessResult psd_check_exact(const RatMatrix& M);

// M < 0 strictly: LDL^T of -M without pivoting, every pivot > 0.
DefinitenessResult nd_check_exact(const RatMatrix& M);

struct VerificationReport {
  bool accepted = false;
  std::optional<DefinitenessResult> psd_block;  // M(y) or M(g y)
  std::optional<DefinitenessResult> nd_block;   // M_e(f y)
  std::optional<bool> support_check;            // obstruction certificates
  std::string summary;
};

// Rebuilds the bases from the problem data alone and checks the certificate
// in exact arithmetic. Throws FingerprintMismatch or MissingMoment.
VerificationReport verify_certificate(const Certificate& cert);

// Checks only the moment conditions against known bases; used inside the
// rounding loop. Throws MissingMoment.
VerificationReport check_moments(const sdp::Problem& problem,
                                 const sdp::MonomialIndex& numerator_basis,
                                 const sdp::MomentVector& y);

// Rebuilds the numerator basis the certificate claims to use.
sdp::MonomialIndex expected_basis(const sdp::Problem& problem, sdp::BasisKind kind);

struct SpotCheckReport {
  std::size_t trials = 0;
  std::size_t evaluations = 0;
  std::vector<std::string> violations;

  bool passed() const noexcept { return violations.empty(); }
};

// Random v with supp(v) in T and u with supp(u) in the numerator basis:
// L(f v^2) < 0 and L(u^2) >= 0 (or L(g u^2) >= 0), evaluated exactly.
SpotCheckReport spot_check_linear_form(const Certificate& cert, std::size_t trials,
                                       std::uint64_t seed);

}  // namespace rsoscert::verify
