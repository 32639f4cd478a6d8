#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "rsoscert/certificate.hpp"
#include "rsoscert/rationalize.hpp"
#include "rsoscert/sdp.hpp"
#include "rsoscert/solver.hpp"
#include "rsoscert/verify.hpp"

namespace rsoscert::pipeline {

struct CertifyOptions {
  solver::SolverParams solver;
  rationalize::RoundingPolicy rounding;
  int big_m_escalations = 5;  // big_m *= 100 after NoCertificateFound or a failed rounding
  std::size_t spot_checks = 100;
  std::uint64_t seed = 1;
  bool timestamp = false;  // off by default so output is reproducible
};

enum class CertifyStatus { Certified, Inconclusive, PrecisionExhausted };

std::string to_string(CertifyStatus s);

struct CertifyResult {
  CertifyStatus status = CertifyStatus::Inconclusive;
  std::optional<Certificate> certificate;  // verified whenever present
  std::optional<verify::VerificationReport> report;
  std::vector<solver::SolveOutcome> solves;
  std::string message;
};

// Assembles, solves with big-M and precision escalation, rounds and verifies.
// Throws SolverError when the iteration limit is hit.
CertifyResult certify(const sdp::Problem& problem, const CertifyOptions& options);

}  // namespace rsoscert::pipeline
