#pragma once

#include <optional>
#include <string>
#include <vector>

#include "rsoscert/certificate.hpp"
#include "rsoscert/polyring.hpp"
#include "rsoscert/sdp.hpp"
#include "rsoscert/solver.hpp"

namespace rsoscert::rationalize {

// Best rational approximation of v with denominator <= max_denominator
// (continued-fraction convergents plus the last admissible semiconvergent).
Rational rationalize_value(const Rational& v, const Integer& max_denominator);

struct RoundingPolicy {
  std::vector<Integer> denominators;  // tried in order; empty selects the default ladder
  int max_blend_exponent = 16;        // t ranges over 1/2^k, k <= this
  int check_digits = 30;              // precision of the numeric feasibility test of a blend

  // 10^3, 10^6, ..., 10^24.
  static std::vector<Integer> default_ladder();
};

struct RoundingResult {
  std::optional<Certificate> certificate;  // set only when exact verification accepted it
  Rational t;
  Integer max_denominator;
  Rational s_bar;
  std::string diagnostic;
  int attempts = 0;
};

// Blends (y, s) toward the strictly feasible point, rounds every moment and
// lets check_moments decide. Direct rounding (t = 0) is tried first.
RoundingResult blend_and_round(const sdp::MomentVector& y, const Rational& s,
                               const solver::StrictPoint& strict, const sdp::SdpInstance& instance,
                               const RoundingPolicy& policy);

}  // namespace rsoscert::rationalize
