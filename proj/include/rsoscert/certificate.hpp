#pragma once

#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "rsoscert/polyring.hpp"
#include "rsoscert/sdp.hpp"

namespace rsoscert {

// A refutation of f (or f/g) in RSOS_T: either a moment vector y_hat with
// M(y_hat) >= 0 (resp. M(g y_hat) >= 0) and M_e(f y_hat) < 0, or a support
// obstruction witness in Gamma2 \ Gamma1.
struct Certificate {
  sdp::Problem problem;
  sdp::BasisKind basis_kind = sdp::BasisKind::Newton;
  std::vector<Exponent> numerator_basis;
  std::string order = "grlex";
  std::variant<sdp::MomentVector, sdp::SupportObstruction> body;
  // Ordered key/value pairs; informational only, never consulted by verification.
  std::vector<std::pair<std::string, std::string>> provenance;

  bool is_obstruction() const { return std::holds_alternative<sdp::SupportObstruction>(body); }
  const sdp::MomentVector& moments() const { return std::get<sdp::MomentVector>(body); }

  bool operator==(const Certificate& o) const = default;
};

}  // namespace rsoscert
