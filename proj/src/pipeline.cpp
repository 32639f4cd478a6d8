#include "rsoscert/pipeline.hpp"

#include <chrono>
#include <ctime>

#include "rsoscert/errors.hpp"

namespace rsoscert::pipeline {

std::string to_string(CertifyStatus s) {
  switch (s) {
    case CertifyStatus::Certified: return "certified";
    case CertifyStatus::Inconclusive: return "inconclusive";
    case CertifyStatus::PrecisionExhausted: return "precision-exhausted";
  }
  return "unknown";
}

namespace {

std::string utc_now() {
  const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&t));
  return buf;
}

void finish(CertifyResult& res, Certificate cert, const CertifyOptions& opt) {
  if (opt.timestamp) cert.provenance.emplace_back("created", utc_now());
  auto rep = verify::verify_certificate(cert);
  if (!rep.accepted) {
    // Rounding already checked these moments; reaching this is a bug.
    throw Error("internal: final verification rejected a rounded certificate: " + rep.summary);
  }
  if (!cert.is_obstruction() && opt.spot_checks > 0) {
    const auto spot = verify::spot_check_linear_form(cert, opt.spot_checks, opt.seed);
    if (!spot.passed()) throw Error("internal: spot check failed: " + spot.violations.front());
  }
  res.status = CertifyStatus::Certified;
  res.report = std::move(rep);
  res.certificate = std::move(cert);
}

}  // namespace

CertifyResult certify(const sdp::Problem& problem, const CertifyOptions& opt) {
  opt.solver.validate();
  CertifyResult res;
  auto assembled = sdp::assemble(problem);
  if (auto* ob = std::get_if<sdp::SupportObstruction>(&assembled)) {
    const auto basis = verify::expected_basis(problem, sdp::BasisKind::Dense);
    Certificate cert;
    cert.problem = problem;
    cert.basis_kind = sdp::BasisKind::Dense;
    cert.numerator_basis = basis.terms();
    cert.body = *ob;
    cert.provenance = {{"method", "support-obstruction"}};
    finish(res, std::move(cert), opt);
    res.message = "support obstruction at monomial (" + ob->witness.to_string() + ")";
    return res;
  }
  const auto& inst = std::get<sdp::SdpInstance>(assembled);
  const solver::StrictPoint strict = solver::strictly_feasible_point(inst);

  solver::SolverParams params = opt.solver;
  if (params.big_m <= 0) params.big_m = solver::default_big_m(problem.f);
  std::string last_rounding;
  for (int round = 0; round <= opt.big_m_escalations; ++round) {
    if (round > 0) {
      params.big_m *= 100;
      if (params.log) *params.log << "raising big_m to " << params.big_m.get_str() << "\n";
    }
    solver::SolveOutcome out = solver::solve_big_m(inst, params);
    res.solves.push_back(out);
    if (out.status == solver::SolveStatus::PrecisionExhausted) {
      res.status = CertifyStatus::PrecisionExhausted;
      res.message = "solver stalled at " + std::to_string(out.digits_used) +
                    " digits: " + out.diagnostic;
      return res;
    }
    if (out.status == solver::SolveStatus::NoCertificateFound) continue;

    rationalize::RoundingPolicy policy = opt.rounding;
    policy.check_digits = out.digits_used;
    auto rounded = rationalize::blend_and_round(out.y, out.s, strict, inst, policy);
    if (!rounded.certificate) {
      last_rounding = rounded.diagnostic;
      if (params.log) *params.log << rounded.diagnostic << "\n";
      continue;
    }
    Certificate cert = std::move(*rounded.certificate);
    std::vector<std::pair<std::string, std::string>> prov = {
        {"method", "big-m-interior-point"},
        {"solver_digits", std::to_string(out.digits_used)},
        {"big_m", out.big_m.get_str()},
        {"iterations", std::to_string(out.log.size())},
        {"numeric_s", out.s.get_d() == 0 ? "0" : std::to_string(out.s.get_d())},
        {"negativity_margin", params.negativity_margin.get_str()},
        {"spot_check_seed", std::to_string(opt.seed)}};
    prov.insert(prov.end(), cert.provenance.begin(), cert.provenance.end());
    cert.provenance = std::move(prov);
    finish(res, std::move(cert), opt);
    res.message = "certified with big_m " + out.big_m.get_str();
    return res;
  }
  if (!last_rounding.empty()) {
    res.status = CertifyStatus::PrecisionExhausted;
    res.message = last_rounding;
    return res;
  }
  res.status = CertifyStatus::Inconclusive;
  res.message = "no certificate found up to big_m " + params.big_m.get_str() +
                " (inconclusive, not a proof of membership)";
  return res;
}

}  // namespace rsoscert::pipeline
