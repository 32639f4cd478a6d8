// Python bindings: polynomials and certificates cross the boundary as text.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <string>
#include <vector>

#include "rsoscert/certfile.hpp"
#include "rsoscert/errors.hpp"
#include "rsoscert/pipeline.hpp"
#include "rsoscert/polyring.hpp"
#include "rsoscert/verify.hpp"

namespace py = pybind11;
using namespace rsoscert;

namespace {

std::string generate(const std::string& family, const std::vector<std::string>& params) {
  auto need = [&](std::size_t k) {
    if (params.size() != k) throw InvalidArgument(family + " takes " + std::to_string(k) + " parameter(s)");
  };
  if (family == "motzkin") {
    need(0);
    return motzkin_polynomial().to_string();
  }
  if (family == "ess") {
    need(2);
    return ess_polynomial(std::stoul(params[0]), std::stoi(params[1])).to_string();
  }
  if (family == "illposed") {
    need(1);
    return illposed_polynomial(parse_rational(params[0])).to_string();
  }
  throw InvalidArgument("unknown family '" + family + "'");
}

py::dict certify(const std::string& f_text, std::size_t nvars, int den_degree,
                 const std::optional<std::string>& g_text,
                 const std::optional<std::vector<std::vector<int>>>& terms, int digits,
                 const std::optional<std::string>& big_m, bool dense, std::uint64_t seed) {
  if (den_degree < 0 || den_degree % 2) throw InvalidArgument("den_degree must be even and nonnegative");
  sdp::Problem p;
  p.f = parse_polynomial(f_text, nvars);
  p.e = den_degree / 2;
  if (terms) {
    p.T = TermSet(nvars);
    for (const auto& t : *terms) p.T.insert(Exponent(t));
  } else {
    p.T = terms_up_to(nvars, p.e);
  }
  if (g_text) p.g = parse_polynomial(*g_text, nvars);
  p.use_sparsity = !p.g && !dense;
  sdp::validate(p);

  pipeline::CertifyOptions opt;
  opt.solver.precision_digits = digits;
  if (big_m) opt.solver.big_m = parse_rational(*big_m);
  opt.seed = seed;
  opt.solver.validate();

  pipeline::CertifyResult r;
  {
    py::gil_scoped_release release;
    r = pipeline::certify(p, opt);
  }
  py::dict out;
  out["status"] = pipeline::to_string(r.status);
  out["message"] = r.message;
  out["certificate"] = r.certificate ? py::object(py::str(certfile::to_string(*r.certificate))) : py::none();
  return out;
}

py::dict verify_text(const std::string& text, std::size_t spot_checks, std::uint64_t seed) {
  const Certificate cert = certfile::parse_string(text);
  py::dict out;
  verify::VerificationReport rep;
  try {
    rep = verify::verify_certificate(cert);
  } catch (const verify::FingerprintMismatch& e) {
    rep.accepted = false;
    rep.summary = e.what();
  } catch (const MissingMoment& e) {
    rep.accepted = false;
    rep.summary = e.what();
  }
  out["accepted"] = rep.accepted;
  out["summary"] = rep.summary;
  out["obstruction"] = cert.is_obstruction();
  out["linear_form_f"] = py::none();
  if (rep.accepted && !cert.is_obstruction()) {
    out["linear_form_f"] = certfile::format_rational(cert.moments().apply(cert.problem.f));
    if (spot_checks > 0) {
      const auto spot = verify::spot_check_linear_form(cert, spot_checks, seed);
      out["spot_check_violations"] = spot.violations;
      if (!spot.passed()) out["accepted"] = false;
    }
  }
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Certify that a polynomial or rational function is not a ratio of sums of squares";

  py::register_exception<ParseError>(m, "PolynomialParseError", PyExc_ValueError);
  py::register_exception<FormatError>(m, "CertificateFormatError", PyExc_ValueError);
  py::register_exception<SolverError>(m, "SolverError", PyExc_RuntimeError);
  py::register_exception<InvalidArgument>(m, "InvalidArgument", PyExc_ValueError);

  m.def("parse_polynomial",
        [](const std::string& text, std::size_t n) { return parse_polynomial(text, n).to_string(); },
        py::arg("text"), py::arg("nvars"), "Parse and return the canonical text of a polynomial.");
  m.def("generate", &generate, py::arg("family"), py::arg("params") = std::vector<std::string>{},
        "motzkin | ess [n, k] | illposed [eps]");
  m.def("certify", &certify, py::arg("f"), py::arg("nvars"), py::arg("den_degree"), py::arg("g") = py::none(),
        py::arg("terms") = py::none(), py::arg("digits") = 30, py::arg("big_m") = py::none(),
        py::arg("dense") = false, py::arg("seed") = 1,
        "Returns {'status', 'message', 'certificate'}; certificate is text or None.");
  m.def("verify", &verify_text, py::arg("certificate"), py::arg("spot_checks") = 100, py::arg("seed") = 1,
        "Exact verification of certificate text.");
  m.def("normalize_certificate",
        [](const std::string& text) { return certfile::to_string(certfile::parse_string(text)); },
        py::arg("certificate"), "Parse and reprint certificate text.");
}
