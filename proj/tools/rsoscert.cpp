// rsoscert: certify that f (or f/g) is not in RSOS_T, verify certificates,
// print example polynomials.

#include <algorithm>
#include <cctype>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "rsoscert/certfile.hpp"
#include "rsoscert/errors.hpp"
#include "rsoscert/pipeline.hpp"
#include "rsoscert/polyring.hpp"
#include "rsoscert/verify.hpp"

namespace {

using namespace rsoscert;

enum Exit : int {
  kCertified = 0,
  kRejected = 1,
  kInconclusive = 2,
  kPrecision = 3,
  kUsage = 64,
  kBadCertificate = 65,
  kInternal = 70,
};

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Highest k such that "x<k>" occurs in the text.
std::size_t infer_vars(const std::string& text) {
  std::size_t n = 0;
  for (std::size_t i = 0; i + 1 < text.size(); ++i) {
    if (text[i] != 'x') continue;
    std::size_t j = i + 1, k = 0;
    while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) {
      k = k * 10 + static_cast<std::size_t>(text[j] - '0');
      ++j;
    }
    n = std::max(n, k);
  }
  return n;
}

TermSet read_terms(const std::string& path, std::size_t n) {
  std::istringstream in(slurp(path));
  TermSet T(n);
  std::string line;
  while (std::getline(in, line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos || line[0] == '#') continue;
    std::istringstream ls(line);
    std::vector<int> e;
    for (int v; ls >> v;) {
      if (v < 0) throw UsageError("negative exponent in " + path);
      e.push_back(v);
    }
    if (!ls.eof() || e.size() != n) {
      throw UsageError("bad exponent line in " + path + ": '" + line + "'");
    }
    T.insert(Exponent(std::move(e)));
  }
  if (T.empty()) throw UsageError(path + " lists no terms");
  return T;
}

struct CertifyArgs {
  std::string input;
  std::vector<int> ess;
  bool motzkin = false;
  std::string illposed;
  std::size_t vars = 0;
  int den_degree = -1;
  std::string den_terms;
  std::string rational_den;
  int digits = 30;
  std::string big_m;
  int max_iters = 300;
  std::uint64_t seed = 1;
  std::string margin = "1/1000";
  bool dense = false;
  bool timestamp = false;
  bool verbose = false;
  std::string out;
};

int cmd_certify(const CertifyArgs& a) {
  const int sources = !a.input.empty() + !a.ess.empty() + a.motzkin + !a.illposed.empty();
  if (sources != 1) throw UsageError("give exactly one of --input, --ess, --motzkin, --illposed");
  if (a.den_degree < 0 || a.den_degree % 2 != 0) {
    throw UsageError("--den-degree must be an even nonnegative integer (2e)");
  }
  Polynomial f;
  if (a.motzkin) {
    f = motzkin_polynomial();
  } else if (!a.ess.empty()) {
    try {
      f = ess_polynomial(static_cast<std::size_t>(a.ess.at(0)), a.ess.at(1));
    } catch (const InvalidArgument& e) {
      throw UsageError(e.what());
    }
  } else if (!a.illposed.empty()) {
    f = illposed_polynomial(parse_rational(a.illposed));
  } else {
    const std::string text = slurp(a.input);
    const std::size_t n = a.vars ? a.vars : infer_vars(text);
    if (n == 0) throw UsageError("cannot infer the number of variables; pass --vars");
    f = parse_polynomial(text, n);
  }
  if (a.vars && a.vars != f.nvars()) throw UsageError("--vars does not match the input");
  const std::size_t n = f.nvars();

  sdp::Problem p;
  p.f = f;
  p.e = a.den_degree / 2;
  p.T = a.den_terms.empty() ? terms_up_to(n, p.e) : read_terms(a.den_terms, n);
  if (!a.rational_den.empty()) p.g = parse_polynomial(slurp(a.rational_den), n);
  p.use_sparsity = !p.g && !a.dense;
  try {
    sdp::validate(p);
  } catch (const InvalidArgument& e) {
    throw UsageError(e.what());
  }

  pipeline::CertifyOptions opt;
  opt.solver.precision_digits = a.digits;
  opt.solver.max_iterations = a.max_iters;
  opt.solver.negativity_margin = parse_rational(a.margin);
  if (!a.big_m.empty()) opt.solver.big_m = parse_rational(a.big_m);
  if (a.verbose) opt.solver.log = &std::cerr;
  opt.seed = a.seed;
  opt.timestamp = a.timestamp;
  try {
    opt.solver.validate();
  } catch (const InvalidArgument& e) {
    throw UsageError(e.what());
  }

  const auto res = pipeline::certify(p, opt);
  switch (res.status) {
    case pipeline::CertifyStatus::Certified:
      certfile::write_file(a.out, *res.certificate);
      std::cout << "certified: " << res.report->summary << "\n"
                << res.message << "\nwrote " << a.out << "\n";
      return kCertified;
    case pipeline::CertifyStatus::Inconclusive:
      std::cout << "inconclusive: " << res.message << "\n";
      return kInconclusive;
    case pipeline::CertifyStatus::PrecisionExhausted:
      std::cout << "precision exhausted: " << res.message << "\n";
      return kPrecision;
  }
  return kInternal;
}

std::string vector_text(const std::vector<Rational>& v) {
  std::string s = "[";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + v[i].get_str();
  return s + "]";
}

int cmd_verify(const std::string& path, std::size_t spot_checks, std::uint64_t seed) {
  Certificate cert;
  try {
    cert = certfile::read_file(path);
  } catch (const FormatError& e) {
    std::cerr << path << ": " << e.what() << "\n";
    return kBadCertificate;
  }
  verify::VerificationReport rep;
  try {
    rep = verify::verify_certificate(cert);
  } catch (const verify::FingerprintMismatch& e) {
    std::cout << "rejected: " << e.what() << "\n";
    return kRejected;
  } catch (const MissingMoment& e) {
    std::cout << "rejected: " << e.what() << "\n";
    return kRejected;
  }
  if (!rep.accepted) {
    std::cout << rep.summary << "\n";
    for (const auto* blk : {&rep.psd_block, &rep.nd_block}) {
      if (*blk && !(*blk)->holds) std::cout << "witness " << vector_text((*blk)->witness) << "\n";
    }
    return kRejected;
  }
  std::cout << rep.summary << "\n";
  if (!cert.is_obstruction()) {
    std::cout << "L(f) = " << cert.moments().apply(cert.problem.f).get_str() << "\n";
    if (spot_checks > 0) {
      const auto spot = verify::spot_check_linear_form(cert, spot_checks, seed);
      std::cout << "spot checks: " << spot.evaluations << " evaluations, "
                << spot.violations.size() << " violations\n";
      for (const auto& v : spot.violations) std::cout << "  " << v << "\n";
      if (!spot.passed()) return kRejected;
    }
  }
  return kCertified;
}

int cmd_generate(const std::vector<std::string>& words) {
  if (words.empty()) throw UsageError("generate needs a family: motzkin | ess N K | illposed EPS");
  const std::string& fam = words[0];
  auto need = [&](std::size_t k) {
    if (words.size() != k + 1) throw UsageError(fam + " takes " + std::to_string(k) + " parameter(s)");
  };
  auto integer = [](const std::string& w) {
    std::size_t used = 0;
    int v = 0;
    try {
      v = std::stoi(w, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != w.size() || used == 0) throw UsageError("bad integer '" + w + "'");
    return v;
  };
  Polynomial f;
  if (fam == "motzkin") {
    need(0);
    f = motzkin_polynomial();
  } else if (fam == "ess") {
    need(2);
    const int n = integer(words[1]);
    if (n < 0) throw UsageError("n must be positive");
    try {
      f = ess_polynomial(static_cast<std::size_t>(n), integer(words[2]));
    } catch (const InvalidArgument& e) {
      throw UsageError(e.what());
    }
  } else if (fam == "illposed") {
    need(1);
    f = illposed_polynomial(parse_rational(words[1]));
  } else {
    throw UsageError("unknown family '" + fam + "'");
  }
  std::cout << f.to_string() << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Refutation certificates for rational sums of squares"};
  app.require_subcommand(1);

  CertifyArgs ca;
  auto* certify = app.add_subcommand("certify", "find and write a verified certificate");
  certify->add_option("--input", ca.input, "file holding the polynomial f");
  certify->add_option("--ess", ca.ess, "even symmetric sextic f_{N,K}")->expected(2);
  certify->add_flag("--motzkin", ca.motzkin, "Motzkin polynomial");
  certify->add_option("--illposed", ca.illposed, "(1-EPS^2) x1^2 + x2^2 - 2 x1 x2");
  certify->add_option("--vars", ca.vars, "number of variables");
  certify->add_option("--den-degree", ca.den_degree, "denominator degree 2e")->required();
  certify->add_option("--den-terms", ca.den_terms, "file of denominator exponents, one per line");
  certify->add_option("--rational-den", ca.rational_den, "file holding g (certify f/g)");
  certify->add_option("--digits", ca.digits, "working decimal digits")->capture_default_str();
  certify->add_option("--big-m", ca.big_m, "trace bound (default 10^6 (1 + max |f_a|))");
  certify->add_option("--max-iters", ca.max_iters, "iteration limit")->capture_default_str();
  certify->add_option("--seed", ca.seed, "spot-check seed")->capture_default_str();
  certify->add_option("--margin", ca.margin, "stop once s < -margin")->capture_default_str();
  certify->add_flag("--dense", ca.dense, "skip the Newton polytope reduction");
  certify->add_flag("--timestamp", ca.timestamp, "record creation time in the certificate");
  certify->add_flag("--verbose", ca.verbose, "iteration log on stderr");
  certify->add_option("--out", ca.out, "certificate path")->required();

  std::string cert_path;
  std::size_t spot_checks = 100;
  std::uint64_t verify_seed = 1;
  auto* verify = app.add_subcommand("verify", "check a certificate exactly");
  verify->add_option("--cert", cert_path, "certificate path")->required();
  verify->add_option("--spot-checks", spot_checks, "random linear-form checks")->capture_default_str();
  verify->add_option("--seed", verify_seed, "spot-check seed")->capture_default_str();

  std::vector<std::string> gen_words;
  auto* generate = app.add_subcommand("generate", "print motzkin | ess N K | illposed EPS");
  generate->add_option("family", gen_words, "family and parameters")->allow_extra_args();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kUsage;
  }

  try {
    if (certify->parsed()) return cmd_certify(ca);
    if (verify->parsed()) return cmd_verify(cert_path, spot_checks, verify_seed);
    return cmd_generate(gen_words);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kUsage;
  } catch (const ParseError& e) {
    std::cerr << "parse error at " << e.position() << ": " << e.what() << "\n";
    return kUsage;
  } catch (const SolverError& e) {
    std::cerr << "solver error: " << e.what() << "\n";
    return kInternal;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kInternal;
  }
}
