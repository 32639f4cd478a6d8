#include "rsoscert/rationalize.hpp"

#include "rsoscert/errors.hpp"
#include "rsoscert/verify.hpp"

namespace rsoscert::rationalize {

Rational rationalize_value(const Rational& v, const Integer& max_denominator) {
  if (max_denominator < 1) throw InvalidArgument("max_denominator must be >= 1");
  if (v.get_den() <= max_denominator) return v;
  Integer p0 = 0, q0 = 1, p1 = 1, q1 = 0;
  Integer n = v.get_num(), d = v.get_den();
  for (;;) {
    Integer a;
    mpz_fdiv_q(a.get_mpz_t(), n.get_mpz_t(), d.get_mpz_t());
    const Integer q2 = q0 + a * q1;
    if (q2 > max_denominator) break;
    const Integer p2 = p0 + a * p1;
    p0 = p1;
    q0 = q1;
    p1 = p2;
    q1 = q2;
    const Integer r = n - a * d;
    n = d;
    d = r;
  }
  const Integer k = (max_denominator - q0) / q1;
  Rational semi(p0 + k * p1, q0 + k * q1);
  Rational conv(p1, q1);
  semi.canonicalize();
  conv.canonicalize();
  return abs(conv - v) <= abs(semi - v) ? conv : semi;
}

std::vector<Integer> RoundingPolicy::default_ladder() {
  std::vector<Integer> out;
  Integer d = 1000;
  for (int i = 0; i < 8; ++i) {
    out.push_back(d);
    d *= 1000;
  }
  return out;
}

namespace {

Rational lmi_trace(const sdp::SdpInstance& inst, const sdp::MomentVector& y, const Rational& s) {
  Rational t = Rational(static_cast<long>(inst.k2())) * s;
  for (std::size_t i = 0; i < inst.m(); ++i) {
    const Rational& v = y.at(inst.constraint_monomials[i]);
    if (v != 0) t += v * (inst.G[i].trace() + inst.H[i].trace());
  }
  return t;
}

bool strictly_feasible(const sdp::SdpInstance& inst, const sdp::MomentVector& y, const Rational& s,
                       int digits) {
  if (!solver::numerically_positive_definite(inst.numerator_matrix(y), digits)) return false;
  const RatMatrix fb = inst.denominator_matrix(y);
  return solver::numerically_positive_definite(-fb + RatMatrix::identity(fb.rows()).scaled(s),
                                               digits);
}

}  // namespace

RoundingResult blend_and_round(const sdp::MomentVector& y, const Rational& s,
                               const solver::StrictPoint& strict, const sdp::SdpInstance& instance,
                               const RoundingPolicy& policy) {
  if (!(s < 0)) throw InvalidArgument("blend_and_round needs a numeric point with s < 0");
  const std::vector<Integer> ladder =
      policy.denominators.empty() ? RoundingPolicy::default_ladder() : policy.denominators;
  const sdp::Problem& prob = instance.problem;

  // Strict point rescaled to the trace of the numeric one.
  const Rational scale = lmi_trace(instance, y, s) / lmi_trace(instance, strict.y, strict.s);

  std::vector<Rational> blends{Rational(0)};
  for (int k = 0; k <= policy.max_blend_exponent; ++k) {
    Rational t(1);
    t /= Rational(Integer(1) << k);
    const Rational sb = (1 - t) * s + t * scale * strict.s;
    if (!(sb < s / 2)) continue;
    sdp::MomentVector yb;
    for (const auto& a : instance.constraint_monomials) {
      yb.set(a, (1 - t) * y.at(a) + t * scale * strict.y.at(a));
    }
    if (strictly_feasible(instance, yb, sb, policy.check_digits)) {
      blends.push_back(t);
      break;
    }
  }

  RoundingResult res;
  for (const Rational& t : blends) {
    const Rational sb = (1 - t) * s + t * scale * strict.s;
    for (const Integer& den : ladder) {
      sdp::MomentVector yr;
      for (const auto& a : instance.constraint_monomials) {
        const Rational v = (1 - t) * y.at(a) + t * scale * strict.y.at(a);
        yr.set(a, rationalize_value(v, den));
      }
      ++res.attempts;
      const auto rep = verify::check_moments(prob, instance.numerator_basis, yr);
      if (!rep.accepted) {
        res.diagnostic = "t=" + t.get_str() + " denominator<=" + den.get_str() + ": " + rep.summary;
        continue;
      }
      Certificate cert;
      cert.problem = prob;
      cert.basis_kind = instance.basis_kind;
      cert.numerator_basis = instance.numerator_basis.terms();
      cert.body = std::move(yr);
      cert.provenance = {{"blend_t", t.get_str()}, {"max_denominator", den.get_str()}};
      res.certificate = std::move(cert);
      res.t = t;
      res.max_denominator = den;
      res.s_bar = sb;
      res.diagnostic.clear();
      return res;
    }
  }
  if (res.diagnostic.empty()) res.diagnostic = "no rounding attempt was made";
  res.diagnostic = "rounding failed at all denominator bounds; last: " + res.diagnostic;
  return res;
}

}  // namespace rsoscert::rationalize
