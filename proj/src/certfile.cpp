#include "rsoscert/certfile.hpp"

#include <fstream>
#include <sstream>
#include <vector>

#include "rsoscert/errors.hpp"

namespace rsoscert::certfile {

namespace {

constexpr std::string_view kAllTerms = "all-terms-deg<=e";

struct Line {
  std::size_t number;
  std::string key;
  std::string rest;
};

class Reader {
 public:
  explicit Reader(std::istream& in) {
    std::string raw;
    std::size_t no = 0;
    while (std::getline(in, raw)) {
      ++no;
      if (!raw.empty() && raw.back() == '\r') raw.pop_back();
      const auto first = raw.find_first_not_of(" \t");
      if (first == std::string::npos || raw[first] == '#') continue;
      raw = raw.substr(first);
      const auto sp = raw.find_first_of(" \t");
      Line l{no, raw.substr(0, sp), ""};
      if (sp != std::string::npos) {
        const auto r = raw.find_first_not_of(" \t", sp);
        if (r != std::string::npos) l.rest = raw.substr(r);
        while (!l.rest.empty() && (l.rest.back() == ' ' || l.rest.back() == '\t')) l.rest.pop_back();
      }
      lines_.push_back(std::move(l));
    }
    last_line_ = no;
  }

  bool done() const { return pos_ >= lines_.size(); }
  const Line* peek() const { return done() ? nullptr : &lines_[pos_]; }
  bool next_is(std::string_view key) const { return !done() && lines_[pos_].key == key; }

  const Line& expect(std::string_view key) {
    if (done()) fail("unexpected end of file, expected '" + std::string(key) + "'");
    const Line& l = lines_[pos_];
    if (l.key != key) {
      throw FormatError("expected '" + std::string(key) + "', found '" + l.key + "'", l.number);
    }
    ++pos_;
    return l;
  }

  [[noreturn]] void fail(const std::string& what) const {
    throw FormatError(what, done() ? last_line_ + 1 : lines_[pos_].number);
  }

 private:
  std::vector<Line> lines_;
  std::size_t pos_ = 0;
  std::size_t last_line_ = 0;
};

std::vector<std::string> split(const std::string& s) {
  std::istringstream is(s);
  std::vector<std::string> out;
  for (std::string w; is >> w;) out.push_back(w);
  return out;
}

int parse_int(const std::string& w, std::size_t line) {
  if (w.empty() || w.size() > 9) throw FormatError("bad integer '" + w + "'", line);
  std::size_t i = (w[0] == '-') ? 1 : 0;
  if (i == w.size()) throw FormatError("bad integer '" + w + "'", line);
  for (; i < w.size(); ++i) {
    if (w[i] < '0' || w[i] > '9') throw FormatError("bad integer '" + w + "'", line);
  }
  return std::stoi(w);
}

Exponent parse_exponent(const std::vector<std::string>& words, std::size_t from, std::size_t n,
                        std::size_t line) {
  if (words.size() < from + n) throw FormatError("exponent vector too short", line);
  std::vector<int> e(n);
  for (std::size_t i = 0; i < n; ++i) {
    e[i] = parse_int(words[from + i], line);
    if (e[i] < 0) throw FormatError("negative exponent", line);
  }
  return Exponent(std::move(e));
}

Exponent exponent_line(const Line& l, std::size_t n) {
  const auto w = split(l.rest);
  if (w.size() != n) throw FormatError("expected " + std::to_string(n) + " exponents", l.number);
  return parse_exponent(w, 0, n, l.number);
}

Rational parse_fraction(const std::string& w, std::size_t line) {
  const auto slash = w.find('/');
  const std::string num = w.substr(0, slash);
  const std::string den = slash == std::string::npos ? "1" : w.substr(slash + 1);
  auto digits = [](const std::string& s, bool sign) {
    std::size_t i = (sign && !s.empty() && s[0] == '-') ? 1 : 0;
    if (i == s.size()) return false;
    for (; i < s.size(); ++i) {
      if (s[i] < '0' || s[i] > '9') return false;
    }
    return true;
  };
  if (!digits(num, true) || !digits(den, false)) throw FormatError("bad rational '" + w + "'", line);
  Rational q;
  q.get_num() = Integer(num, 10);
  q.get_den() = Integer(den, 10);
  if (q.get_den() == 0) throw FormatError("zero denominator", line);
  Rational canon = q;
  canon.canonicalize();
  if (canon.get_num() != q.get_num() || canon.get_den() != q.get_den()) {
    throw FormatError("rational '" + w + "' is not in lowest terms", line);
  }
  return canon;
}

Polynomial polynomial_line(const Line& l, std::size_t n) {
  try {
    return parse_polynomial(l.rest, n);
  } catch (const ParseError& e) {
    throw FormatError(std::string("bad polynomial: ") + e.what(), l.number);
  }
}

void print_exponent(std::ostream& out, const Exponent& a) {
  for (std::size_t i = 0; i < a.size(); ++i) out << (i ? " " : "") << a[i];
}

}  // namespace

std::string format_rational(const Rational& q) {
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

Certificate parse(std::istream& in) {
  Reader r(in);
  Certificate c;
  {
    const Line& l = r.expect("format");
    if (l.rest != "1") throw FormatError("unsupported format version '" + l.rest + "'", l.number);
  }
  const Line& nl = r.expect("n");
  const int n = parse_int(nl.rest, nl.number);
  if (n < 1) throw FormatError("n must be positive", nl.number);
  const Line& el = r.expect("e");
  c.problem.e = parse_int(el.rest, el.number);
  if (c.problem.e < 0) throw FormatError("e must be nonnegative", el.number);
  c.problem.f = polynomial_line(r.expect("f"), n);
  if (r.next_is("g")) c.problem.g = polynomial_line(r.expect("g"), n);

  const Line& tl = r.expect("terms");
  if (tl.rest == kAllTerms) {
    c.problem.T = terms_up_to(n, c.problem.e);
  } else if (tl.rest == "explicit") {
    c.problem.T = TermSet(n);
    while (r.next_is("t")) {
      const Line& l = r.expect("t");
      const Exponent a = exponent_line(l, n);
      if (c.problem.T.contains(a)) throw FormatError("duplicate term", l.number);
      c.problem.T.insert(a);
    }
    if (c.problem.T.empty()) r.fail("explicit term list is empty");
  } else {
    throw FormatError("terms must be '" + std::string(kAllTerms) + "' or 'explicit'", tl.number);
  }

  const Line& ol = r.expect("order");
  c.order = ol.rest;
  if (c.order != "grlex") throw FormatError("unsupported monomial order '" + ol.rest + "'", ol.number);

  const Line& bl = r.expect("basis");
  if (bl.rest == "newton") {
    c.basis_kind = sdp::BasisKind::Newton;
  } else if (bl.rest == "dense") {
    c.basis_kind = sdp::BasisKind::Dense;
  } else {
    throw FormatError("basis must be 'newton' or 'dense'", bl.number);
  }
  c.problem.use_sparsity = !c.problem.g && c.basis_kind == sdp::BasisKind::Newton;
  while (r.next_is("b")) c.numerator_basis.push_back(exponent_line(r.expect("b"), n));

  if (r.next_is("witness")) {
    c.body = sdp::SupportObstruction{exponent_line(r.expect("witness"), n)};
  } else {
    sdp::MomentVector y;
    while (r.next_is("y")) {
      const Line& l = r.expect("y");
      const auto w = split(l.rest);
      if (w.size() != static_cast<std::size_t>(n) + 1) {
        throw FormatError("y line needs " + std::to_string(n) + " exponents and a value", l.number);
      }
      const Exponent a = parse_exponent(w, 0, n, l.number);
      if (y.contains(a)) throw FormatError("duplicate moment " + a.to_string(), l.number);
      y.set(a, parse_fraction(w.back(), l.number));
    }
    if (y.size() == 0) r.fail("certificate has neither moments nor a witness");
    c.body = std::move(y);
  }

  while (r.next_is("provenance")) {
    const Line& l = r.expect("provenance");
    const auto sp = l.rest.find_first_of(" \t");
    if (l.rest.empty()) throw FormatError("provenance line needs a key", l.number);
    std::string key = l.rest.substr(0, sp);
    std::string value;
    if (sp != std::string::npos) value = l.rest.substr(l.rest.find_first_not_of(" \t", sp));
    c.provenance.emplace_back(std::move(key), std::move(value));
  }
  r.expect("end");
  if (!r.done()) r.fail("trailing content after 'end'");
  return c;
}

Certificate parse_string(std::string_view text) {
  std::istringstream in{std::string(text)};
  return parse(in);
}

Certificate read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open " + path, 0);
  return parse(in);
}

void print(std::ostream& out, const Certificate& cert) {
  const auto& p = cert.problem;
  const std::size_t n = p.f.nvars();
  out << "format 1\n";
  out << "n " << n << "\n";
  out << "e " << p.e << "\n";
  out << "f " << p.f.to_string() << "\n";
  if (p.g) out << "g " << p.g->to_string() << "\n";
  if (p.T == terms_up_to(n, p.e)) {
    out << "terms " << kAllTerms << "\n";
  } else {
    out << "terms explicit\n";
    for (const auto& a : p.T) {
      out << "t ";
      print_exponent(out, a);
      out << "\n";
    }
  }
  out << "order " << cert.order << "\n";
  out << "basis " << (cert.basis_kind == sdp::BasisKind::Newton ? "newton" : "dense") << "\n";
  for (const auto& b : cert.numerator_basis) {
    out << "b ";
    print_exponent(out, b);
    out << "\n";
  }
  if (cert.is_obstruction()) {
    out << "witness ";
    print_exponent(out, std::get<sdp::SupportObstruction>(cert.body).witness);
    out << "\n";
  } else {
    for (const auto& [a, v] : cert.moments().values()) {
      out << "y ";
      print_exponent(out, a);
      out << " " << format_rational(v) << "\n";
    }
  }
  for (const auto& [k, v] : cert.provenance) {
    out << "provenance " << k;
    if (!v.empty()) out << " " << v;
    out << "\n";
  }
  out << "end\n";
}

std::string to_string(const Certificate& cert) {
  std::ostringstream out;
  print(out, cert);
  return out.str();
}

void write_file(const std::string& path, const Certificate& cert) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot write " + path);
  print(out, cert);
  if (!out) throw Error("write to " + path + " failed");
}

}  // namespace rsoscert::certfile
