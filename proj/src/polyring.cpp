#include "rsoscert/polyring.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#include "rsoscert/errors.hpp"

namespace rsoscert {

// ---------------------------------------------------------------- Exponent

Exponent::Exponent(std::vector<int> entries) : entries_(std::move(entries)) {
  for (int v : entries_) {
    if (v < 0) throw InvalidArgument("exponent entries must be nonnegative");
  }
}

int Exponent::degree() const noexcept {
  int d = 0;
  for (int v : entries_) d += v;
  return d;
}

Exponent Exponent::operator+(const Exponent& other) const {
  if (other.size() != size()) throw InvalidArgument("exponent length mismatch");
  Exponent r(*this);
  for (std::size_t i = 0; i < size(); ++i) r.entries_[i] += other.entries_[i];
  return r;
}

Exponent Exponent::operator-(const Exponent& other) const {
  if (other.size() != size()) throw InvalidArgument("exponent length mismatch");
  Exponent r(*this);
  for (std::size_t i = 0; i < size(); ++i) {
    r.entries_[i] -= other.entries_[i];
    if (r.entries_[i] < 0) throw InvalidArgument("exponent difference is negative");
  }
  return r;
}

Exponent Exponent::scaled(int factor) const {
  Exponent r(*this);
  for (int& v : r.entries_) v *= factor;
  return r;
}

bool Exponent::divides(const Exponent& other) const {
  if (other.size() != size()) return false;
  for (std::size_t i = 0; i < size(); ++i) {
    if (entries_[i] > other.entries_[i]) return false;
  }
  return true;
}

bool Exponent::all_even() const {
  return std::all_of(entries_.begin(), entries_.end(), [](int v) { return v % 2 == 0; });
}

std::strong_ordering Exponent::operator<=>(const Exponent& other) const {
  if (auto c = degree() <=> other.degree(); c != 0) return c;
  // Same degree: larger first entry means larger term.
  const std::size_t n = std::min(size(), other.size());
  for (std::size_t i = 0; i < n; ++i) {
    if (auto c = entries_[i] <=> other.entries_[i]; c != 0) return c;
  }
  return size() <=> other.size();
}

std::string Exponent::to_string() const {
  std::string out;
  for (std::size_t i = 0; i < size(); ++i) {
    if (i) out += ' ';
    out += std::to_string(entries_[i]);
  }
  return out;
}

// ----------------------------------------------------------------- TermSet

TermSet::TermSet(std::size_t n, std::initializer_list<Exponent> members) : n_(n) {
  for (const auto& a : members) insert(a);
}

void TermSet::insert(const Exponent& a) {
  if (a.size() != n_) throw InvalidArgument("term length does not match variable count");
  members_.insert(a);
}

int TermSet::max_degree() const {
  return members_.empty() ? -1 : members_.rbegin()->degree();
}

// -------------------------------------------------------------- Polynomial

Polynomial Polynomial::constant(std::size_t n, const Rational& c) {
  Polynomial p(n);
  p.add_term(Exponent(n), c);
  return p;
}

Polynomial Polynomial::monomial(const Exponent& a, const Rational& c) {
  Polynomial p(a.size());
  p.add_term(a, c);
  return p;
}

Polynomial Polynomial::variable(std::size_t n, std::size_t i) {
  if (i >= n) throw InvalidArgument("variable index out of range");
  std::vector<int> e(n, 0);
  e[i] = 1;
  return monomial(Exponent(std::move(e)));
}

int Polynomial::degree() const {
  return terms_.empty() ? -1 : terms_.rbegin()->first.degree();
}

Rational Polynomial::coefficient(const Exponent& a) const {
  auto it = terms_.find(a);
  return it == terms_.end() ? Rational(0) : it->second;
}

void Polynomial::add_term(const Exponent& a, const Rational& c) {
  if (a.size() != n_) throw InvalidArgument("term length does not match variable count");
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(a, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

void Polynomial::require_same_ring(const Polynomial& other) const {
  if (other.n_ != n_) throw InvalidArgument("polynomials live in different rings");
}

Polynomial Polynomial::operator+(const Polynomial& other) const {
  require_same_ring(other);
  Polynomial r(*this);
  for (const auto& [a, c] : other.terms_) r.add_term(a, c);
  return r;
}

Polynomial Polynomial::operator-(const Polynomial& other) const {
  require_same_ring(other);
  Polynomial r(*this);
  for (const auto& [a, c] : other.terms_) r.add_term(a, -c);
  return r;
}

Polynomial Polynomial::operator-() const {
  Polynomial r(*this);
  for (auto& [a, c] : r.terms_) c = -c;
  return r;
}

Polynomial Polynomial::operator*(const Polynomial& other) const {
  require_same_ring(other);
  Polynomial r(n_);
  for (const auto& [a, c] : terms_) {
    for (const auto& [b, d] : other.terms_) r.add_term(a + b, c * d);
  }
  return r;
}

Polynomial Polynomial::operator*(const Rational& c) const {
  if (c == 0) return Polynomial(n_);
  Polynomial r(*this);
  for (auto& [a, v] : r.terms_) v *= c;
  return r;
}

Polynomial Polynomial::pow(unsigned k) const {
  Polynomial r = constant(n_, 1);
  for (unsigned i = 0; i < k; ++i) r = r * *this;
  return r;
}

Rational Polynomial::evaluate(std::span<const Rational> point) const {
  if (point.size() != n_) throw InvalidArgument("evaluation point has wrong dimension");
  Rational total = 0;
  for (const auto& [a, c] : terms_) {
    Rational term = c;
    for (std::size_t i = 0; i < n_; ++i) {
      for (int k = 0; k < a[i]; ++k) term *= point[i];
    }
    total += term;
  }
  return total;
}

std::string Polynomial::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream out;
  bool first = true;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const Exponent& a = it->first;
    Rational c = it->second;
    if (first) {
      if (c < 0) out << '-';
    } else {
      out << (c < 0 ? " - " : " + ");
    }
    first = false;
    c = abs(c);
    const bool is_const = a.degree() == 0;
    if (is_const || c != 1) {
      out << c.get_str();
      if (!is_const) out << '*';
    }
    bool first_factor = true;
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (a[i] == 0) continue;
      if (!first_factor) out << '*';
      first_factor = false;
      out << 'x' << (i + 1);
      if (a[i] != 1) out << '^' << a[i];
    }
  }
  return out.str();
}

// ------------------------------------------------------------------ parser

namespace {

class PolyParser {
 public:
  PolyParser(std::string_view text, std::size_t n) : text_(text), n_(n) {}

  Polynomial parse() {
    Polynomial result(n_);
    skip_ws();
    if (at_end()) throw ParseError("empty polynomial text", pos_);
    bool first = true;
    while (true) {
      skip_ws();
      int sign = 1;
      if (peek() == '+' || peek() == '-') {
        sign = peek() == '-' ? -1 : 1;
        ++pos_;
        skip_ws();
      } else if (!first) {
        throw ParseError("expected '+' or '-'", pos_);
      }
      first = false;
      auto [a, c] = parse_term();
      result.add_term(a, c * sign);
      skip_ws();
      if (at_end()) break;
    }
    return result;
  }

 private:
  std::pair<Exponent, Rational> parse_term() {
    Rational coef = 1;
    std::vector<int> e(n_, 0);
    bool have_coef = false;
    if (std::isdigit(static_cast<unsigned char>(peek()))) {
      coef = parse_coefficient();
      have_coef = true;
      skip_ws();
      if (peek() == '*') {
        ++pos_;
        skip_ws();
        if (peek() != 'x') throw ParseError("expected variable after '*'", pos_);
      }
    }
    if (peek() != 'x') {
      if (!have_coef) throw ParseError("expected coefficient or variable", pos_);
      return {Exponent(std::move(e)), coef};
    }
    while (true) {
      parse_factor(e);
      skip_ws();
      if (peek() != '*') break;
      ++pos_;
      skip_ws();
    }
    return {Exponent(std::move(e)), coef};
  }

  Rational parse_coefficient() {
    const std::size_t start = pos_;
    Integer num(read_digits(), 10);
    skip_ws();
    if (peek() == '.' || peek() == 'e' || peek() == 'E') {
      throw ParseError("coefficient must be an integer or p/q", pos_);
    }
    if (peek() != '/') return Rational(num);
    ++pos_;
    skip_ws();
    if (!std::isdigit(static_cast<unsigned char>(peek()))) {
      throw ParseError("expected denominator digits", pos_);
    }
    Integer den(read_digits(), 10);
    if (den == 0) throw ParseError("zero denominator", start);
    if (peek() == '.') throw ParseError("coefficient must be an integer or p/q", pos_);
    Rational q(num, den);
    q.canonicalize();
    return q;
  }

  void parse_factor(std::vector<int>& e) {
    const std::size_t start = pos_;
    ++pos_;  // 'x'
    if (!std::isdigit(static_cast<unsigned char>(peek()))) {
      throw ParseError("expected variable index after 'x'", pos_);
    }
    const std::string idx_text = read_digits();
    if (idx_text.size() > 6) throw ParseError("variable index too large", start);
    const std::size_t idx = std::stoul(idx_text);
    if (idx == 0 || idx > n_) {
      throw ParseError("variable x" + idx_text + " outside x1..x" + std::to_string(n_), start);
    }
    int power = 1;
    skip_ws();
    if (peek() == '^') {
      ++pos_;
      skip_ws();
      if (!std::isdigit(static_cast<unsigned char>(peek()))) {
        throw ParseError("expected nonnegative integer exponent", pos_);
      }
      const std::string p = read_digits();
      if (p.size() > 6) throw ParseError("exponent too large", pos_);
      power = std::stoi(p);
      if (peek() == '.' || peek() == '/') throw ParseError("exponent must be an integer", pos_);
    }
    e[idx - 1] += power;
  }

  std::string read_digits() {
    const std::size_t start = pos_;
    while (std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
    return std::string(text_.substr(start, pos_ - start));
  }

  void skip_ws() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  bool at_end() const { return pos_ >= text_.size(); }
  char peek() const { return at_end() ? '\0' : text_[pos_]; }

  std::string_view text_;
  std::size_t n_;
  std::size_t pos_ = 0;
};

}  // namespace

Polynomial parse_polynomial(std::string_view text, std::size_t n) {
  if (n == 0) throw InvalidArgument("variable count must be positive");
  return PolyParser(text, n).parse();
}

Rational parse_rational(std::string_view text) {
  std::string s;
  for (char ch : text) {
    if (!std::isspace(static_cast<unsigned char>(ch))) s += ch;
  }
  if (s.empty()) throw ParseError("empty number", 0);
  std::size_t pos = 0;
  bool negative = false;
  if (s[pos] == '+' || s[pos] == '-') negative = s[pos++] == '-';
  auto digits = [&](std::string& into) {
    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) into += s[pos++];
  };
  std::string whole, frac, den;
  digits(whole);
  Rational value;
  if (pos < s.size() && s[pos] == '/') {
    ++pos;
    digits(den);
    if (whole.empty() || den.empty()) throw ParseError("malformed fraction", pos);
    if (Integer(den, 10) == 0) throw ParseError("zero denominator", pos);
    value = Rational(Integer(whole, 10), Integer(den, 10));
    value.canonicalize();
  } else {
    if (pos < s.size() && s[pos] == '.') {
      ++pos;
      digits(frac);
    }
    if (whole.empty() && frac.empty()) throw ParseError("expected digits", pos);
    long exponent = -static_cast<long>(frac.size());
    if (pos < s.size() && (s[pos] == 'e' || s[pos] == 'E')) {
      ++pos;
      bool eneg = false;
      if (pos < s.size() && (s[pos] == '+' || s[pos] == '-')) eneg = s[pos++] == '-';
      std::string ed;
      digits(ed);
      if (ed.empty() || ed.size() > 6) throw ParseError("malformed exponent", pos);
      exponent += eneg ? -std::stol(ed) : std::stol(ed);
    }
    Integer mant(whole.empty() && frac.empty() ? std::string("0") : whole + frac, 10);
    Integer scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(std::labs(exponent)));
    value = exponent >= 0 ? Rational(mant * scale) : Rational(mant, scale);
    value.canonicalize();
  }
  if (pos != s.size()) throw ParseError("unexpected character in number", pos);
  return negative ? Rational(-value) : value;
}

// ------------------------------------------------------------- term sets

TermSet support(const Polynomial& f) {
  TermSet s(f.nvars());
  for (const auto& [a, c] : f.terms()) s.insert(a);
  return s;
}

TermSet terms_up_to(std::size_t n, int e) {
  if (n == 0) throw InvalidArgument("variable count must be positive");
  if (e < 0) throw InvalidArgument("degree bound must be nonnegative");
  TermSet out(n);
  std::vector<int> cur(n, 0);
  // Enumerate compositions with sum <= e by odometer over the first n-1 entries.
  auto rec = [&](auto&& self, std::size_t i, int remaining) -> void {
    if (i == n) {
      out.insert(Exponent(cur));
      return;
    }
    for (int v = 0; v <= remaining; ++v) {
      cur[i] = v;
      self(self, i + 1, remaining - v);
    }
    cur[i] = 0;
  };
  rec(rec, 0, e);
  return out;
}

TermSet sum_set(const TermSet& a, const TermSet& b) {
  if (a.nvars() != b.nvars()) throw InvalidArgument("term sets live in different rings");
  TermSet out(a.nvars());
  for (const auto& x : a) {
    for (const auto& y : b) out.insert(x + y);
  }
  return out;
}

// --------------------------------------------------------------- families

namespace {

Polynomial power_sum(std::size_t n, int r) {
  Polynomial p(n);
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<int> e(n, 0);
    e[i] = r;
    p.add_term(Exponent(std::move(e)), 1);
  }
  return p;
}

}  // namespace

Polynomial ess_polynomial(std::size_t n, int k) {
  if (n < 3) throw InvalidArgument("even symmetric sextic needs n >= 3");
  if (k < 0 || k > static_cast<int>(n) - 1) {
    throw InvalidArgument("even symmetric sextic needs 0 <= k <= n-1");
  }
  const Polynomial m2 = power_sum(n, 2);
  const Polynomial m4 = power_sum(n, 4);
  const Polynomial m6 = power_sum(n, 6);
  const Polynomial m2_cubed = m2.pow(3);
  if (k == 0) {
    const Rational nn(static_cast<long>(n));
    return m6 * Rational(-nn) + m2 * m4 * Rational(nn + 1) - m2_cubed;
  }
  const long kk = k;
  return m6 * Rational(kk * kk + kk) - m2 * m4 * Rational(2 * kk + 1) + m2_cubed;
}

Polynomial motzkin_polynomial() {
  return parse_polynomial("x1^4*x2^2 + x1^2*x2^4 + 1 - 3*x1^2*x2^2", 2);
}

Polynomial illposed_polynomial(const Rational& eps) {
  Polynomial f(2);
  f.add_term(Exponent{2, 0}, 1 - eps * eps);
  f.add_term(Exponent{0, 2}, 1);
  f.add_term(Exponent{1, 1}, -2);
  return f;
}

}  // namespace rsoscert
