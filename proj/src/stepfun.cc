#include "pk/stepfun.hh"

#include <cctype>
#include <sstream>

#include "pk/errors.hh"

namespace pk {

namespace {

Rational frac_mod_one(const Rational& r) {
  Rational f = r - Rational(rat_floor(r));
  return f;
}

}  // namespace

StepPolynomial::StepPolynomial(const Rational& c) {
  if (c != 0) terms_[{}] = c;
}

StepPolynomial StepPolynomial::fractional_part(const Rational& r) {
  StepPolynomial p;
  p.add_term({{r, 1}}, Rational(1));
  return p;
}

void StepPolynomial::add_term(
    const std::vector<std::pair<Rational, int>>& factors, const Rational& c) {
  if (c == 0) return;
  std::map<Rational, int> merged;
  for (const auto& [rate, n] : factors) {
    if (n < 0) throw domain_error("step factor exponents must be nonnegative");
    if (n == 0) continue;
    Rational r = frac_mod_one(rate);
    if (r == 0) return;  // {m T} = 0 on the integers: the term vanishes
    merged[r] += n;
  }
  Key key(merged.begin(), merged.end());
  Rational& slot = terms_[key];
  slot += c;
  if (slot == 0) terms_.erase(key);
}

StepPolynomial& StepPolynomial::operator+=(const StepPolynomial& o) {
  for (const auto& [key, c] : o.terms_) {
    Rational& slot = terms_[key];
    slot += c;
    if (slot == 0) terms_.erase(key);
  }
  return *this;
}

StepPolynomial& StepPolynomial::operator-=(const StepPolynomial& o) {
  for (const auto& [key, c] : o.terms_) {
    Rational& slot = terms_[key];
    slot -= c;
    if (slot == 0) terms_.erase(key);
  }
  return *this;
}

void StepPolynomial::scale(const Rational& v) {
  if (v == 0) {
    terms_.clear();
    return;
  }
  for (auto& [key, c] : terms_) c *= v;
}

bool StepPolynomial::is_constant() const {
  for (const auto& [key, c] : terms_)
    if (!key.empty()) return false;
  return true;
}

int StepPolynomial::degree() const {
  int d = 0;
  for (const auto& [key, c] : terms_) {
    int s = 0;
    for (const auto& [rate, n] : key) s += n;
    if (s > d) d = s;
  }
  return d;
}

Int StepPolynomial::period() const {
  Int p = 1;
  for (const auto& [key, c] : terms_)
    for (const auto& [rate, n] : key) p = lcm(p, rate.get_den());
  return p;
}

Rational StepPolynomial::evaluate(const Int& T) const {
  Rational total = 0;
  for (const auto& [key, c] : terms_) {
    Rational term = c;
    for (const auto& [rate, n] : key) {
      Rational v = rate * T;
      term *= pow_rat(v - Rational(rat_floor(v)), n);
      if (term == 0) break;
    }
    total += term;
  }
  return total;
}

std::string StepPolynomial::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream out;
  bool first = true;
  for (const auto& [key, c] : terms_) {
    Rational mag = c;
    if (first) {
      if (c < 0) {
        out << "-";
        mag = -c;
      }
      first = false;
    } else {
      out << (c < 0 ? " - " : " + ");
      if (c < 0) mag = -c;
    }
    out << rat_to_string(mag);
    for (const auto& [rate, n] : key) {
      out << "*{" << rat_to_string(rate) << "*T}";
      if (n > 1) out << "^" << n;
    }
  }
  return out.str();
}

StepPolynomial mul(const StepPolynomial& a, const StepPolynomial& b) {
  StepPolynomial out;
  for (const auto& [ka, ca] : a.terms())
    for (const auto& [kb, cb] : b.terms()) {
      std::vector<std::pair<Rational, int>> key = ka;
      key.insert(key.end(), kb.begin(), kb.end());
      out.add_term(key, Rational(ca * cb));
    }
  return out;
}

namespace {

/* Hand-rolled scanner for the "{r*T}" language; kept tolerant of spaces. */
struct StepParser {
  const std::string& s;
  size_t i = 0;

  explicit StepParser(const std::string& text) : s(text) {}

  void skip_ws() {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
  }
  bool eat(char c) {
    skip_ws();
    if (i < s.size() && s[i] == c) {
      ++i;
      return true;
    }
    return false;
  }
  void expect(char c) {
    if (!eat(c))
      throw parse_error(std::string("step polynomial: expected '") + c + "'");
  }

  Int integer() {
    skip_ws();
    size_t start = i;
    if (i < s.size() && (s[i] == '+' || s[i] == '-')) ++i;
    size_t digits = i;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
    if (i == digits) throw parse_error("step polynomial: expected an integer");
    return Int(s.substr(start, i - start));
  }

  Rational rational() {
    Int num = integer();
    if (eat('/')) {
      Int den = integer();
      if (den == 0) throw parse_error("step polynomial: zero denominator");
      return make_rat(num, den);
    }
    return Rational(num);
  }

  /* factor := '{' rational '*' 'T' '}' ['^' integer] */
  std::pair<Rational, int> factor() {
    expect('{');
    Rational rate = rational();
    expect('*');
    skip_ws();
    if (i >= s.size() || (s[i] != 'T' && s[i] != 't'))
      throw parse_error("step polynomial: expected T");
    ++i;
    expect('}');
    int n = 1;
    if (eat('^')) {
      Int e = integer();
      if (e < 0 || e > 64) throw parse_error("step polynomial: bad exponent");
      n = static_cast<int>(e.get_si());
    }
    return {rate, n};
  }

  /* term := (rational | factor) ('*' (rational | factor))* */
  void term(StepPolynomial& acc, bool negate) {
    Rational c(1);
    std::vector<std::pair<Rational, int>> key;
    bool any = false;
    for (;;) {
      skip_ws();
      if (i < s.size() && s[i] == '{') {
        key.push_back(factor());
      } else {
        c *= rational();
      }
      any = true;
      if (!eat('*')) break;
    }
    if (!any) throw parse_error("step polynomial: empty term");
    if (negate) c = -c;
    acc.add_term(key, c);
  }

  StepPolynomial parse() {
    StepPolynomial acc;
    skip_ws();
    if (i == s.size()) throw parse_error("step polynomial: empty input");
    bool neg = eat('-');
    if (!neg) eat('+');
    term(acc, neg);
    for (;;) {
      skip_ws();
      if (i == s.size()) break;
      if (eat('+'))
        term(acc, false);
      else if (eat('-'))
        term(acc, true);
      else
        throw parse_error("step polynomial: expected '+' or '-'");
    }
    return acc;
  }
};

}  // namespace

StepPolynomial parse_step_polynomial(const std::string& text) {
  StepParser p(text);
  return p.parse();
}

}  // namespace pk
