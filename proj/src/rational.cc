#include "pk/rational.hh"

#include <cctype>

namespace pk {

Rational make_rat(const Int& num, const Int& den) {
  if (den == 0) throw domain_error("rational with zero denominator");
  Rational q(num, den);
  q.canonicalize();
  return q;
}

Rational rat_from_string(const std::string& s) {
  std::string t;
  for (char ch : s)
    if (!std::isspace(static_cast<unsigned char>(ch))) t.push_back(ch);
  if (t.empty()) throw parse_error("empty rational literal");
  auto ok_int = [](const std::string& u) {
    if (u.empty()) return false;
    size_t i = (u[0] == '-' || u[0] == '+') ? 1 : 0;
    if (i == u.size()) return false;
    for (; i < u.size(); ++i)
      if (!std::isdigit(static_cast<unsigned char>(u[i]))) return false;
    return true;
  };
  auto slash = t.find('/');
  if (slash == std::string::npos) {
    if (!ok_int(t)) throw parse_error("bad rational literal: " + s);
    return Rational(Int(t));
  }
  std::string num = t.substr(0, slash), den = t.substr(slash + 1);
  if (!ok_int(num) || !ok_int(den)) throw parse_error("bad rational literal: " + s);
  Int d(den);
  if (d == 0) throw parse_error("zero denominator in literal: " + s);
  return make_rat(Int(num), d);
}

std::string rat_to_string(const Rational& q, bool always_den) {
  if (!always_den && q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

std::string rat_to_decimal(const Rational& q, int frac_digits) {
  Int num = q.get_num(), den = q.get_den();
  bool neg = num < 0;
  if (neg) num = -num;
  Int scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(frac_digits));
  Int scaled = num * scale / den;  // truncation toward zero
  Int ip = scaled / scale, fp = scaled % scale;
  std::string out = (neg ? "-" : "") + ip.get_str();
  if (frac_digits > 0) {
    std::string frac = fp.get_str();
    frac.insert(frac.begin(), static_cast<size_t>(frac_digits) - frac.size(), '0');
    out += "." + frac;
  }
  return out;
}

Int factorial(long n) {
  if (n < 0) throw domain_error("factorial of negative argument");
  Int r;
  mpz_fac_ui(r.get_mpz_t(), static_cast<unsigned long>(n));
  return r;
}

Int binomial(const Int& n, long k) {
  if (k < 0) return 0;
  Int r;
  mpz_bin_ui(r.get_mpz_t(), n.get_mpz_t(), static_cast<unsigned long>(k));
  return r;
}

Rational pow_rat(const Rational& base, long e) {
  if (e == 0) return Rational(1);
  if (base == 0) {
    if (e < 0) throw domain_error("negative power of zero");
    return Rational(0);
  }
  bool inv = e < 0;
  unsigned long ue = static_cast<unsigned long>(inv ? -e : e);
  Int n, d;
  mpz_pow_ui(n.get_mpz_t(), base.get_num().get_mpz_t(), ue);
  mpz_pow_ui(d.get_mpz_t(), base.get_den().get_mpz_t(), ue);
  return inv ? make_rat(d, n) : make_rat(n, d);
}

Int pow_int(const Int& base, unsigned long e) {
  Int r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
  return r;
}

Int rat_floor(const Rational& q) {
  Int r;
  mpz_fdiv_q(r.get_mpz_t(), q.get_num().get_mpz_t(), q.get_den().get_mpz_t());
  return r;
}

Rational rat_frac(const Rational& q) { return q - Rational(rat_floor(q)); }

std::vector<Int> rationals_to_primitive(const std::vector<Rational>& v) {
  Int lcm_den(1);
  for (const auto& q : v) {
    Int l;
    mpz_lcm(l.get_mpz_t(), lcm_den.get_mpz_t(), q.get_den().get_mpz_t());
    lcm_den = l;
  }
  std::vector<Int> w(v.size());
  Int g(0);
  for (size_t i = 0; i < v.size(); ++i) {
    w[i] = Int(v[i].get_num() * (lcm_den / v[i].get_den()));
    Int ng;
    mpz_gcd(ng.get_mpz_t(), g.get_mpz_t(), w[i].get_mpz_t());
    g = ng;
  }
  if (g == 0) return w;  // zero vector stays zero
  for (auto& x : w) x /= g;
  return w;
}

}  // namespace pk
