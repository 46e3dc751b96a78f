#include "pk/series.hh"

#include <numeric>
#include <sstream>

namespace pk {

TruncatedSeries::TruncatedSeries(int nvars, int max_deg, bool laurent,
                                 int laurent_cap)
    : nvars_(nvars), max_deg_(max_deg), laurent_(laurent),
      laurent_cap_(laurent_cap) {
  if (nvars < 0 || max_deg < 0) throw domain_error("bad series shape");
}

static int poly_degree(const std::vector<int>& e, int nvars) {
  int d = 0;
  for (int i = 0; i < nvars; ++i) {
    if (e[i] < 0) throw domain_error("negative exponent on a polynomial variable");
    d += e[i];
  }
  return d;
}

void TruncatedSeries::add_term(const std::vector<int>& e, const Rational& v) {
  if (static_cast<int>(e.size()) != key_len())
    throw domain_error("series exponent arity mismatch");
  if (v == 0) return;
  if (poly_degree(e, nvars_) > max_deg_) return;
  if (laurent_ && e.back() > laurent_cap_) return;
  auto it = c_.find(e);
  if (it == c_.end()) {
    c_.emplace(e, v);
  } else {
    it->second += v;
    if (it->second == 0) c_.erase(it);
  }
}

Rational TruncatedSeries::coeff(const std::vector<int>& e) const {
  auto it = c_.find(e);
  return it == c_.end() ? Rational(0) : it->second;
}

TruncatedSeries& TruncatedSeries::operator+=(const TruncatedSeries& o) {
  if (o.nvars_ != nvars_ || o.laurent_ != laurent_)
    throw domain_error("series shape mismatch in addition");
  for (const auto& [e, v] : o.c_) add_term(e, v);
  return *this;
}

TruncatedSeries& TruncatedSeries::operator-=(const TruncatedSeries& o) {
  if (o.nvars_ != nvars_ || o.laurent_ != laurent_)
    throw domain_error("series shape mismatch in subtraction");
  for (const auto& [e, v] : o.c_) add_term(e, -v);
  return *this;
}

void TruncatedSeries::scale(const Rational& v) {
  if (v == 0) {
    c_.clear();
    return;
  }
  for (auto& [e, coeff] : c_) coeff *= v;
}

void TruncatedSeries::shift_laurent(int d) {
  if (!laurent_) throw domain_error("shift_laurent on a series without Laurent variable");
  std::map<std::vector<int>, Rational> moved;
  for (auto& [e, v] : c_) {
    auto e2 = e;
    e2.back() += d;
    if (e2.back() <= laurent_cap_) moved.emplace(std::move(e2), v);
  }
  c_ = std::move(moved);
}

std::string TruncatedSeries::to_string() const {
  if (c_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [e, v] : c_) {
    if (!first) os << " + ";
    first = false;
    os << rat_to_string(v);
    for (int i = 0; i < nvars_; ++i)
      if (e[i] != 0) os << "*t" << (i + 1) << "^" << e[i];
    if (laurent_ && e.back() != 0) os << "*w^" << e.back();
  }
  return os.str();
}

TruncatedSeries mul(const TruncatedSeries& a, const TruncatedSeries& b) {
  if (a.nvars() != b.nvars() || a.laurent() != b.laurent())
    throw domain_error("series shape mismatch in multiplication");
  TruncatedSeries r(a.nvars(), std::min(a.max_deg(), b.max_deg()), a.laurent(),
                    std::min(a.laurent_cap(), b.laurent_cap()));
  const int n = r.key_len();
  std::vector<int> e(n);
  for (const auto& [ea, va] : a.terms())
    for (const auto& [eb, vb] : b.terms()) {
      for (int i = 0; i < n; ++i) e[i] = ea[i] + eb[i];
      r.add_term(e, va * vb);
    }
  return r;
}

TruncatedSeries linear_series(const std::vector<Rational>& coeffs, int max_deg,
                              bool laurent, int laurent_cap) {
  TruncatedSeries s(static_cast<int>(coeffs.size()), max_deg, laurent, laurent_cap);
  std::vector<int> e(s.key_len(), 0);
  for (size_t i = 0; i < coeffs.size(); ++i) {
    e[i] = 1;
    s.add_term(e, coeffs[i]);
    e[i] = 0;
  }
  return s;
}

TruncatedSeries exp_series(const TruncatedSeries& s) {
  for (const auto& [e, v] : s.terms()) {
    (void)v;
    bool all_zero = true;
    for (int x : e)
      if (x != 0) all_zero = false;
    if (all_zero) throw domain_error("exp_series needs zero constant term");
    if (s.laurent() && e.back() < 0)
      throw domain_error("exp_series needs nonnegative Laurent exponents");
  }
  if (s.laurent() && !s.terms().empty() && s.laurent_cap() == INT_MAX) {
    for (const auto& [e, v] : s.terms()) {
      (void)v;
      if (e.back() > 0) throw domain_error("exp_series needs a Laurent cap");
    }
  }
  TruncatedSeries r(s.nvars(), s.max_deg(), s.laurent(), s.laurent_cap());
  r.add_term(std::vector<int>(r.key_len(), 0), 1);
  TruncatedSeries term = r;
  long kmax = s.max_deg() + (s.laurent() && s.laurent_cap() != INT_MAX
                                 ? std::max(0, s.laurent_cap())
                                 : 0);
  for (long k = 1; k <= kmax; ++k) {
    term = mul(term, s);
    term.scale(make_rat(Int(1), Int(k)));
    if (term.is_zero()) break;
    r += term;
  }
  return r;
}

TruncatedSeries exp_linear(const std::vector<Rational>& coeffs, int max_deg,
                           bool laurent, int laurent_cap) {
  return exp_series(linear_series(coeffs, max_deg, laurent, laurent_cap));
}

TruncatedSeries laurent_monomial(const Rational& v, int e, int cap) {
  TruncatedSeries s(0, 0, true, cap);
  s.add_term({e}, v);
  return s;
}

TruncatedSeries affine_power(const Rational& c0, const Rational& c1, long n,
                             int cap) {
  if (n < 0) throw domain_error("affine_power needs n >= 0");
  TruncatedSeries s(0, 0, true, cap);
  long top = std::min<long>(n, cap < 0 ? -1 : cap);
  for (long j = 0; j <= top; ++j) {
    Rational c = Rational(binomial(Int(n), j)) * pow_rat(c0, n - j) * pow_rat(c1, j);
    s.add_term({static_cast<int>(j)}, c);
  }
  return s;
}

TruncatedSeries affine_inverse_power(const Rational& c0, const Rational& c1,
                                     long m, int cap) {
  if (c0 == 0) throw domain_error("affine_inverse_power needs c0 != 0");
  if (m < 1) throw domain_error("affine_inverse_power needs m >= 1");
  /* (c0 + c1 e)^-m = c0^-m sum_j C(m+j-1, j) (-c1/c0)^j e^j */
  TruncatedSeries s(0, 0, true, cap);
  Rational ratio = -c1 / c0;
  Rational acc = pow_rat(c0, -m);
  for (long j = 0; j <= cap; ++j) {
    s.add_term({static_cast<int>(j)}, acc * Rational(binomial(Int(m + j - 1), j)));
    acc *= ratio;
    if (ratio == 0) break;
  }
  return s;
}

TruncatedSeries laurent_coeff(const TruncatedSeries& s, int order) {
  if (!s.laurent()) throw domain_error("laurent_coeff on a series without Laurent variable");
  TruncatedSeries r(s.nvars(), s.max_deg(), false);
  for (const auto& [e, v] : s.terms()) {
    if (e.back() != order) continue;
    std::vector<int> e2(e.begin(), e.end() - 1);
    r.add_term(e2, v);
  }
  return r;
}

Rational residue_coeff(const TruncatedSeries& s, int order) {
  if (s.nvars() != 0)
    throw domain_error("residue_coeff needs a pure Laurent series");
  return s.coeff({order});
}

}  // namespace pk
