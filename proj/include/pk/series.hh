#ifndef PK_SERIES_HH
#define PK_SERIES_HH

#include <climits>
#include <map>
#include <string>
#include <vector>

#include "pk/rational.hh"

namespace pk {

/* Multivariate power series in t_1..t_nvars, truncated at total degree
 * max_deg, optionally extended by one Laurent variable whose exponent may
 * be negative. Exponent keys have length nvars (+1 when laurent; the
 * Laurent exponent is last). Invariants: no zero coefficients are stored;
 * stored terms obey both the total-degree cap (Laurent exponent excluded)
 * and laurent_cap. */
class TruncatedSeries {
 public:
  TruncatedSeries() = default;
  TruncatedSeries(int nvars, int max_deg, bool laurent = false,
                  int laurent_cap = INT_MAX);

  int nvars() const { return nvars_; }
  bool laurent() const { return laurent_; }
  int max_deg() const { return max_deg_; }
  int laurent_cap() const { return laurent_cap_; }
  int key_len() const { return nvars_ + (laurent_ ? 1 : 0); }
  const std::map<std::vector<int>, Rational>& terms() const { return c_; }
  bool is_zero() const { return c_.empty(); }

  /* Out-of-truncation terms are silently dropped; zero sums are erased. */
  void add_term(const std::vector<int>& e, const Rational& v);
  Rational coeff(const std::vector<int>& e) const;

  TruncatedSeries& operator+=(const TruncatedSeries& o);
  TruncatedSeries& operator-=(const TruncatedSeries& o);
  void scale(const Rational& v);
  /* Shift every term's Laurent exponent by d. */
  void shift_laurent(int d);

  std::string to_string() const;

 private:
  int nvars_ = 0;
  int max_deg_ = 0;
  bool laurent_ = false;
  int laurent_cap_ = INT_MAX;
  std::map<std::vector<int>, Rational> c_;
};

TruncatedSeries mul(const TruncatedSeries& a, const TruncatedSeries& b);

/* sum_i coeffs[i] * t_i as a series of the given shape. */
TruncatedSeries linear_series(const std::vector<Rational>& coeffs, int max_deg,
                              bool laurent = false, int laurent_cap = INT_MAX);

/* exp(s) = sum s^k / k!; s must have no constant term and no negative
 * Laurent exponents so the sum is finite under the caps. */
TruncatedSeries exp_series(const TruncatedSeries& s);

/* Convenience: exp of a linear form in the polynomial variables. */
TruncatedSeries exp_linear(const std::vector<Rational>& coeffs, int max_deg,
                           bool laurent = false, int laurent_cap = INT_MAX);

/* Univariate Laurent helpers (nvars = 0, laurent = true). */
TruncatedSeries laurent_monomial(const Rational& v, int e, int cap);
/* (c0 + c1*eps)^n expanded to eps^cap, n >= 0. */
TruncatedSeries affine_power(const Rational& c0, const Rational& c1, long n,
                             int cap);
/* 1/(c0 + c1*eps)^m to eps^cap; c0 != 0, m >= 1. */
TruncatedSeries affine_inverse_power(const Rational& c0, const Rational& c1,
                                     long m, int cap);

/* Coefficient of (Laurent variable)^order as a series in the remaining
 * variables. */
TruncatedSeries laurent_coeff(const TruncatedSeries& s, int order);
/* Same, for pure Laurent series (nvars = 0): scalar result. */
Rational residue_coeff(const TruncatedSeries& s, int order);

}  // namespace pk

#endif
