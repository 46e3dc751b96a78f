#ifndef PK_STEPFUN_HH
#define PK_STEPFUN_HH

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "pk/rational.hh"

namespace pk {

/* Finite sum  sum_l c_l * prod_j {r_{l,j} T}^{n_{l,j}}  with {x} = x - floor(x),
 * evaluated at integer T. Each factor's rate is stored reduced mod 1 (valid
 * on the integers), factors with equal rate are merged, and a rate of 0
 * annihilates its term. The stored form is canonical only up to these
 * rewrites; equality of the underlying function is decided by evaluation
 * over a full period, never syntactically. */
class StepPolynomial {
 public:
  /* (rate, exponent) pairs, sorted by rate, exponents >= 1. */
  using Key = std::vector<std::pair<Rational, int>>;

  StepPolynomial() = default;
  explicit StepPolynomial(const Rational& c);

  /* {r T} as a one-term polynomial (zero when r is an integer). */
  static StepPolynomial fractional_part(const Rational& r);

  /* Adds c * prod {r_j T}^{n_j}; the key may be unsorted and unreduced. */
  void add_term(const std::vector<std::pair<Rational, int>>& factors,
                const Rational& c);

  StepPolynomial& operator+=(const StepPolynomial& o);
  StepPolynomial& operator-=(const StepPolynomial& o);
  void scale(const Rational& v);

  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  /* Largest exponent sum over terms; 0 for constants and zero. */
  int degree() const;
  /* lcm of the rate denominators; evaluation at T and T + period() agree. */
  Int period() const;

  Rational evaluate(const Int& T) const;

  /* "c1 + c2*{p/q*T}^n - ..." with rates printed in [0,1); "0" when zero. */
  std::string to_string() const;
  const std::map<Key, Rational>& terms() const { return terms_; }

 private:
  std::map<Key, Rational> terms_;
};

StepPolynomial mul(const StepPolynomial& a, const StepPolynomial& b);

/* Inverse of to_string; also accepts unreduced rates such as {-1/3*T}.
 * Throws parse_error on malformed input. */
StepPolynomial parse_step_polynomial(const std::string& text);

}  // namespace pk

#endif
