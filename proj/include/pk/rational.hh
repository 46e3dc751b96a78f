#ifndef PK_RATIONAL_HH
#define PK_RATIONAL_HH

#include <gmpxx.h>

#include <string>
#include <vector>

#include "pk/errors.hh"

namespace pk {

using Int = mpz_class;
/* Canonical rational: gcd(num, den) = 1, den > 0. mpq_class keeps this
 * form under arithmetic; construction goes through make_rat which
 * canonicalizes explicitly. */
using Rational = mpq_class;

Rational make_rat(const Int& num, const Int& den);
inline Rational make_rat(long num, long den) { return make_rat(Int(num), Int(den)); }

/* Accepts "n" or "n/m", optional leading minus. */
Rational rat_from_string(const std::string& s);

/* always_den forces the "p/q" shape even for integers ("6/1"). */
std::string rat_to_string(const Rational& q, bool always_den = false);

/* Truncated decimal expansion with the given number of fractional digits. */
std::string rat_to_decimal(const Rational& q, int frac_digits);

Int factorial(long n);
Int binomial(const Int& n, long k);

Rational pow_rat(const Rational& base, long e);  // e < 0 needs base != 0
Int pow_int(const Int& base, unsigned long e);

Int rat_floor(const Rational& q);
/* q - floor(q), in [0, 1). */
Rational rat_frac(const Rational& q);

inline int rat_sign(const Rational& q) { return sgn(q); }

std::vector<Int> rationals_to_primitive(const std::vector<Rational>& v);

}  // namespace pk

#endif
