#ifndef PK_BERNOULLI_HH
#define PK_BERNOULLI_HH

#include "pk/series.hh"

namespace pk {

/* B_0 = 1, B_1 = -1/2, B_2 = 1/6, ...; cached. */
Rational bernoulli(long k);

/* <c,t>/(1 - e^<c,t>) = -sum_{k<=M} B_k <c,t>^k / k!; c must be nonzero. */
TruncatedSeries bernoulli_factor_series(const std::vector<Rational>& c, int M);

/* F(n,p) = sum_{j=1..n} j^p as a polynomial evaluated at rational n
 * (valid at negative arguments too); F(1,p) = 1, F(0,p) = 0. */
Rational faulhaber(const Rational& n, long p);
/* Coefficient vector of F(n,p) in n: index j holds the coefficient of n^j. */
std::vector<Rational> faulhaber_coeffs(long p);

}  // namespace pk

#endif
