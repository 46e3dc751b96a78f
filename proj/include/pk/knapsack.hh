#ifndef PK_KNAPSACK_HH
#define PK_KNAPSACK_HH

#include <map>
#include <string>
#include <vector>

#include "pk/linalg.hh"
#include "pk/stepfun.hh"

namespace pk {

/* Coefficients of  alpha_1 x_1 + ... + alpha_{N+1} x_{N+1} = t  with the
 * common divisor factored out: counting solutions of the raw list at g*t
 * equals counting the normalized list at t, and the raw count is 0 when
 * g does not divide t. */
struct KnapsackList {
  std::vector<Int> a;  // normalized, gcd 1
  Int g = 1;           // gcd of the raw list
};
KnapsackList make_knapsack(const std::vector<Int>& raw);

/* Greatest common divisors of the sublists of size > N-k, weighted so that
 * sum_{f : q | f} mobius(f) = 1 exactly when a primitive q-th root of unity
 * is a pole of order >= N+1-k of the counting generating function, and 0
 * otherwise. */
struct GcdPoset {
  std::vector<Int> values;  // ascending; always contains 1
  std::map<Int, long> mobius;
};
GcdPoset gcd_poset(const std::vector<Int>& a, int k);

/* Per-divisor lattice data: J lists the positions with f not dividing
 * alpha_i, <s, a_J> = 1 (mod f), and the columns of B span
 * { y in Z^J : <a_J, y> = 0 (mod f) } with |det B| = f. Everything is
 * empty for f = 1. */
struct BezoutLattice {
  std::vector<int> J;
  std::vector<Int> aJ;
  std::vector<Int> s;
  IMat B;  // row major; basis vectors are the columns
};
BezoutLattice bezout_and_lattice(const std::vector<Int>& a, const Int& f);

/* Coefficients of degree N-k..N of the degree-N counting quasi-polynomial;
 * the omitted lower-degree part is a quasi-polynomial of degree < N-k. */
struct TopKQuasiPolynomial {
  long N = 0;
  int k = 0;
  std::map<long, StepPolynomial> coeff;  // degree -> coefficient of t^degree
};

TopKQuasiPolynomial top_coefficients(const std::vector<Int>& a, int k,
                                     int jobs = 1);
/* sum coeff[d](t) * t^d over the stored degrees. */
Rational evaluate_topk(const TopKQuasiPolynomial& q, const Int& t);
Int topk_period(const TopKQuasiPolynomial& q);

/* Full quasi-polynomial split by residue class: result[rho][d] is the
 * coefficient of t^d on the coset t = rho (mod lcm(a)).
 * Refuses N > 6 or lcm(a) > 10^4. */
std::vector<std::vector<Rational>> coset_polynomials(const std::vector<Int>& a);

/* Largest sublists whose gcd is not 1; ell is their common size (0 when
 * every sublist has gcd 1). The coefficient of t^m is constant for m >= ell
 * and strictly periodic for m = ell-1; equivalently the first non-constant
 * coefficient sits N-(ell-1) places below the leading one. The divisor
 * poset over sublists of size >= ell is a fan: mu(f) = 1 for f != 1 and
 * mu(1) = 2 - |G|. */
struct FirstPeriodicReport {
  long ell = 0;
  std::vector<std::vector<int>> sublists;  // index lists into a, sorted
  std::vector<Int> fan_values;             // ascending; contains 1
  std::map<Int, long> fan_mobius;
};
/* Factors by trial division; entries above 10^9 are refused. */
FirstPeriodicReport first_periodic_degree(const std::vector<Int>& a);
/* Same, with caller-supplied factorizations a[i] = prod p^e. */
FirstPeriodicReport first_periodic_degree(
    const std::vector<Int>& a,
    const std::vector<std::vector<std::pair<Int, int>>>& factorizations);

/* Exact nonnegative-solution count by dynamic programming; t <= 10^6. */
Int denumerant_oracle(const std::vector<Int>& a, const Int& t);

}  // namespace pk

#endif
