#ifndef PK_OPTIMIZE_HH
#define PK_OPTIMIZE_HH

#include <string>
#include <utility>
#include <vector>

#include "pk/polyhedra.hh"
#include "pk/polynomial.hh"

namespace pk {

/* q^(1/n) carried exactly; q >= 0, n >= 1. Comparisons cross-power
 * instead of rounding, so ordering statements are certificates. */
struct Radical {
  Rational q;
  long n = 1;
};

int radical_compare(const Radical& a, const Radical& b);  // -1 / 0 / +1

/* Largest multiple r of 10^-frac_digits with r^n <= q; exact, so
 * r^n <= q < (r + 10^-frac_digits)^n always holds. */
Rational radical_decimal(const Radical& r, int frac_digits);
std::string radical_to_string(const Radical& r, int frac_digits);

/* Norm-root bounds on max f over a domain. L_k/U_k are decimal
 * renderings (50 fractional digits) of the exact radicals; M is the
 * largest coordinate width of the domain, L the Lipschitz constant
 * used in U_k, and k0 the smallest k the upper bound is valid for.
 * For k >= k0: L_k <= max f <= U_k, L_k nondecreasing in k, U_k
 * nonincreasing. */
struct BoundsReport {
  long k = 0;
  Radical L_k_root;
  Radical U_k_root;
  Rational L_k;
  Rational U_k;
  Rational M;
  Rational L;
  Rational eps_prime;  // d/(d+k)
  long k0 = 1;
};

/* sum |c_m| * deg(m) * M^(deg(m)-1) over monomials of f: a gradient
 * bound on the box [-M,M]^d via the termwise triangle inequality.
 * Needs M >= |x_i| for every point of the intended domain. */
Rational lipschitz_constant(const SparsePolynomial& f, const Rational& M);

/* L_k = (int f^k / vol P)^(1/k),
 * U_k = (int f^k / vol P)^(1/(d+k)) (ML/e')^(d/(d+k)) (1-e')^(-k/(d+k))
 * with e' = d/(d+k). f must be nonnegative on P; vertices are sampled
 * and a negative value raises domain_error advising a constant shift.
 * jobs is forwarded to the integration backend. */
BoundsReport continuous_bounds(const SparsePolynomial& f, const Polytope& P,
                               long k, int jobs = 1);

/* Smallest k making U_k a (1+eps)-approximation of max f: ceiling of
 * the largest of the four closed-form terms (see the implementation);
 * U is any initial upper bound on max f, M/L as in BoundsReport. */
long choose_k(const Rational& eps, const Rational& U, const Rational& M,
              const Rational& L, int d);

/* sum over box cap Z^d of f(x)^k, each monomial summed coordinatewise
 * by Faulhaber's formula. box holds inclusive integer endpoints. */
Rational lattice_power_sum(const SparsePolynomial& f,
                           const std::vector<std::pair<Int, Int>>& box,
                           long k);

/* Discrete bounds (L_k, U_k) on max f over P cap Z^d:
 * L_k = (sum f^k / N)^(1/k), U_k = (sum f^k)^(1/k) with N the lattice
 * point count. P must be a box (domain_error otherwise); f must be
 * nonnegative on its lattice points. */
std::pair<Radical, Radical> discrete_bounds_box(const SparsePolynomial& f,
                                                const Polytope& P, long k);

}  // namespace pk

#endif
