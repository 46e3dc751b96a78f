#ifndef PK_HANDELMAN_HH
#define PK_HANDELMAN_HH

#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "pk/lp.hh"
#include "pk/polyhedra.hh"
#include "pk/polynomial.hh"

namespace pk {

/* f + shift = sum_alpha terms[alpha] * prod_i g_i^{alpha_i} over the facet
 * functions g_i = b_i - <A_i, x>; every stored coefficient is positive. */
struct HandelmanDecomposition {
  int degree = 0;
  std::map<std::vector<int>, Rational> terms;
  Rational shift;
  Mat facet_A;
  Vec facet_b;
};

/* Monomial-matching equalities of f + s = sum c_alpha g^alpha for |alpha|
 * <= t: one row per monomial of degree <= t (constant row first, carrying
 * the -s entry), one nonnegative column per alpha including alpha = 0, and
 * the free shift column last; objective s + sum c_alpha. */
ExactLp build_lp(const SparsePolynomial& f, const Polytope& P, int t);

/* Exponent vectors |alpha| <= t over n slots, in the column order used by
 * build_lp. */
std::vector<std::vector<int>> handelman_alphas(int n, int t);

/* LP infeasibility at this degree throws; callers escalate t themselves.
 * force_shift_zero drops the shift column (decomposes f itself). */
HandelmanDecomposition handelman_decompose(const SparsePolynomial& f,
                                           const Polytope& P, int t,
                                           bool force_shift_zero = false);

/* sum c_alpha g^alpha expanded back into a polynomial (must equal f + shift). */
SparsePolynomial expand_decomposition(const HandelmanDecomposition& D);

/* Least lambda with lambda - f a degree-t nonnegative combination; nullopt
 * when no order-t certificate exists. Never below max_P f. */
std::optional<Rational> handelman_bound(const SparsePolynomial& f,
                                        const Polytope& P, int t);

/* (shift s, integral of (f + s)^k over P), with the decomposition degree
 * escalated from deg f up to degree_cap (default deg f + 4) until the LP is
 * feasible. All powers are integrated from one shared affine-product table
 * since every expanded term is a product of the same facet functions. */
std::pair<Rational, Rational> integrate_via_handelman(const SparsePolynomial& f,
                                                      const Polytope& P, long k,
                                                      int degree_cap = -1);

}  // namespace pk

#endif
