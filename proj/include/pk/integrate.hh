#ifndef PK_INTEGRATE_HH
#define PK_INTEGRATE_HH

#include <map>
#include <vector>

#include "pk/polyhedra.hh"
#include "pk/polynomial.hh"

namespace pk {

enum class IntegrationMethod { triangulation, cone_decomposition };

struct IntegrationResult {
  Rational value;
  IntegrationMethod method = IntegrationMethod::triangulation;
  long term_count = 0;  // summands accumulated for the value
};

/* Which member represents a group of equal vertex pairings in the simplex
 * formula with repeated poles; the integral is independent of the choice. */
enum class PoleChoice { first, last };

/* Integral of <ell, x>^power over the simplex with the given d+1 affinely
 * independent vertices. */
Rational integrate_plf_simplex(const std::vector<Vec>& vertices, const Vec& ell,
                               long power, PoleChoice pole = PoleChoice::first);

/* The per-group summands behind integrate_plf_simplex, before the common
 * volume and factorial scaling (diagnostic). */
std::vector<Rational> plf_simplex_pole_terms(const std::vector<Vec>& vertices,
                                             const Vec& ell, long power,
                                             PoleChoice pole = PoleChoice::first);

/* One tangent-cone summand of the vertex decomposition of the integral of
 * <ell, x>^power. perturb must pair nonzero with every ray on which ell
 * vanishes; facet openness is irrelevant under the Lebesgue measure. */
Rational integrate_plf_cone(const SimplicialCone& cone, const Vec& ell,
                            long power, const IVec& perturb);

/* jobs > 1 evaluates independent summands concurrently; the reduction
 * order stays fixed, so the value is identical to jobs = 1. */
IntegrationResult integrate_plf_polytope(const Polytope& P, const Vec& ell,
                                         long power, IntegrationMethod method,
                                         int jobs = 1);

Rational integrate_polynomial(const Polytope& P, const SparsePolynomial& f,
                              IntegrationMethod method, int jobs = 1);

/* One factor <ell, x> + r of an affine product. */
struct AffineFactor {
  Vec ell;
  Rational r;
};

/* table[p] = integral of prod_i (<ell_i, x> + r_i)^{p_i} / p_i!, with one
 * entry for every exponent vector of total degree at most max_deg. */
using AffineTable = std::map<std::vector<int>, Rational>;

AffineTable integrate_affine_products_simplex(
    const std::vector<Vec>& vertices, const std::vector<AffineFactor>& factors,
    int max_deg);

AffineTable integrate_affine_products_cone(
    const Polytope& P, const std::vector<AffineFactor>& factors, int max_deg);

}  // namespace pk

#endif
