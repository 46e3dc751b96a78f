#ifndef PK_LP_HH
#define PK_LP_HH

#include <vector>

#include "pk/linalg.hh"

namespace pk {

/* min <c, x> subject to A x = b, with x_j >= 0 where nonneg[j] and x_j free
 * otherwise. Solved exactly over the rationals. */
struct ExactLp {
  Mat A;
  Vec b;
  Vec c;
  std::vector<bool> nonneg;
};

enum class LpStatus { optimal, infeasible, unbounded };

struct LpSolution {
  LpStatus status = LpStatus::infeasible;
  Vec x;           // one entry per ExactLp column when optimal
  Rational value;  // objective at x
};

/* Two-phase primal simplex with Bland's rule throughout; deterministic and
 * cycle-free. */
LpSolution solve_lp_exact(const ExactLp& lp);

}  // namespace pk

#endif
