#ifndef PK_LINALG_HH
#define PK_LINALG_HH

#include <optional>
#include <vector>

#include "pk/rational.hh"

namespace pk {

using Vec = std::vector<Rational>;
using Mat = std::vector<std::vector<Rational>>;  // row major
using IVec = std::vector<Int>;
using IMat = std::vector<std::vector<Int>>;      // row major

Rational dot(const Vec& a, const Vec& b);
Vec matvec(const Mat& A, const Vec& x);
Mat mat_from_columns(const std::vector<Vec>& cols);

Rational rat_det(Mat A);
int rat_rank(Mat A);
std::optional<Vec> rat_solve(Mat A, Vec b);          // square systems
std::optional<Mat> rat_inverse(const Mat& A);
/* Basis of the right nullspace. */
std::vector<Vec> rat_nullspace(const Mat& A);

Mat to_rational(const IMat& A);
Vec to_rational(const IVec& v);
Int int_det(const IMat& A);

/* Row-operation Hermite form: U*A = H with U unimodular, pivots positive,
 * entries above a pivot reduced into [0, pivot). */
struct HnfResult {
  IMat H;
  IMat U;
};
HnfResult hnf(const IMat& A);

/* LLL with delta = 3/4 over exact rationals; basis vectors are the columns
 * of B. Returns the reduced basis columns. */
std::vector<IVec> lll_reduce(std::vector<IVec> basis);
/* Shortest reduced basis vector (2-norm, lexicographic tie-break). */
IVec lll_short_vector(const std::vector<IVec>& basis);

}  // namespace pk

#endif
