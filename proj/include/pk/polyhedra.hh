#ifndef PK_POLYHEDRA_HH
#define PK_POLYHEDRA_HH

#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "pk/linalg.hh"

namespace pk {

/* Bounded full- or lower-dimensional polytope in H-form A x <= b.
 * Vertices are enumerated on demand (exhaustive basic solutions; desk
 * scale) and cached in lexicographic order. */
class Polytope {
 public:
  Polytope(Mat A, Vec b);

  int dim() const { return d_; }
  const Mat& A() const { return A_; }
  const Vec& b() const { return b_; }
  const std::vector<Vec>& vertices() const;
  bool full_dimensional() const;
  bool contains(const Vec& x) const;

 private:
  int d_;
  Mat A_;
  Vec b_;
  mutable std::optional<std::vector<Vec>> verts_;
  mutable std::optional<bool> fulldim_;
};

/* Throws domain_error when the system is empty or unbounded. */
std::vector<Vec> vertices_from_hrep(const Mat& A, const Vec& b);

/* H-rep file: "m d+1" header, then m rows "c0 c1 ... cd" meaning
 * c0 + c1 x1 + ... + cd xd >= 0. Rational entries are scaled per row. */
Polytope parse_hrep(const std::string& text);
Polytope box_polytope(const std::vector<std::pair<Rational, Rational>>& bounds);
/* Bounds (l_i, u_i) when every constraint involves one variable and all are
 * bounded both ways; nullopt otherwise. */
std::optional<std::vector<std::pair<Rational, Rational>>> as_box(const Polytope& P);

struct SimplicialCone {
  Vec apex;
  std::vector<IVec> rays;  // primitive generators, columns of the ray matrix
  int sign = 1;
  Int det;                 // determinant of the ray matrix in ambient coordinates
  /* open[i]: the facet spanned by the rays other than i is excluded
   * (half-open cones from the exact primal decomposition; empty = closed). */
  std::vector<bool> open;
};

SimplicialCone make_cone(Vec apex, std::vector<IVec> rays, int sign = 1);
Int cone_index(const SimplicialCone& C);

/* Barycentric ray coordinates of x relative to the apex; nullopt for a
 * singular ray matrix. */
std::optional<Vec> ray_coordinates(const SimplicialCone& C, const Vec& x);
bool cone_contains(const SimplicialCone& C, const Vec& x);  // honors open flags

/* Primitive extreme rays of the cone of feasible directions at vertex v. */
std::vector<IVec> tangent_cone(const Polytope& P, const Vec& v);

/* Extreme rays of {y : <y, r> <= 0 for all r}; empty list for the trivial
 * polar (rays positively spanning the space). */
std::vector<IVec> polar(const std::vector<IVec>& rays, int d);

/* Deterministic pulling triangulation into simplicial subcones that share
 * the lexicographically smallest ray. */
std::vector<SimplicialCone> triangulate_cone(const Vec& apex,
                                             const std::vector<IVec>& rays);

/* Pulling triangulation of a full-dimensional polytope; each simplex lists
 * d+1 vertices. */
std::vector<std::vector<Vec>> triangulate_polytope(const Polytope& P);

enum class BarvinokVariant {
  dual,            // recursion on the polar side; identity modulo cones with lines
  primal_halfopen  // direct recursion; half-open output, exact pointwise identity
};

/* Signed decomposition of C into cones unimodular with respect to the
 * lattice spanned by the columns of `lattice` (empty = standard lattice).
 * Every child replaces one ray; children are emitted largest |alpha_i|
 * first, lowest index on ties. */
std::vector<SimplicialCone> barvinok_decompose(
    const SimplicialCone& C, const IMat& lattice = {},
    BarvinokVariant variant = BarvinokVariant::dual);

/* First vector (1, M, M^2, ...) with nonzero pairing against every listed
 * vector; deterministic escalation over M. */
IVec find_regular_vector(int d, const std::vector<IVec>& must_not_vanish);

}  // namespace pk

#endif
