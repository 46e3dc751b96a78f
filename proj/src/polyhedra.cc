#include "pk/polyhedra.hh"

#include <algorithm>
#include <set>
#include <sstream>

namespace pk {

namespace {

/* Advances a strictly increasing index combination; k = idx.size() stays
 * fixed. Starting from {0..k-1}, visits all k-subsets of {0..n-1}. */
bool next_combination(std::vector<int>& idx, int n) {
  int k = static_cast<int>(idx.size());
  for (int i = k - 1; i >= 0; --i) {
    if (idx[i] < n - k + i) {
      ++idx[i];
      for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
      return true;
    }
  }
  return false;
}

Int binom_guard(int n, int k) { return binomial(Int(n), k); }

IVec primitive_ivec(IVec v) {
  Int g(0);
  for (const auto& x : v) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
  if (g == 0) throw domain_error("zero vector has no primitive representative");
  for (auto& x : v) x /= g;
  return v;
}

Int ivec_dot(const IVec& a, const IVec& b) {
  Int s(0);
  for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

IMat columns_to_imat(const std::vector<IVec>& cols) {
  size_t d = cols.empty() ? 0 : cols[0].size();
  IMat M(d, IVec(cols.size()));
  for (size_t j = 0; j < cols.size(); ++j)
    for (size_t i = 0; i < d; ++i) M[i][j] = cols[j][i];
  return M;
}

std::string vec_to_text(const Vec& v) {
  std::string s = "(";
  for (size_t i = 0; i < v.size(); ++i) {
    if (i) s += ", ";
    s += rat_to_string(v[i]);
  }
  return s + ")";
}

}  // namespace

Polytope::Polytope(Mat A, Vec b) : A_(std::move(A)), b_(std::move(b)) {
  if (A_.empty()) throw domain_error("polytope needs at least one constraint");
  d_ = static_cast<int>(A_[0].size());
  if (d_ == 0) throw domain_error("polytope needs at least one variable");
  for (const auto& row : A_)
    if (static_cast<int>(row.size()) != d_)
      throw domain_error("ragged constraint matrix");
  if (b_.size() != A_.size())
    throw domain_error("constraint sides do not match the matrix");
}

const std::vector<Vec>& Polytope::vertices() const {
  if (!verts_) verts_ = vertices_from_hrep(A_, b_);
  return *verts_;
}

bool Polytope::full_dimensional() const {
  if (!fulldim_) {
    const auto& vs = vertices();
    Mat diff;
    for (size_t i = 1; i < vs.size(); ++i) {
      Vec row(d_);
      for (int j = 0; j < d_; ++j) row[j] = vs[i][j] - vs[0][j];
      diff.push_back(std::move(row));
    }
    fulldim_ = (rat_rank(diff) == d_);
  }
  return *fulldim_;
}

bool Polytope::contains(const Vec& x) const {
  for (size_t i = 0; i < A_.size(); ++i)
    if (dot(A_[i], x) > b_[i]) return false;
  return true;
}

std::vector<Vec> vertices_from_hrep(const Mat& A, const Vec& b) {
  int m = static_cast<int>(A.size());
  if (m == 0) throw domain_error("vertex enumeration needs constraints");
  int d = static_cast<int>(A[0].size());
  if (d == 0) throw domain_error("vertex enumeration needs variables");
  if (b.size() != A.size()) throw domain_error("constraint sides mismatch");
  if (d > 8 || m > 32 || binom_guard(m, d) > 200000)
    throw resource_error("vertex enumeration is exhaustive; system too large");
  if (rat_rank(A) < d)
    throw domain_error(
        "constraint matrix is rank deficient: feasible set is empty or has a "
        "lineality direction");

  std::set<Vec> vs;
  std::vector<int> idx(d);
  for (int i = 0; i < d; ++i) idx[i] = i;
  do {
    Mat As(d);
    Vec bs(d);
    for (int i = 0; i < d; ++i) {
      As[i] = A[idx[i]];
      bs[i] = b[idx[i]];
    }
    auto x = rat_solve(As, bs);
    if (!x) continue;
    bool feasible = true;
    for (int r = 0; r < m && feasible; ++r)
      if (dot(A[r], *x) > b[r]) feasible = false;
    if (feasible) vs.insert(*x);
  } while (next_combination(idx, m));

  if (vs.empty())
    throw domain_error("empty feasible set: no basic point satisfies all constraints");

  /* Pointed and nonempty; any recession direction sits on d-1 independent
   * tight constraints, so scanning those subsets is exhaustive. */
  auto check_direction = [&](const Vec& u) {
    for (int r = 0; r < m; ++r)
      if (dot(A[r], u) > 0) return;
    throw domain_error("unbounded direction " +
                       vec_to_text(to_rational(rationals_to_primitive(u))));
  };
  if (d == 1) {
    check_direction({Rational(1)});
    check_direction({Rational(-1)});
  } else {
    std::vector<int> ridx(d - 1);
    for (int i = 0; i < d - 1; ++i) ridx[i] = i;
    do {
      Mat As(d - 1);
      for (int i = 0; i < d - 1; ++i) As[i] = A[ridx[i]];
      auto ns = rat_nullspace(As);
      if (ns.size() != 1) continue;
      check_direction(ns[0]);
      Vec neg = ns[0];
      for (auto& x : neg) x = -x;
      check_direction(neg);
    } while (next_combination(ridx, m));
  }
  return {vs.begin(), vs.end()};
}

Polytope parse_hrep(const std::string& text) {
  std::istringstream is(text);
  auto next_token = [&]() -> std::string {
    std::string t;
    if (!(is >> t)) throw parse_error("truncated H-representation");
    return t;
  };
  auto parse_count = [&](const std::string& what) {
    Rational q = rat_from_string(next_token());
    if (q.get_den() != 1 || q < 1 || q > 1000)
      throw parse_error("bad " + what + " in H-representation header");
    return static_cast<int>(q.get_num().get_si());
  };
  int m = parse_count("row count");
  int cols = parse_count("column count");
  if (cols < 2) throw parse_error("H-representation needs at least one variable");
  int d = cols - 1;

  Mat A(m, Vec(d));
  Vec b(m);
  for (int r = 0; r < m; ++r) {
    /* Row c0 c1 .. cd encodes c0 + c.x >= 0; scale away denominators. */
    Vec row(cols);
    Int scale(1);
    for (int j = 0; j < cols; ++j) {
      row[j] = rat_from_string(next_token());
      mpz_lcm(scale.get_mpz_t(), scale.get_mpz_t(),
              row[j].get_den().get_mpz_t());
    }
    for (int j = 0; j < cols; ++j) row[j] *= Rational(scale);
    b[r] = row[0];
    for (int j = 0; j < d; ++j) A[r][j] = -row[j + 1];
  }
  std::string extra;
  if (is >> extra) throw parse_error("trailing input after H-representation");
  return Polytope(std::move(A), std::move(b));
}

Polytope box_polytope(const std::vector<std::pair<Rational, Rational>>& bounds) {
  int d = static_cast<int>(bounds.size());
  if (d == 0) throw domain_error("box needs at least one coordinate");
  Mat A;
  Vec b;
  for (int i = 0; i < d; ++i) {
    if (bounds[i].first > bounds[i].second)
      throw domain_error("box has an empty coordinate range");
    Vec lo(d, Rational(0)), hi(d, Rational(0));
    hi[i] = 1;
    lo[i] = -1;
    A.push_back(hi);
    b.push_back(bounds[i].second);
    A.push_back(lo);
    b.push_back(-bounds[i].first);
  }
  return Polytope(std::move(A), std::move(b));
}

std::optional<std::vector<std::pair<Rational, Rational>>> as_box(const Polytope& P) {
  int d = P.dim();
  std::vector<std::optional<Rational>> lo(d), hi(d);
  for (size_t r = 0; r < P.A().size(); ++r) {
    int nz = -1;
    for (int j = 0; j < d; ++j) {
      if (P.A()[r][j] == 0) continue;
      if (nz >= 0) return std::nullopt;
      nz = j;
    }
    if (nz < 0) {
      if (P.b()[r] < 0) return std::nullopt;
      continue;
    }
    Rational bound = P.b()[r] / P.A()[r][nz];
    if (P.A()[r][nz] > 0) {
      if (!hi[nz] || bound < *hi[nz]) hi[nz] = bound;
    } else {
      if (!lo[nz] || bound > *lo[nz]) lo[nz] = bound;
    }
  }
  std::vector<std::pair<Rational, Rational>> out(d);
  for (int j = 0; j < d; ++j) {
    if (!lo[j] || !hi[j] || *lo[j] > *hi[j]) return std::nullopt;
    out[j] = {*lo[j], *hi[j]};
  }
  return out;
}

SimplicialCone make_cone(Vec apex, std::vector<IVec> rays, int sign) {
  size_t d = apex.size();
  if (rays.size() != d)
    throw domain_error("simplicial cone needs exactly dim rays");
  for (auto& r : rays) {
    if (r.size() != d) throw domain_error("ray arity mismatch");
    r = primitive_ivec(std::move(r));
  }
  SimplicialCone C;
  C.det = int_det(columns_to_imat(rays));
  if (C.det == 0) throw domain_error("rays of a simplicial cone must be independent");
  C.apex = std::move(apex);
  C.rays = std::move(rays);
  C.sign = sign;
  return C;
}

Int cone_index(const SimplicialCone& C) { return abs(C.det); }

std::optional<Vec> ray_coordinates(const SimplicialCone& C, const Vec& x) {
  size_t d = C.apex.size();
  if (x.size() != d) throw domain_error("point arity mismatch");
  Mat R = to_rational(columns_to_imat(C.rays));
  Vec rhs(d);
  for (size_t i = 0; i < d; ++i) rhs[i] = x[i] - C.apex[i];
  return rat_solve(std::move(R), std::move(rhs));
}

bool cone_contains(const SimplicialCone& C, const Vec& x) {
  auto lam = ray_coordinates(C, x);
  if (!lam) return false;
  for (size_t i = 0; i < lam->size(); ++i) {
    if ((*lam)[i] < 0) return false;
    if ((*lam)[i] == 0 && i < C.open.size() && C.open[i]) return false;
  }
  return true;
}

std::vector<IVec> tangent_cone(const Polytope& P, const Vec& v) {
  int d = P.dim();
  std::vector<int> tight;
  for (size_t r = 0; r < P.A().size(); ++r) {
    Rational lhs = dot(P.A()[r], v);
    if (lhs > P.b()[r]) throw domain_error("tangent cone point is infeasible");
    if (lhs == P.b()[r]) tight.push_back(static_cast<int>(r));
  }
  Mat T;
  for (int r : tight) T.push_back(P.A()[r]);
  if (rat_rank(T) < d)
    throw domain_error("tangent cone is only defined at a vertex");

  std::set<IVec> rays;
  auto try_direction = [&](const Vec& u) {
    for (const auto& row : T)
      if (dot(row, u) > 0) return;
    rays.insert(rationals_to_primitive(u));
  };
  if (d == 1) {
    try_direction({Rational(1)});
    try_direction({Rational(-1)});
  } else {
    int t = static_cast<int>(tight.size());
    std::vector<int> idx(d - 1);
    for (int i = 0; i < d - 1; ++i) idx[i] = i;
    do {
      Mat S(d - 1);
      for (int i = 0; i < d - 1; ++i) S[i] = T[idx[i]];
      auto ns = rat_nullspace(S);
      if (ns.size() != 1) continue;
      try_direction(ns[0]);
      Vec neg = ns[0];
      for (auto& x : neg) x = -x;
      try_direction(neg);
    } while (next_combination(idx, t));
  }
  return {rays.begin(), rays.end()};
}

std::vector<IVec> polar(const std::vector<IVec>& rays, int d) {
  if (rays.empty()) throw domain_error("polar of the trivial cone is not pointed");
  for (const auto& r : rays)
    if (static_cast<int>(r.size()) != d) throw domain_error("ray arity mismatch");
  if (rat_rank(to_rational(columns_to_imat(rays))) < d)
    throw domain_error("polar has a lineality space: rays do not span");

  std::set<IVec> out;
  auto try_normal = [&](const Vec& n) {
    for (const auto& r : rays)
      if (dot(n, to_rational(r)) > 0) return;
    out.insert(rationals_to_primitive(n));
  };
  if (d == 1) {
    try_normal({Rational(1)});
    try_normal({Rational(-1)});
    return {out.begin(), out.end()};
  }
  int m = static_cast<int>(rays.size());
  if (m < d - 1) throw domain_error("polar has a lineality space: rays do not span");
  std::vector<int> idx(d - 1);
  for (int i = 0; i < d - 1; ++i) idx[i] = i;
  do {
    Mat S(d - 1);
    for (int i = 0; i < d - 1; ++i) S[i] = to_rational(rays[idx[i]]);
    auto ns = rat_nullspace(S);
    if (ns.size() != 1) continue;
    try_normal(ns[0]);
    Vec neg = ns[0];
    for (auto& x : neg) x = -x;
    try_normal(neg);
  } while (next_combination(idx, m));
  return {out.begin(), out.end()};
}

namespace {

/* Coordinates of each ray with respect to a maximal independent subset of
 * the rays themselves, scaled primitive. Only the zero pattern and signs of
 * facet pairings matter to the pulling recursion, so per-ray scaling is
 * harmless. */
std::vector<IVec> local_coordinates(const std::vector<IVec>& rays, int k) {
  std::vector<Vec> basis;
  Mat probe;
  for (const auto& r : rays) {
    probe.push_back(to_rational(r));
    if (rat_rank(probe) == static_cast<int>(basis.size()) + 1)
      basis.push_back(to_rational(r));
    else
      probe.pop_back();
    if (static_cast<int>(basis.size()) == k) break;
  }
  Mat B = mat_from_columns(basis);  // n x k, full column rank
  Mat G(k, Vec(k));                 // Gram matrix B^T B
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) G[i][j] = dot(basis[i], basis[j]);
  std::vector<IVec> locals;
  for (const auto& r : rays) {
    Vec rhs(k);
    for (int i = 0; i < k; ++i) rhs[i] = dot(basis[i], to_rational(r));
    auto y = rat_solve(G, rhs);
    if (!y) throw domain_error("degenerate Gram system in triangulation");
    locals.push_back(rationals_to_primitive(*y));
  }
  return locals;
}

/* Pulling triangulation of a pointed cone given by deduplicated, lex-sorted
 * primitive rays spanning a k-dimensional space. Every facet not containing
 * the lex-smallest ray is triangulated recursively and joined with it. */
std::vector<std::vector<IVec>> pull_rays(const std::vector<IVec>& rays, int k) {
  if (static_cast<int>(rays.size()) == k) return {rays};
  std::vector<IVec> loc = local_coordinates(rays, k);
  int m = static_cast<int>(rays.size());

  std::set<std::vector<int>> facets;
  std::vector<int> idx(k - 1);
  for (int i = 0; i < k - 1; ++i) idx[i] = i;
  do {
    Mat S(k - 1);
    for (int i = 0; i < k - 1; ++i) S[i] = to_rational(loc[idx[i]]);
    auto ns = rat_nullspace(S);
    if (ns.size() != 1) continue;
    for (int flip = 0; flip < 2; ++flip) {
      Vec n = ns[0];
      if (flip)
        for (auto& x : n) x = -x;
      bool valid = true;
      std::vector<int> tight;
      for (int i = 0; i < m && valid; ++i) {
        Rational p = dot(n, to_rational(loc[i]));
        if (p > 0) valid = false;
        if (p == 0) tight.push_back(i);
      }
      if (!valid || tight.empty() || static_cast<int>(tight.size()) == m) continue;
      if (tight[0] == 0) continue;  // facet contains the pulled ray
      facets.insert(tight);
    }
  } while (next_combination(idx, m));
  if (facets.empty()) throw domain_error("triangulation needs a pointed cone");

  std::vector<std::vector<IVec>> out;
  for (const auto& F : facets) {
    std::vector<IVec> sub;
    for (int i : F) sub.push_back(rays[i]);
    for (auto& piece : pull_rays(sub, k - 1)) {
      piece.push_back(rays[0]);
      std::sort(piece.begin(), piece.end());
      out.push_back(std::move(piece));
    }
  }
  return out;
}

}  // namespace

std::vector<SimplicialCone> triangulate_cone(const Vec& apex,
                                             const std::vector<IVec>& rays) {
  int d = static_cast<int>(apex.size());
  std::set<IVec> cleaned;
  for (const auto& r : rays) {
    if (static_cast<int>(r.size()) != d) throw domain_error("ray arity mismatch");
    cleaned.insert(primitive_ivec(r));
  }
  std::vector<IVec> sorted(cleaned.begin(), cleaned.end());
  if (rat_rank(to_rational(columns_to_imat(sorted))) != d)
    throw domain_error("triangulation needs a full-dimensional cone");
  std::vector<SimplicialCone> out;
  for (auto& piece : pull_rays(sorted, d))
    out.push_back(make_cone(apex, std::move(piece)));
  return out;
}

namespace {

int affine_dim(const std::vector<Vec>& vs, const std::vector<int>& idx) {
  Mat diff;
  for (size_t i = 1; i < idx.size(); ++i) {
    Vec row(vs[idx[0]].size());
    for (size_t j = 0; j < row.size(); ++j)
      row[j] = vs[idx[i]][j] - vs[idx[0]][j];
    diff.push_back(std::move(row));
  }
  return rat_rank(diff);
}

std::vector<std::vector<int>> pull_face(const Polytope& P,
                                        const std::vector<int>& face, int k) {
  const auto& vs = P.vertices();
  if (static_cast<int>(face.size()) == k + 1) return {face};

  std::set<std::vector<int>> subfaces;
  for (size_t r = 0; r < P.A().size(); ++r) {
    std::vector<int> tight;
    for (int i : face)
      if (dot(P.A()[r], vs[i]) == P.b()[r]) tight.push_back(i);
    if (tight.empty() || tight.size() == face.size()) continue;
    if (tight[0] == face[0]) continue;  // facet contains the pulled vertex
    if (affine_dim(vs, tight) != k - 1) continue;
    subfaces.insert(tight);
  }
  if (subfaces.empty())
    throw domain_error("face recursion found no opposite facets");

  std::vector<std::vector<int>> out;
  for (const auto& S : subfaces) {
    for (auto piece : pull_face(P, S, k - 1)) {
      piece.push_back(face[0]);
      std::sort(piece.begin(), piece.end());
      out.push_back(std::move(piece));
    }
  }
  return out;
}

}  // namespace

std::vector<std::vector<Vec>> triangulate_polytope(const Polytope& P) {
  if (!P.full_dimensional())
    throw domain_error("triangulation needs a full-dimensional polytope");
  const auto& vs = P.vertices();
  std::vector<int> all(vs.size());
  for (size_t i = 0; i < vs.size(); ++i) all[i] = static_cast<int>(i);
  std::vector<std::vector<Vec>> out;
  for (const auto& piece : pull_face(P, all, P.dim())) {
    std::vector<Vec> simplex;
    for (int i : piece) simplex.push_back(vs[i]);
    out.push_back(std::move(simplex));
  }
  return out;
}

namespace {

/* Polar of a simplicial full-dimensional cone: row i of -R^{-1}, scaled
 * primitive, pairs to -1 (up to scale) with ray i and to 0 with the rest. */
std::vector<IVec> polar_simplicial(const std::vector<IVec>& rays) {
  auto inv = rat_inverse(to_rational(columns_to_imat(rays)));
  if (!inv) throw domain_error("polar of a degenerate cone");
  std::vector<IVec> out;
  for (const auto& row : *inv) {
    Vec n(row.size());
    for (size_t j = 0; j < row.size(); ++j) n[j] = -row[j];
    out.push_back(rationals_to_primitive(n));
  }
  return out;
}

/* Nonzero w whose coordinates alpha = R^{-1} w satisfy |alpha_i|^d <=
 * |det R|^(1-d)... scaled as integers: |v_i|^d <= D^(d-1) for v = D alpha.
 * Existence follows from the lattice R^{-1}Z^d having determinant 1/D;
 * candidates are enumerated over the reduced basis in graded order so the
 * choice is deterministic. */
IVec short_stellar_vector(const std::vector<IVec>& rays) {
  int d = static_cast<int>(rays.size());
  IMat R = columns_to_imat(rays);
  Int D = abs(int_det(R));
  auto inv = rat_inverse(to_rational(R));

  std::vector<IVec> scaled(d, IVec(d));  // columns of D * R^{-1}
  IMat back(d, IVec(d));                 // columns: w for unit candidates
  for (int j = 0; j < d; ++j)
    for (int i = 0; i < d; ++i) {
      Rational e = (*inv)[i][j] * Rational(D);
      if (e.get_den() != 1) throw domain_error("adjugate scaling failed");
      scaled[j][i] = e.get_num();
    }
  auto reduced = lll_reduce(scaled);
  for (int j = 0; j < d; ++j) {
    for (int i = 0; i < d; ++i) {
      Rational e(0);
      for (int k = 0; k < d; ++k) e += Rational(R[i][k]) * Rational(reduced[j][k]);
      e /= Rational(D);
      if (e.get_den() != 1) throw domain_error("stellar back-map not integral");
      back[j][i] = e.get_num();
    }
  }

  Int bound;
  mpz_pow_ui(bound.get_mpz_t(), D.get_mpz_t(), static_cast<unsigned>(d - 1));
  std::vector<int> z(d, 0);
  std::function<bool(int, int)> grow = [&](int pos, int budget) -> bool {
    if (pos == d) {
      if (budget != 0) return false;
      bool leading = true;
      for (int j = 0; j < d; ++j) {
        if (z[j] == 0) continue;
        if (leading && z[j] < 0) return false;  // canonical sign
        leading = false;
      }
      if (leading) return false;  // all zero
      IVec v(d, Int(0)), w(d, Int(0));
      for (int j = 0; j < d; ++j) {
        if (z[j] == 0) continue;
        for (int i = 0; i < d; ++i) {
          v[i] += z[j] * reduced[j][i];
          w[i] += z[j] * back[j][i];
        }
      }
      bool gz = true;
      for (const auto& x : v)
        if (x != 0) gz = false;
      if (gz) return false;
      for (int i = 0; i < d; ++i) {
        Int av = abs(v[i]);
        Int p;
        mpz_pow_ui(p.get_mpz_t(), av.get_mpz_t(), static_cast<unsigned>(d));
        if (p > bound) return false;
      }
      return true;
    }
    for (int a = -budget; a <= budget; ++a) {
      z[pos] = a;
      if (grow(pos + 1, budget - std::abs(a))) return true;
    }
    z[pos] = 0;
    return false;
  };
  for (int radius = 1; radius <= 6 * d; ++radius)
    if (grow(0, radius)) {
      IVec w(d, Int(0));
      for (int j = 0; j < d; ++j)
        for (int i = 0; i < d; ++i) w[i] += z[j] * back[j][i];
      return primitive_ivec(std::move(w));
    }
  throw resource_error("no short stellar vector within the search radius");
}

struct StellarNode {
  std::vector<IVec> rays;
  int sign;
  Int absdet;
};

/* Signed stellar recursion: replace one ray at a time with a short vector
 * until every piece is unimodular. Children are visited largest |alpha|
 * first so the emitted leaf order is deterministic. */
void stellar(const StellarNode& node, std::vector<StellarNode>& leaves,
             std::vector<std::vector<IVec>>* tree_rays) {
  if (tree_rays) tree_rays->push_back(node.rays);
  if (node.absdet == 1) {
    leaves.push_back(node);
    return;
  }
  IVec w = short_stellar_vector(node.rays);
  Mat R = to_rational(columns_to_imat(node.rays));
  auto alpha = rat_solve(R, to_rational(w));
  if (!alpha) throw domain_error("stellar coordinates unsolvable");

  /* The replacement identity is a circuit relation; it needs a positive
   * coordinate, otherwise the combined ray set is not pointed. Flipping w
   * keeps the bound and fixes the orientation. */
  bool has_positive = false;
  for (const auto& a : *alpha)
    if (a > 0) has_positive = true;
  if (!has_positive) {
    for (auto& x : w) x = -x;
    for (auto& a : *alpha) a = -a;
  }

  int d = static_cast<int>(node.rays.size());
  std::vector<int> order;
  for (int i = 0; i < d; ++i)
    if ((*alpha)[i] != 0) order.push_back(i);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    Rational aa = abs((*alpha)[a]), ab = abs((*alpha)[b]);
    if (aa != ab) return aa > ab;
    return a < b;
  });
  for (int i : order) {
    StellarNode child;
    child.rays = node.rays;
    child.rays[i] = w;
    child.sign = node.sign * ((*alpha)[i] > 0 ? 1 : -1);
    child.absdet = abs(int_det(columns_to_imat(child.rays)));
    if (child.absdet == 0 || child.absdet >= node.absdet)
      throw domain_error("stellar step failed to reduce the index");
    stellar(child, leaves, tree_rays);
  }
}

/* Half-open flags for the leaves with respect to a perturbation point that
 * is interior to the root, built as sum(M^j ray_j) and escalated until it
 * avoids every facet hyperplane seen anywhere in the recursion tree. */
void stamp_half_open(const std::vector<IVec>& root_rays,
                     const std::vector<std::vector<IVec>>& tree_rays,
                     std::vector<StellarNode>& leaves,
                     std::vector<std::vector<bool>>& open_flags) {
  int d = static_cast<int>(root_rays.size());
  std::vector<Mat> normals;  // rows of R^{-1} per tree node
  for (const auto& rays : tree_rays) {
    auto inv = rat_inverse(to_rational(columns_to_imat(rays)));
    if (!inv) throw domain_error("degenerate cone in half-open stamping");
    normals.push_back(*inv);
  }
  for (long M = 1; M <= 100000; ++M) {
    Vec y(d, Rational(0));
    Rational scale(1);
    for (int j = 0; j < d; ++j) {
      for (int i = 0; i < d; ++i) y[i] += scale * Rational(root_rays[j][i]);
      scale *= M;
    }
    bool generic = true;
    for (const auto& inv : normals) {
      for (int i = 0; i < d && generic; ++i)
        if (dot(inv[i], y) == 0) generic = false;
      if (!generic) break;
    }
    if (!generic) continue;
    open_flags.clear();
    for (size_t l = 0; l < leaves.size(); ++l) {
      auto inv = rat_inverse(to_rational(columns_to_imat(leaves[l].rays)));
      std::vector<bool> open(d);
      for (int i = 0; i < d; ++i) open[i] = (dot((*inv)[i], y) < 0);
      open_flags.push_back(std::move(open));
    }
    return;
  }
  throw resource_error("no generic half-open perturbation found");
}

}  // namespace

std::vector<SimplicialCone> barvinok_decompose(const SimplicialCone& C,
                                               const IMat& lattice,
                                               BarvinokVariant variant) {
  for (bool o : C.open)
    if (o) throw domain_error("decomposition expects a closed cone");
  int d = static_cast<int>(C.apex.size());
  if (static_cast<int>(C.rays.size()) != d)
    throw domain_error("decomposition needs a simplicial cone");

  /* Work in lattice coordinates; unimodularity is relative to the lattice. */
  std::vector<IVec> local;
  Mat L;
  if (!lattice.empty()) {
    L = to_rational(lattice);
    auto Linv = rat_inverse(L);
    if (!Linv) throw domain_error("lattice basis is singular");
    for (const auto& r : C.rays) {
      Vec t = matvec(*Linv, to_rational(r));
      local.push_back(rationals_to_primitive(t));
    }
  } else {
    local = C.rays;
  }

  StellarNode root;
  root.sign = C.sign;
  std::vector<StellarNode> leaves;
  std::vector<std::vector<IVec>> tree_rays;
  std::vector<std::vector<bool>> open_flags;

  if (variant == BarvinokVariant::dual) {
    root.rays = polar_simplicial(local);
    root.absdet = abs(int_det(columns_to_imat(root.rays)));
    stellar(root, leaves, nullptr);
    for (auto& leaf : leaves) leaf.rays = polar_simplicial(leaf.rays);
  } else {
    root.rays = local;
    root.absdet = abs(int_det(columns_to_imat(root.rays)));
    stellar(root, leaves, &tree_rays);
    stamp_half_open(root.rays, tree_rays, leaves, open_flags);
  }

  std::vector<SimplicialCone> out;
  for (size_t l = 0; l < leaves.size(); ++l) {
    std::vector<IVec> rays;
    for (const auto& r : leaves[l].rays) {
      if (lattice.empty()) {
        rays.push_back(r);
      } else {
        Vec amb = matvec(L, to_rational(r));
        IVec ir(amb.size());
        for (size_t i = 0; i < amb.size(); ++i) {
          if (amb[i].get_den() != 1)
            throw domain_error("lattice image of a ray is not integral");
          ir[i] = amb[i].get_num();
        }
        rays.push_back(std::move(ir));
      }
    }
    SimplicialCone piece;
    piece.apex = C.apex;
    piece.det = int_det(columns_to_imat(rays));
    piece.rays = std::move(rays);
    piece.sign = leaves[l].sign;
    if (variant == BarvinokVariant::primal_halfopen)
      piece.open = open_flags[l];
    out.push_back(std::move(piece));
  }
  return out;
}

IVec find_regular_vector(int d, const std::vector<IVec>& must_not_vanish) {
  for (const auto& v : must_not_vanish) {
    if (static_cast<int>(v.size()) != d) throw domain_error("arity mismatch");
    bool zero = true;
    for (const auto& x : v)
      if (x != 0) zero = false;
    if (zero) throw domain_error("zero vector can never pair nonzero");
  }
  for (long M = 1; M <= 1000000; ++M) {
    IVec a(d);
    Int p(1);
    for (int i = 0; i < d; ++i) {
      a[i] = p;
      p *= M;
    }
    bool ok = true;
    for (const auto& v : must_not_vanish)
      if (ivec_dot(a, v) == 0) {
        ok = false;
        break;
      }
    if (ok) return a;
  }
  throw resource_error("no regular vector found in the escalation range");
}

}  // namespace pk
