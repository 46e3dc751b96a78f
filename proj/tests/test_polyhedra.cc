#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>
#include <set>

#include "pk/polyhedra.hh"

using namespace pk;

namespace {

Vec rvec(std::initializer_list<long> xs) {
  Vec v;
  for (long x : xs) v.push_back(Rational(x));
  return v;
}

IVec ivec(std::initializer_list<long> xs) {
  IVec v;
  for (long x : xs) v.push_back(Int(x));
  return v;
}

Int idot(const IVec& a, const IVec& b) {
  Int s(0);
  for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

Polytope unit_square() {
  return box_polytope({{Rational(0), Rational(1)}, {Rational(0), Rational(1)}});
}

const char* kPentagon =
    "5 3\n"
    "0 0 1\n"
    "0 1 0\n"
    "2 -1 1\n"
    "4 -1 -1\n"
    "2 1 -1\n";

}  // namespace

TEST_CASE("rational linear algebra") {
  Mat A = {rvec({1, 2}), rvec({3, 4})};
  CHECK(rat_det(A) == -2);
  CHECK(rat_det({rvec({1, 2}), rvec({2, 4})}) == 0);
  CHECK(rat_rank({rvec({1, 2, 3}), rvec({2, 4, 6}), rvec({0, 0, 1})}) == 2);

  auto x = rat_solve(A, rvec({5, 11}));
  REQUIRE(x);
  CHECK((*x)[0] == 1);
  CHECK((*x)[1] == 2);
  CHECK(!rat_solve({rvec({1, 1}), rvec({1, 1})}, rvec({0, 1})));

  auto inv = rat_inverse(A);
  REQUIRE(inv);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      Rational s(0);
      for (int k = 0; k < 2; ++k) s += A[i][k] * (*inv)[k][j];
      CHECK(s == (i == j ? 1 : 0));
    }

  auto ns = rat_nullspace({rvec({1, 1, 1})});
  REQUIRE(ns.size() == 2);
  for (const auto& v : ns) CHECK(dot(rvec({1, 1, 1}), v) == 0);
}

TEST_CASE("hermite form with tracked transform") {
  IMat A = {ivec({6}), ivec({2}), ivec({3})};
  auto r = hnf(A);
  CHECK(r.H[0][0] == 1);
  CHECK(r.H[1][0] == 0);
  CHECK(r.H[2][0] == 0);
  CHECK(6 * r.U[0][0] + 2 * r.U[0][1] + 3 * r.U[0][2] == 1);
  CHECK(abs(int_det(r.U)) == 1);
}

TEST_CASE("hermite form random oracle") {
  std::mt19937 rng(20240816);
  std::uniform_int_distribution<int> coef(-9, 9);
  for (int trial = 0; trial < 60; ++trial) {
    int m = 2 + static_cast<int>(rng() % 3);
    int n = 2 + static_cast<int>(rng() % 3);
    IMat A(m, IVec(n));
    for (auto& row : A)
      for (auto& x : row) x = coef(rng);
    auto r = hnf(A);
    CHECK(abs(int_det(r.U)) == 1);
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < n; ++j) {
        Int s(0);
        for (int k = 0; k < m; ++k) s += r.U[i][k] * A[k][j];
        CHECK(s == r.H[i][j]);
      }
    /* Staircase shape: positive pivots, zeros below, reduced above. */
    int prev_col = -1, row = 0;
    for (; row < m; ++row) {
      int c = 0;
      while (c < n && r.H[row][c] == 0) ++c;
      if (c == n) break;
      CHECK(c > prev_col);
      CHECK(r.H[row][c] > 0);
      for (int i = row + 1; i < m; ++i) CHECK(r.H[i][c] == 0);
      for (int i = 0; i < row; ++i) {
        CHECK(r.H[i][c] >= 0);
        CHECK(r.H[i][c] < r.H[row][c]);
      }
      prev_col = c;
    }
    for (; row < m; ++row)
      for (int j = 0; j < n; ++j) CHECK(r.H[row][j] == 0);
  }
}

TEST_CASE("lattice reduction") {
  auto red = lll_reduce({ivec({1, 0}), ivec({5, 1})});
  std::set<IVec> got(red.begin(), red.end());
  std::set<IVec> want = {ivec({1, 0}), ivec({0, 1})};
  CHECK(got == want);

  IVec s = lll_short_vector({ivec({6, 0}), ivec({4, 1})});
  CHECK(s[0] * s[0] + s[1] * s[1] == 5);

  /* Reduction preserves the lattice volume. */
  auto red3 = lll_reduce({ivec({1, 1, 1}), ivec({-1, 0, 2}), ivec({3, 5, 6})});
  IMat M(3, IVec(3));
  for (int j = 0; j < 3; ++j)
    for (int i = 0; i < 3; ++i) M[i][j] = red3[j][i];
  CHECK(abs(int_det(M)) == 3);
}

TEST_CASE("vertex enumeration") {
  Polytope sq = unit_square();
  auto vs = sq.vertices();
  REQUIRE(vs.size() == 4);
  CHECK(vs[0] == rvec({0, 0}));
  CHECK(vs[1] == rvec({0, 1}));
  CHECK(vs[2] == rvec({1, 0}));
  CHECK(vs[3] == rvec({1, 1}));
  CHECK(sq.full_dimensional());
  CHECK(sq.contains({make_rat(1, 2), make_rat(1, 2)}));
  CHECK(!sq.contains(rvec({2, 0})));

  Polytope pent = parse_hrep(kPentagon);
  auto pv = pent.vertices();
  std::set<Vec> got(pv.begin(), pv.end());
  std::set<Vec> want = {rvec({0, 0}), rvec({2, 0}), rvec({0, 2}),
                        rvec({3, 1}), rvec({1, 3})};
  CHECK(got == want);

  CHECK_THROWS_AS(parse_hrep("2 2\n0 1\n"), parse_error);
  CHECK_THROWS_AS(parse_hrep("1 2\n0 1\n junk"), parse_error);

  /* x <= 0 and x >= 1: empty. */
  CHECK_THROWS_AS(vertices_from_hrep({rvec({1}), rvec({-1})}, rvec({0, -1})),
                  domain_error);
  /* x >= 0 alone: unbounded. */
  CHECK_THROWS_WITH_AS(vertices_from_hrep({rvec({-1})}, rvec({0})),
                       doctest::Contains("unbounded"), domain_error);
  /* Slab between two parallel planes: lineality. */
  CHECK_THROWS_AS(vertices_from_hrep({rvec({1, 1}), rvec({-1, -1})}, rvec({1, 1})),
                  domain_error);
  /* Exhaustive enumeration refuses oversized systems. */
  Mat big(9, Vec(9, Rational(0)));
  for (int i = 0; i < 9; ++i) big[i][i] = 1;
  CHECK_THROWS_AS(vertices_from_hrep(big, Vec(9, Rational(1))), resource_error);
}

TEST_CASE("box detection") {
  auto b = as_box(unit_square());
  REQUIRE(b);
  CHECK((*b)[0].first == 0);
  CHECK((*b)[1].second == 1);
  CHECK(!as_box(parse_hrep(kPentagon)));

  /* Redundant single-variable rows tighten to the strongest bound. */
  Polytope redundant({rvec({1}), rvec({1}), rvec({-1})}, rvec({7, 5, 0}));
  auto rb = as_box(redundant);
  REQUIRE(rb);
  CHECK((*rb)[0].second == 5);
}

TEST_CASE("tangent cones of the unit square") {
  Polytope sq = unit_square();
  auto at11 = tangent_cone(sq, rvec({1, 1}));
  std::set<IVec> got11(at11.begin(), at11.end());
  CHECK(got11 == std::set<IVec>{ivec({-1, 0}), ivec({0, -1})});

  auto at10 = tangent_cone(sq, rvec({1, 0}));
  std::set<IVec> got10(at10.begin(), at10.end());
  CHECK(got10 == std::set<IVec>{ivec({-1, 0}), ivec({0, 1})});

  CHECK_THROWS_AS(tangent_cone(sq, {make_rat(1, 2), Rational(0)}), domain_error);
  CHECK_THROWS_AS(tangent_cone(sq, rvec({3, 3})), domain_error);
}

TEST_CASE("polar cones") {
  auto p = polar({ivec({1, 0}), ivec({1, 1})}, 2);
  CHECK(std::set<IVec>(p.begin(), p.end()) ==
        std::set<IVec>{ivec({0, -1}), ivec({-1, 1})});

  /* Involution on a pointed full-dimensional cone. */
  std::vector<IVec> rays = {ivec({2, 1}), ivec({1, 3})};
  auto back = polar(polar(rays, 2), 2);
  CHECK(std::set<IVec>(back.begin(), back.end()) ==
        std::set<IVec>(rays.begin(), rays.end()));

  auto trivial = polar({ivec({1, 0}), ivec({-1, 0}), ivec({0, 1}), ivec({0, -1})}, 2);
  CHECK(trivial.empty());

  CHECK_THROWS_AS(polar({ivec({1, 0})}, 2), domain_error);
}

TEST_CASE("cone membership") {
  SimplicialCone C = make_cone(rvec({0, 0}), {ivec({1, 0}), ivec({1, 3})});
  CHECK(cone_index(C) == 3);
  CHECK(cone_contains(C, rvec({2, 3})));
  CHECK(cone_contains(C, rvec({1, 3})));
  CHECK(!cone_contains(C, rvec({0, 1})));
  C.open = {false, true};  // excludes the face {lambda_1 = 0}, i.e. the (1,0) edge
  CHECK(!cone_contains(C, rvec({2, 0})));
  CHECK(cone_contains(C, rvec({2, 3})));

  CHECK_THROWS_AS(make_cone(rvec({0, 0}), {ivec({1, 2}), ivec({2, 4})}),
                  domain_error);
}

TEST_CASE("cone triangulation pulls the smallest ray") {
  Vec apex = rvec({0, 0, 0});
  std::vector<IVec> square_rays = {ivec({0, 0, 1}), ivec({1, 0, 1}),
                                   ivec({0, 1, 1}), ivec({1, 1, 1})};
  auto pieces = triangulate_cone(apex, square_rays);
  REQUIRE(pieces.size() == 2);
  for (const auto& piece : pieces) {
    CHECK(cone_index(piece) == 1);
    bool has_pulled = false;
    for (const auto& r : piece.rays)
      if (r == ivec({0, 0, 1})) has_pulled = true;
    CHECK(has_pulled);
  }

  /* Coverage: a point is in the original cone iff some piece holds it. */
  SimplicialCone whole_a = make_cone(apex, {square_rays[0], square_rays[1], square_rays[3]});
  SimplicialCone whole_b = make_cone(apex, {square_rays[0], square_rays[2], square_rays[3]});
  std::mt19937 rng(7);
  std::uniform_int_distribution<int> pt(-3, 3);
  for (int t = 0; t < 200; ++t) {
    Vec x = rvec({pt(rng), pt(rng), pt(rng)});
    bool in_original = cone_contains(whole_a, x) || cone_contains(whole_b, x);
    bool in_pieces = false;
    for (const auto& piece : pieces)
      if (cone_contains(piece, x)) in_pieces = true;
    CHECK(in_original == in_pieces);
  }

  CHECK_THROWS_AS(triangulate_cone(rvec({0, 0}), {ivec({1, 0}), ivec({-1, 0})}),
                  domain_error);
  CHECK_THROWS_AS(triangulate_cone(rvec({0, 0}), {ivec({1, 0})}), domain_error);
}

namespace {

Rational simplex_volume(const std::vector<Vec>& simplex) {
  size_t d = simplex[0].size();
  Mat M(d, Vec(d));
  for (size_t j = 1; j < simplex.size(); ++j)
    for (size_t i = 0; i < d; ++i) M[i][j - 1] = simplex[j][i] - simplex[0][i];
  Rational v = rat_det(M) / Rational(factorial(static_cast<long>(d)));
  return v < 0 ? Rational(-v) : v;
}

}  // namespace

TEST_CASE("polytope triangulation") {
  Polytope pent = parse_hrep(kPentagon);
  auto tris = triangulate_polytope(pent);
  REQUIRE(tris.size() == 3);
  Rational area(0);
  for (const auto& t : tris) {
    REQUIRE(t.size() == 3);
    area += simplex_volume(t);
    bool has_pulled = false;
    for (const auto& v : t)
      if (v == rvec({0, 0})) has_pulled = true;
    CHECK(has_pulled);
  }
  CHECK(area == 6);

  Polytope cube = box_polytope(
      {{Rational(0), Rational(1)}, {Rational(0), Rational(1)}, {Rational(0), Rational(1)}});
  auto tets = triangulate_polytope(cube);
  CHECK(tets.size() == 6);
  Rational vol(0);
  for (const auto& t : tets) vol += simplex_volume(t);
  CHECK(vol == 1);
}

TEST_CASE("regular vector escalation") {
  IVec a = find_regular_vector(2, {ivec({1, -1}), ivec({0, 1})});
  CHECK(a == ivec({1, 2}));
  CHECK_THROWS_AS(find_regular_vector(2, {ivec({0, 0})}), domain_error);
}

namespace {

long signed_box_count(const std::vector<SimplicialCone>& pieces, const Vec& x) {
  long s = 0;
  for (const auto& piece : pieces)
    if (cone_contains(piece, x)) s += piece.sign;
  return s;
}

}  // namespace

TEST_CASE("half-open decomposition is a pointwise identity") {
  SimplicialCone K = make_cone(rvec({0, 0}), {ivec({1, 0}), ivec({1, 3})});
  auto pieces = barvinok_decompose(K, {}, BarvinokVariant::primal_halfopen);
  REQUIRE(pieces.size() >= 2);
  for (const auto& piece : pieces) {
    CHECK(cone_index(piece) == 1);
    CHECK(piece.open.size() == 2);
  }
  for (int x = -8; x <= 8; ++x)
    for (int y = -8; y <= 8; ++y) {
      Vec p = rvec({x, y});
      long want = cone_contains(K, p) ? 1 : 0;
      CHECK(signed_box_count(pieces, p) == want);
    }

  /* Higher index, dimension three. */
  SimplicialCone K3 = make_cone(rvec({0, 0, 0}),
                                {ivec({1, 0, 0}), ivec({0, 1, 0}), ivec({1, 2, 5})});
  auto pieces3 = barvinok_decompose(K3, {}, BarvinokVariant::primal_halfopen);
  for (const auto& piece : pieces3) CHECK(cone_index(piece) == 1);
  long agg_pieces = 0, agg_cone = 0;
  for (int x = -2; x <= 6; ++x)
    for (int y = -2; y <= 6; ++y)
      for (int z = -2; z <= 6; ++z) {
        Vec p = rvec({x, y, z});
        long want = cone_contains(K3, p) ? 1 : 0;
        long got = signed_box_count(pieces3, p);
        CHECK(got == want);
        agg_pieces += got;
        agg_cone += want;
      }
  CHECK(agg_pieces == agg_cone);

  /* Rational sample points: the identity is geometric, not arithmetic. */
  std::mt19937 rng(99);
  std::uniform_int_distribution<int> num(-12, 12);
  for (int t = 0; t < 300; ++t) {
    Vec p = {make_rat(num(rng), 5), make_rat(num(rng), 7)};
    long want = cone_contains(K, p) ? 1 : 0;
    CHECK(signed_box_count(pieces, p) == want);
  }
}

TEST_CASE("half-open decomposition respects a coarser lattice") {
  SimplicialCone K = make_cone(rvec({0, 0}), {ivec({2, 0}), ivec({1, 1})});
  IMat lattice = {{Int(2), Int(0)}, {Int(0), Int(1)}};  // columns (2,0), (0,1)
  auto pieces = barvinok_decompose(K, lattice, BarvinokVariant::primal_halfopen);
  for (const auto& piece : pieces) CHECK(abs(piece.det) == 2);  // unimodular in the lattice
  for (int x = -6; x <= 6; ++x)
    for (int y = -6; y <= 6; ++y) {
      Vec p = rvec({x, y});
      long want = cone_contains(K, p) ? 1 : 0;
      CHECK(signed_box_count(pieces, p) == want);
    }
}

TEST_CASE("unimodular input decomposes to itself") {
  SimplicialCone K = make_cone(rvec({1, 2}), {ivec({1, 0}), ivec({1, 1})});
  for (auto variant : {BarvinokVariant::dual, BarvinokVariant::primal_halfopen}) {
    auto pieces = barvinok_decompose(K, {}, variant);
    REQUIRE(pieces.size() == 1);
    CHECK(pieces[0].sign == 1);
    CHECK(std::set<IVec>(pieces[0].rays.begin(), pieces[0].rays.end()) ==
          std::set<IVec>(K.rays.begin(), K.rays.end()));
    CHECK(pieces[0].apex == K.apex);
  }
}

TEST_CASE("dual decomposition matches the lattice point series") {
  /* Evaluate sum over K cap Z^2 of t^<a,x> two ways: through the signed
   * unimodular pieces as rational functions, and as a truncated brute-force
   * series with a certified tail bound. Points with <a,x> = s number at
   * most (s+1)^2 <= 4^s, so the tail beyond H is below (4t)^(H+1)/(1-4t). */
  SimplicialCone K = make_cone(rvec({0, 0}), {ivec({1, 0}), ivec({1, 3})});
  auto pieces = barvinok_decompose(K, {}, BarvinokVariant::dual);
  for (const auto& piece : pieces) {
    CHECK(cone_index(piece) == 1);
    CHECK(piece.open.empty());
  }

  std::vector<IVec> all_rays = K.rays;
  for (const auto& piece : pieces)
    for (const auto& r : piece.rays) all_rays.push_back(r);
  IVec a = find_regular_vector(2, all_rays);
  REQUIRE(idot(a, K.rays[0]) > 0);
  REQUIRE(idot(a, K.rays[1]) > 0);

  const Rational t = make_rat(1, 64);
  Rational lhs(0);
  for (const auto& piece : pieces) {
    Rational term(piece.sign);
    for (const auto& r : piece.rays) {
      long c = static_cast<long>(idot(a, r).get_si());
      term /= Rational(1) - pow_rat(t, c);
    }
    lhs += term;
  }

  const int H = 20;
  Rational rhs(0);
  for (int x = 0; x <= H; ++x)
    for (int y = 0; y <= H; ++y) {
      Vec p = rvec({x, y});
      long s = x * static_cast<long>(a[0].get_si()) +
               y * static_cast<long>(a[1].get_si());
      if (s > H) continue;
      if (cone_contains(K, p)) rhs += pow_rat(t, s);
    }
  Rational tail = pow_rat(4 * t, H + 1) / (Rational(1) - 4 * t);
  Rational diff = lhs - rhs;
  if (diff < 0) diff = -diff;
  CHECK(diff <= tail);
}

TEST_CASE("decomposition input validation") {
  SimplicialCone K = make_cone(rvec({0, 0}), {ivec({1, 0}), ivec({1, 3})});
  K.open = {true, false};
  CHECK_THROWS_AS(barvinok_decompose(K), domain_error);
}
