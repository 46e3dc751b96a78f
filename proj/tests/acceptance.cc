/* End-to-end acceptance suite: one numbered check block per release
 * criterion, one PASS/FAIL line each, nonzero exit if anything fails.
 * Golden values repeat the module tests so a regression shows up here
 * even if an individual suite is skipped. */

#include <chrono>
#include <cstdio>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "pk/dlx.hh"
#include "pk/errors.hh"
#include "pk/handelman.hh"
#include "pk/integrate.hh"
#include "pk/knapsack.hh"
#include "pk/optimize.hh"
#include "pk/polyhedra.hh"
#include "pk/polynomial.hh"
#include "pk/stepfun.hh"

using namespace pk;

namespace {

int g_failures = 0;
std::vector<std::string> g_notes;

void expect(bool ok, const std::string& what) {
  if (ok) return;
  ++g_failures;
  if (g_notes.size() < 8) g_notes.push_back(what);
}

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

std::vector<Int> ints(std::initializer_list<long> xs) {
  std::vector<Int> v;
  for (long x : xs) v.push_back(Int(x));
  return v;
}

Rational rat(const std::string& s) { return Rational(mpq_class(s)); }

Rational from_decimal(const std::string& s) {
  auto dot = s.find('.');
  std::string digits =
      dot == std::string::npos ? s : s.substr(0, dot) + s.substr(dot + 1);
  long fd = dot == std::string::npos ? 0 : (long)(s.size() - dot - 1);
  Int den;
  mpz_ui_pow_ui(den.get_mpz_t(), 10, (unsigned long)fd);
  return make_rat(Int(digits), den);
}

bool within(const Rational& value, const Rational& target, const Rational& tol) {
  return Rational(abs(value - target)) <= tol;
}

const char* kPentagon =
    "5 3\n"
    "0 0 1\n"
    "0 1 0\n"
    "2 -1 1\n"
    "4 -1 -1\n"
    "2 1 -1\n";

const char* kBigNumerator =
    "22727636938689966389358886740322023383316784295938226547419458531150195170"
    "44815807828554973991981183769557979672803164125396992";

/* Full quasi-polynomial of the [6, 2, 3] example: row rho holds the
 * coefficients c0, c1, c2 on the coset t = rho (mod 6). */
const char* kWorkedCosets[6][3] = {
    {"1", "1/4", "1/72"},     {"-5/72", "1/18", "1/72"},
    {"5/9", "7/36", "1/72"},  {"3/8", "1/6", "1/72"},
    {"2/9", "5/36", "1/72"},  {"7/72", "1/9", "1/72"}};

Polytope interval(long lo, long hi) {
  return box_polytope({{Rational(lo), Rational(hi)}});
}

/* f = x1^2 x2 - x1 x2, the optimization running example on [1,3]^2. */
SparsePolynomial worked_poly() {
  SparsePolynomial f(2);
  f.insert({2, 1}, 1);
  f.insert({1, 1}, -1);
  return f;
}

Polytope worked_box() {
  return box_polytope({{Rational(1), Rational(3)}, {Rational(1), Rational(3)}});
}

Rational rand_rat(std::mt19937_64& rng, long span) {
  long num = (long)(rng() % (2 * span + 1)) - span;
  long den = 1 + (long)(rng() % 3);
  return make_rat(num, den);
}

/* prod_i (u_i^{e_i+1} - l_i^{e_i+1}) / (e_i+1): monomial integral over a
 * box, independent of both polytope routes. */
Rational box_monomial_integral(const std::vector<std::pair<Rational, Rational>>& bounds,
                               const ExpVec& e) {
  Rational r = 1;
  for (size_t i = 0; i < bounds.size(); ++i) {
    r *= (pow_rat(bounds[i].second, e[i] + 1) - pow_rat(bounds[i].first, e[i] + 1)) /
         Rational(e[i] + 1);
  }
  return r;
}

/* Random exponent vector with total degree <= cap. */
ExpVec random_monomial(std::mt19937_64& rng, int d, int cap) {
  ExpVec e((size_t)d, 0);
  int left = cap;
  for (int i = 0; i < d; ++i) {
    int pick = (int)(rng() % (unsigned long)(left + 1));
    e[(size_t)i] = pick;
    left -= pick;
  }
  return e;
}

/* integral of x^e over the standard simplex {x >= 0, sum x <= 1}:
 * prod e_i! / (d + sum e_i)!. */
Rational dirichlet_integral(const ExpVec& e) {
  long total = 0;
  Rational num = 1;
  for (int ei : e) {
    num *= Rational(factorial(ei));
    total += ei;
  }
  return num / Rational(factorial(total + (long)e.size()));
}

struct RandomSimplex {
  Polytope P;
  Mat M;      // image of the standard simplex under x -> M x + t
  Vec t;
  Rational absdet;
};

RandomSimplex random_simplex(std::mt19937_64& rng, int d) {
  for (;;) {
    Mat M((size_t)d, Vec((size_t)d));
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) M[(size_t)i][(size_t)j] = rand_rat(rng, 3);
    Rational det = rat_det(M);
    if (det == 0) continue;
    Vec t((size_t)d);
    for (int i = 0; i < d; ++i) t[(size_t)i] = rand_rat(rng, 3);

    /* Standard simplex A0 x <= b0 pulled through the inverse map. */
    Mat A0;
    Vec b0;
    for (int i = 0; i < d; ++i) {
      Vec row((size_t)d, Rational(0));
      row[(size_t)i] = -1;
      A0.push_back(row);
      b0.push_back(Rational(0));
    }
    A0.push_back(Vec((size_t)d, Rational(1)));
    b0.push_back(Rational(1));

    Mat Minv = *rat_inverse(M);
    Mat A;
    Vec b;
    for (size_t r = 0; r < A0.size(); ++r) {
      Vec row((size_t)d, Rational(0));
      for (int j = 0; j < d; ++j)
        for (int l = 0; l < d; ++l)
          row[(size_t)j] += A0[r][(size_t)l] * Minv[(size_t)l][(size_t)j];
      A.push_back(row);
      b.push_back(b0[r] + dot(row, t));
    }
    return {Polytope(A, b), M, t, Rational(abs(det))};
  }
}

/* integral of c * y^e over M * simplex + t by substitution: expand
 * c * prod_j (<M_j, x> + t_j)^(e_j) into monomials and integrate each
 * with the closed form above, scaled by |det M|. */
Rational simplex_monomial_oracle(const RandomSimplex& S, const ExpVec& e,
                                 const Rational& c) {
  int d = (int)e.size();
  SparsePolynomial g(d);
  g.insert(ExpVec((size_t)d, 0), c);
  for (int j = 0; j < d; ++j) {
    if (e[(size_t)j] == 0) continue;
    SparsePolynomial lin(d);
    for (int i = 0; i < d; ++i) {
      if (S.M[(size_t)j][(size_t)i] == 0) continue;
      ExpVec u((size_t)d, 0);
      u[(size_t)i] = 1;
      lin.insert(u, S.M[(size_t)j][(size_t)i]);
    }
    if (S.t[(size_t)j] != 0) lin.insert(ExpVec((size_t)d, 0), S.t[(size_t)j]);
    g = mul(g, pow_expand(lin, e[(size_t)j]));
  }
  Rational total = 0;
  g.for_each([&](const ExpVec& m, const Rational& cm) {
    total += cm * dirichlet_integral(m);
  });
  return S.absdet * total;
}

SimplicialCone corner_cone(const Polytope& P, const Vec& v) {
  auto pieces = triangulate_cone(v, tangent_cone(P, v));
  expect(pieces.size() == 1, "corner cone should be simplicial");
  return pieces[0];
}

SparsePolynomial poly1(const std::string& text) { return parse_polynomial(text, 1); }

bool poly_equal(const SparsePolynomial& a, const SparsePolynomial& b) {
  bool same = a.dim() == b.dim();
  std::map<ExpVec, Rational> ta, tb;
  a.for_each([&](const ExpVec& e, const Rational& c) { ta[e] += c; });
  b.for_each([&](const ExpVec& e, const Rational& c) { tb[e] += c; });
  for (auto it = ta.begin(); it != ta.end();)
    it = it->second == 0 ? ta.erase(it) : std::next(it);
  for (auto it = tb.begin(); it != tb.end();)
    it = it->second == 0 ? tb.erase(it) : std::next(it);
  return same && ta == tb;
}

bool handelman_feasible(const Rational& eps, int t) {
  SparsePolynomial f(1);
  f.insert({2}, 1);
  f.insert({0}, eps);
  try {
    handelman_decompose(f, interval(-1, 1), t, true);
    return true;
  } catch (const domain_error&) {
    return false;
  }
}

std::vector<Int> random_knapsack_list(std::mt19937_64& rng) {
  for (;;) {
    int n = 2 + (int)(rng() % 5);  // list size 2..6
    std::vector<Int> a;
    Int g = 0, L = 1;
    for (int i = 0; i < n; ++i) {
      Int v(1 + (long)(rng() % 20));
      a.push_back(v);
      g = gcd(g, v);
      L = lcm(L, v);
    }
    /* The oracle table is bounded, so keep the full quasi-period small
     * enough to sweep; lists with a huge lcm are redrawn. */
    if (g == 1 && L <= 20000) return a;
  }
}

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
      .count();
}

/* --- criterion bodies ------------------------------------------------- */

void crit1_pentagon() {
  auto start = std::chrono::steady_clock::now();
  Polytope pent = parse_hrep(kPentagon);

  SparsePolynomial one(2);
  one.insert({0, 0}, 1);
  Rational area_tri = integrate_polynomial(pent, one, IntegrationMethod::triangulation);
  Rational area_cd =
      integrate_polynomial(pent, one, IntegrationMethod::cone_decomposition);
  expect(area_tri == Rational(6), "pentagon area via triangulation is 6");
  expect(area_cd == Rational(6), "pentagon area via cone decomposition is 6");

  Vec ell = rvec({3, 5});
  IntegrationResult tri =
      integrate_plf_polytope(pent, ell, 100, IntegrationMethod::triangulation);
  IntegrationResult cd =
      integrate_plf_polytope(pent, ell, 100, IntegrationMethod::cone_decomposition);
  expect(tri.value == cd.value, "(3x+5y)^100 routes agree bit-exactly");
  expect(Int(tri.value.get_den()) == Int(1717), "(3x+5y)^100 denominator is 1717");
  expect(Int(tri.value.get_num()) == Int(kBigNumerator),
         "(3x+5y)^100 numerator matches the recorded value");
  expect(seconds_since(start) < 10.0, "pentagon suite under 10 s");
}

void crit2_micro_integrals() {
  std::vector<Vec> tri = {rvec({1, 1}), rvec({0, 1}), rvec({1, 0})};
  Vec ell = rvec({1, 1});
  auto terms = plf_simplex_pole_terms(tri, ell, 1);
  expect(terms.size() == 2, "triangle residue group count");
  if (terms.size() == 2) {
    expect(terms[0] == Rational(8), "triangle residue term 8");
    expect(terms[1] == Rational(-4), "triangle residue term -4");
  }
  expect(integrate_plf_simplex(tri, ell, 1) == make_rat(2, 3),
         "triangle integral of x+y is 2/3");

  Polytope sq = box_polytope({{Rational(0), Rational(1)}, {Rational(0), Rational(1)}});
  Vec lx = rvec({1, 0});
  IVec a = ivec({1, 1});
  expect(integrate_plf_cone(corner_cone(sq, rvec({0, 0})), lx, 1, a) == Rational(0),
         "square vertex (0,0) summand 0");
  expect(integrate_plf_cone(corner_cone(sq, rvec({0, 1})), lx, 1, a) == Rational(0),
         "square vertex (0,1) summand 0");
  expect(integrate_plf_cone(corner_cone(sq, rvec({1, 0})), lx, 1, a) == make_rat(-2, 6),
         "square vertex (1,0) summand -2/6");
  expect(integrate_plf_cone(corner_cone(sq, rvec({1, 1})), lx, 1, a) == make_rat(5, 6),
         "square vertex (1,1) summand 5/6");
  Rational sum = 0;
  for (const auto& v : sq.vertices()) sum += integrate_plf_cone(corner_cone(sq, v), lx, 1, a);
  expect(sum == make_rat(1, 2), "square integral of x is 1/2");
}

void crit3_method_equivalence() {
  auto start = std::chrono::steady_clock::now();
  std::mt19937_64 rng(62831853);
  for (int trial = 0; trial < 50; ++trial) {
    if (trial % 2 == 0) {
      int d = 1 + (int)(rng() % 3);
      std::vector<std::pair<Rational, Rational>> bounds;
      for (int i = 0; i < d; ++i) {
        Rational lo = rand_rat(rng, 3);
        bounds.push_back({lo, lo + make_rat(1 + (long)(rng() % 4), 1 + (long)(rng() % 2))});
      }
      Polytope B = box_polytope(bounds);
      ExpVec e = random_monomial(rng, d, 6);
      Rational c = rand_rat(rng, 5);
      if (c == 0) c = 1;
      SparsePolynomial f(d);
      f.insert(e, c);

      Rational tr = integrate_polynomial(B, f, IntegrationMethod::triangulation);
      Rational cd = integrate_polynomial(B, f, IntegrationMethod::cone_decomposition);
      expect(tr == cd, "box methods agree, trial " + std::to_string(trial));
      expect(tr == c * box_monomial_integral(bounds, e),
             "box oracle matches, trial " + std::to_string(trial));
    } else {
      int d = 1 + (int)(rng() % 4);
      RandomSimplex S = random_simplex(rng, d);
      ExpVec e = random_monomial(rng, d, 6);
      Rational c = rand_rat(rng, 5);
      if (c == 0) c = 1;
      SparsePolynomial f(d);
      f.insert(e, c);

      Rational tr = integrate_polynomial(S.P, f, IntegrationMethod::triangulation);
      Rational cd = integrate_polynomial(S.P, f, IntegrationMethod::cone_decomposition);
      expect(tr == cd, "simplex methods agree, trial " + std::to_string(trial));
      expect(tr == simplex_monomial_oracle(S, e, c),
             "simplex substitution oracle matches, trial " + std::to_string(trial));
    }
  }
  expect(seconds_since(start) < 300.0, "method equivalence suite under 5 min");
}

void crit4_handelman() {
  Polytope box = interval(-1, 1);
  auto f = poly1("[[1, [2]], [-1, [1]]]");
  auto D = handelman_decompose(f, box, 2, false);
  Rational objective = D.shift;
  for (const auto& [alpha, c] : D.terms) objective += c;
  expect(objective == Rational(2), "x^2 - x decomposition objective is 2");

  SparsePolynomial fs = f;
  fs.insert({0}, D.shift);
  expect(poly_equal(expand_decomposition(D), fs),
         "x^2 - x expansion equals f plus the shift");

  const std::pair<int, Rational> frontier[] = {{2, Rational(1)},
                                               {3, make_rat(1, 3)},
                                               {5, make_rat(1, 5)},
                                               {7, make_rat(1, 7)}};
  for (const auto& [t, eps_star] : frontier) {
    Rational lo = 0, hi = 2;
    bool ends_ok = !handelman_feasible(lo, t) && handelman_feasible(hi, t);
    expect(ends_ok, "bisection bracket valid at degree " + std::to_string(t));
    if (!ends_ok) continue;
    while (hi - lo > make_rat(1, 1000)) {
      Rational mid = (lo + hi) / 2;
      (handelman_feasible(mid, t) ? hi : lo) = mid;
    }
    expect(lo < eps_star && eps_star <= hi,
           "feasibility frontier at degree " + std::to_string(t));
  }
}

void crit5_optimization_tables() {
  SparsePolynomial f = worked_poly();
  Polytope P = worked_box();
  Rational tol = make_rat(1, 100);

  struct Row {
    long k;
    const char* lo;
    const char* hi;
  };
  const Row cont[] = {{10, "11.07", "23.40"},
                      {20, "13.22", "20.75"},
                      {30, "14.27", "19.84"},
                      {40, "14.91", "19.38"}};
  for (const Row& row : cont) {
    BoundsReport rep = continuous_bounds(f, P, row.k);
    expect(within(rep.L_k, from_decimal(row.lo), tol),
           "continuous L at k=" + std::to_string(row.k));
    expect(within(rep.U_k, from_decimal(row.hi), tol),
           "continuous U at k=" + std::to_string(row.k));
  }

  BoundsReport r126 = continuous_bounds(f, P, 126);
  Rational gap = r126.U_k - r126.L_k;
  expect(within(gap, from_decimal("1.75"), make_rat(5, 100)),
         "U - L gap at k=126 is 1.7 within 0.05");
  expect(rat_floor(gap * 10) == 17, "k=126 gap truncates to 1.7");

  expect(choose_k(make_rat(1, 10), make_rat(1938, 100), 2, 33, 2) == 473,
         "choose_k worked value 473");

  const Row disc[] = {{10, "14.47", "18.03"},
                      {20, "16.12", "18.00"},
                      {30, "16.72", "18.00"},
                      {40, "17.03", "18.00"}};
  for (const Row& row : disc) {
    auto [lo, hi] = discrete_bounds_box(f, P, row.k);
    expect(within(radical_decimal(lo, 50), from_decimal(row.lo), tol),
           "discrete L at k=" + std::to_string(row.k));
    expect(within(radical_decimal(hi, 50), from_decimal(row.hi), tol),
           "discrete U at k=" + std::to_string(row.k));
  }
  auto [lo40, hi40] = discrete_bounds_box(f, P, 40);
  bool pins_18 = radical_compare(lo40, {Rational(17), 1}) > 0 &&
                 radical_compare(hi40, {Rational(19), 1}) < 0;
  expect(pins_18, "k=40 discrete bounds certify the lattice max 18");
}

void crit6_knapsack_golden() {
  auto cosets = coset_polynomials(ints({6, 2, 3}));
  expect(cosets.size() == 6, "[6,2,3] has six cosets");
  for (size_t rho = 0; rho < cosets.size() && rho < 6; ++rho) {
    expect(cosets[rho].size() == 3, "coset row width");
    for (size_t d = 0; d < cosets[rho].size() && d < 3; ++d)
      expect(cosets[rho][d] == rat(kWorkedCosets[rho][d]),
             "coset " + std::to_string(rho) + " coefficient " + std::to_string(d));
  }

  TopKQuasiPolynomial q = top_coefficients(ints({6, 2, 3}), 2);
  expect(evaluate_topk(q, Int(10)) == Rational(3), "count at t=10 is 3");

  StepPolynomial e1 = parse_step_polynomial("1/4 - 1/6*{-1/3*T} - 1/6*{1/2*T}");
  for (long t = 0; t <= 5; ++t)
    expect(q.coeff.at(1).evaluate(Int(t)) == e1.evaluate(Int(t)),
           "linear coefficient at T=" + std::to_string(t));
}

void crit7_knapsack_properties() {
  auto start = std::chrono::steady_clock::now();
  std::mt19937_64 rng(271828182);
  for (int trial = 0; trial < 30; ++trial) {
    std::vector<Int> a = random_knapsack_list(rng);
    long N = (long)a.size() - 1;
    Int big = 1;
    for (const auto& v : a) big = lcm(big, v);
    long period = big.get_si();

    for (int k = 0; k <= 2 && k <= (int)N; ++k) {
      TopKQuasiPolynomial q = top_coefficients(a, k);
      long order = N - k;

      if (k == 0) {
        Int denom = factorial(N);
        for (const auto& v : a) denom *= v;
        expect(q.coeff.at(N).is_constant(),
               "leading coefficient constant, trial " + std::to_string(trial));
        expect(q.coeff.at(N).evaluate(Int(0)) == make_rat(Int(1), denom),
               "leading coefficient value, trial " + std::to_string(trial));
      }

      /* Sampled cosets; the residual must drop to degree <= N-k-1 on each,
       * so finite differences of order N-k over stride lcm(a) vanish. */
      std::vector<long> cosets;
      if (period <= 48) {
        for (long rho = 0; rho < period; ++rho) cosets.push_back(rho);
      } else {
        std::set<long> seen;
        while (seen.size() < 48) seen.insert((long)(rng() % (unsigned long)period));
        cosets.assign(seen.begin(), seen.end());
      }

      long tmax = period * (order + 2);
      std::vector<Int> counts((size_t)tmax + 1, Int(0));
      counts[0] = 1;
      for (const auto& coin : a) {
        long c = coin.get_si();
        for (long t = c; t <= tmax; ++t)
          counts[(size_t)t] += counts[(size_t)(t - c)];
      }

      for (long rho : cosets) {
        std::vector<Rational> diff;
        for (long j = 0; j <= order + 1; ++j) {
          long t = rho + j * period;
          diff.push_back(Rational(counts[(size_t)t]) - evaluate_topk(q, Int(t)));
        }
        bool ok = true;
        if (order == 0) {
          for (const auto& d : diff) ok = ok && d == 0;
        } else {
          for (size_t lo = 0; ok && lo + (size_t)order < diff.size(); ++lo) {
            Rational fd = 0;
            for (long j = 0; j <= order; ++j) {
              Rational term = Rational(binomial(Int(order), j)) * diff[lo + (size_t)j];
              if ((order - j) % 2 == 1) term = -term;
              fd += term;
            }
            ok = fd == 0;
          }
        }
        expect(ok, "residual degree bound, trial " + std::to_string(trial) +
                       " k=" + std::to_string(k) + " coset " + std::to_string(rho));
        if (!ok) break;
      }
    }
  }
  expect(seconds_since(start) < 600.0, "knapsack property suite under 10 min");
}

void crit8_periodicity() {
  for (long m = 4; m <= 10; ++m) {
    std::vector<Int> a;
    for (long v = 1; v <= m; ++v) a.push_back(Int(v));
    FirstPeriodicReport rep = first_periodic_degree(a);
    long N = m - 1;
    expect(rep.ell == m / 2, "[1..m] ell for m=" + std::to_string(m));
    expect(N - (rep.ell - 1) == (m + 1) / 2,
           "[1..m] first periodic coefficient position for m=" + std::to_string(m));
  }

  FirstPeriodicReport fan =
      first_periodic_degree(ints({393764, 1078, 14641, 4913}));
  expect(fan.fan_values == ints({1, 11, 98}), "fan divisor values");
  expect(fan.fan_mobius.at(Int(1)) == -1, "fan weight at 1");
  expect(fan.fan_mobius.at(Int(11)) == 1, "fan weight at 11");
  expect(fan.fan_mobius.at(Int(98)) == 1, "fan weight at 98");
}

void crit9_mobius_goldens() {
  GcdPoset p1 = gcd_poset(ints({98, 59, 44, 100}), 1);
  expect(p1.values == ints({1, 2}), "[98,59,44,100] k=1 poset values");
  expect(p1.mobius.at(Int(1)) == 0, "[98,59,44,100] weight at 1");
  expect(p1.mobius.at(Int(2)) == 1, "[98,59,44,100] weight at 2");

  GcdPoset p2 = gcd_poset(ints({6, 2, 2, 3, 3}), 2);
  expect(p2.values == ints({1, 2, 3}), "[6,2,2,3,3] k=2 poset values");
  expect(p2.mobius.at(Int(3)) == 1, "[6,2,2,3,3] weight at 3");
  expect(p2.mobius.at(Int(2)) == 1, "[6,2,2,3,3] weight at 2");
  expect(p2.mobius.at(Int(1)) == -1, "[6,2,2,3,3] weight at 1");
}

void crit10_dlx() {
  auto start = std::chrono::steady_clock::now();
  using Rows = std::vector<std::vector<int>>;

  DlxMatrix worked(Rows{{2, 4}, {3, 5}, {1, 3}, {1, 2, 3}});
  auto sol = worked.search();
  expect(sol.has_value() && *sol == std::vector<int>{3, 4},
         "worked system selects rows 3 and 4");

  std::mt19937_64 rng(1414213);
  auto snapshot = [](const DlxMatrix& m) {
    return std::tuple(m.left(), m.right(), m.up(), m.down(), m.head());
  };
  int feasible_seen = 0;
  for (int trial = 0; trial < 500; ++trial) {
    int nrows = 1 + (int)(rng() % 8);
    int nvars = 12;
    Rows rows;
    bool any_empty = false;
    for (int r = 0; r < nrows; ++r) {
      int len = 1 + (int)(rng() % 4);
      std::set<int> row;
      while ((int)row.size() < len) row.insert(1 + (int)(rng() % nvars));
      rows.push_back(std::vector<int>(row.begin(), row.end()));
      any_empty = any_empty || rows.back().empty();
    }

    /* Exhaustive oracle: some variable subset hits every row exactly once. */
    std::vector<int> used;
    {
      std::set<int> u;
      for (const auto& r : rows) u.insert(r.begin(), r.end());
      used.assign(u.begin(), u.end());
    }
    auto exactly_once = [&rows](const std::set<int>& chosen) {
      for (const auto& r : rows) {
        int hits = 0;
        for (int v : r) hits += chosen.count(v);
        if (hits != 1) return false;
      }
      return true;
    };
    bool oracle = false;
    for (unsigned long mask = 0; mask < (1ul << used.size()) && !oracle; ++mask) {
      std::set<int> chosen;
      for (size_t i = 0; i < used.size(); ++i)
        if (mask & (1ul << i)) chosen.insert(used[i]);
      oracle = exactly_once(chosen);
    }

    DlxMatrix m(rows);
    auto before = snapshot(m);
    auto got = m.search();
    expect(snapshot(m) == before,
           "links restored after search, trial " + std::to_string(trial));
    expect(got.has_value() == oracle,
           "oracle verdict matches, trial " + std::to_string(trial));
    if (got) {
      ++feasible_seen;
      expect(exactly_once(std::set<int>(got->begin(), got->end())),
             "solution hits each row once, trial " + std::to_string(trial));
    }

    DlxMatrix m2(rows);
    expect(m2.search(DlxMatrix::RowPolicy::first_row).has_value() == oracle,
           "policy-independent verdict, trial " + std::to_string(trial));
  }
  expect(feasible_seen > 20, "random suite exercises feasible systems");
  expect(seconds_since(start) < 60.0, "exact cover suite under 1 min");
}

void crit11_disclosure() {
  /* Large-scale studies are out of scope for this build: the dimension-50
   * timing tables and the dimension-7 histogram sweeps are not reproduced.
   * The randomized suites of criteria 3 and 7 stand in for them at desk
   * scale. Nothing to compute; this line records the substitution. */
}

struct Criterion {
  const char* label;
  void (*body)();
};

}  // namespace

int main() {
  const Criterion criteria[] = {
      {"1 pentagon integrals", crit1_pentagon},
      {"2 worked micro-integrals", crit2_micro_integrals},
      {"3 method equivalence on random polytopes", crit3_method_equivalence},
      {"4 positivity decompositions and the feasibility frontier", crit4_handelman},
      {"5 optimization bound tables", crit5_optimization_tables},
      {"6 knapsack worked example", crit6_knapsack_golden},
      {"7 knapsack residual properties", crit7_knapsack_properties},
      {"8 first periodic coefficient", crit8_periodicity},
      {"9 poset weight goldens", crit9_mobius_goldens},
      {"10 exact cover search", crit10_dlx},
      {"11 scale disclosure: dimension-50 timings and dimension-7 histograms "
       "not reproduced; suites 3 and 7 substitute",
       crit11_disclosure},
  };

  int failed = 0;
  for (const Criterion& c : criteria) {
    g_failures = 0;
    g_notes.clear();
    try {
      c.body();
    } catch (const std::exception& e) {
      expect(false, std::string("unexpected exception: ") + e.what());
    }
    std::printf("%-4s %s\n", g_failures == 0 ? "PASS" : "FAIL", c.label);
    for (const auto& note : g_notes) std::printf("       - %s\n", note.c_str());
    if (g_failures != 0) ++failed;
  }
  if (failed != 0) std::printf("%d criterion(s) failed\n", failed);
  return failed == 0 ? 0 : 1;
}
