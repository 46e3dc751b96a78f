#include "pk/handelman.hh"

#include <algorithm>
#include <functional>
#include <map>
#include <string>

#include "pk/errors.hh"
#include "pk/integrate.hh"

namespace pk {

namespace {

std::vector<std::vector<int>> bounded_exponents(int n, int max_deg) {
  std::vector<std::vector<int>> out;
  std::vector<int> p((size_t)n, 0);
  std::function<void(int, int)> rec = [&](int pos, int left) {
    if (pos == n) {
      out.push_back(p);
      return;
    }
    for (int e = 0; e <= left; ++e) {
      p[(size_t)pos] = e;
      rec(pos + 1, left - e);
    }
    p[(size_t)pos] = 0;
  };
  rec(0, max_deg);
  return out;
}

SparsePolynomial facet_polynomial(const Mat& A, const Vec& b, size_t i, int d) {
  SparsePolynomial g(d);
  g.insert(ExpVec((size_t)d, 0), b[i]);
  for (int j = 0; j < d; ++j) {
    if (A[i][(size_t)j] == 0) continue;
    ExpVec e((size_t)d, 0);
    e[(size_t)j] = 1;
    g.insert(e, -A[i][(size_t)j]);
  }
  return g;
}

/* g^alpha for every alpha in order, each extended from a predecessor with
 * one exponent lowered. */
std::vector<SparsePolynomial> alpha_powers(const std::vector<std::vector<int>>& alphas,
                                           const std::vector<SparsePolynomial>& g,
                                           int d) {
  std::map<std::vector<int>, size_t> where;
  for (size_t j = 0; j < alphas.size(); ++j) where[alphas[j]] = j;
  std::vector<SparsePolynomial> out;
  for (size_t j = 0; j < alphas.size(); ++j) {
    const auto& a = alphas[j];
    int i = -1;
    for (size_t s = 0; s < a.size(); ++s)
      if (a[s] > 0) {
        i = (int)s;
        break;
      }
    if (i < 0) {
      SparsePolynomial one(d);
      one.insert(ExpVec((size_t)d, 0), 1);
      out.push_back(one);
      continue;
    }
    std::vector<int> parent = a;
    --parent[(size_t)i];
    out.push_back(mul(out[where.at(parent)], g[(size_t)i]));
  }
  return out;
}

/* Shared builder. The decomposition form matches f + s = sum c_alpha
 * g^alpha and minimizes s + sum c_alpha; the bound form matches
 * lambda - f = sum c_alpha g^alpha and minimizes lambda. */
ExactLp build_lp_impl(const SparsePolynomial& f, const Polytope& P, int t,
                      bool bound_form, bool with_shift) {
  int d = P.dim();
  if (f.dim() != d) throw domain_error("handelman: polynomial dimension mismatch");
  if (t < 0 || (!bound_form && (long)t < f.total_degree()))
    throw domain_error("handelman: degree below the degree of the polynomial");

  int n = (int)P.A().size();
  auto alphas = bounded_exponents(n, t);
  std::vector<SparsePolynomial> g;
  for (size_t i = 0; i < (size_t)n; ++i)
    g.push_back(facet_polynomial(P.A(), P.b(), i, d));
  auto powers = alpha_powers(alphas, g, d);

  int row_deg = (int)std::max<long>(t, f.total_degree());
  auto monomials = bounded_exponents(d, row_deg);
  size_t cols = alphas.size() + (with_shift ? 1 : 0);

  ExactLp lp;
  lp.A.assign(monomials.size(), Vec(cols, Rational(0)));
  lp.b.assign(monomials.size(), Rational(0));
  for (size_t r = 0; r < monomials.size(); ++r) {
    for (size_t j = 0; j < alphas.size(); ++j)
      lp.A[r][j] = powers[j].coeff(monomials[r]);
    lp.b[r] = bound_form ? Rational(-f.coeff(monomials[r])) : f.coeff(monomials[r]);
  }
  if (with_shift) lp.A[0][cols - 1] = -1;  // constant row is enumerated first

  lp.c.assign(cols, Rational(0));
  if (!bound_form)
    for (size_t j = 0; j < alphas.size(); ++j) lp.c[j] = 1;
  if (with_shift) lp.c[cols - 1] = 1;
  lp.nonneg.assign(cols, true);
  if (with_shift) lp.nonneg[cols - 1] = false;
  return lp;
}

std::optional<HandelmanDecomposition> try_decompose(const SparsePolynomial& f,
                                                    const Polytope& P, int t,
                                                    bool force_shift_zero) {
  if (!P.full_dimensional())
    throw domain_error("handelman: polytope needs a nonempty interior");
  ExactLp lp = build_lp_impl(f, P, t, false, !force_shift_zero);
  LpSolution sol = solve_lp_exact(lp);
  if (sol.status == LpStatus::infeasible) return std::nullopt;
  if (sol.status == LpStatus::unbounded)
    throw domain_error("handelman: relaxation unbounded");
  HandelmanDecomposition D;
  D.degree = t;
  auto alphas = handelman_alphas((int)P.A().size(), t);
  for (size_t j = 0; j < alphas.size(); ++j)
    if (sol.x[j] != 0) D.terms[alphas[j]] = sol.x[j];
  D.shift = force_shift_zero ? Rational(0) : sol.x.back();
  D.facet_A = P.A();
  D.facet_b = P.b();
  return D;
}

}  // namespace

std::vector<std::vector<int>> handelman_alphas(int n, int t) {
  return bounded_exponents(n, t);
}

ExactLp build_lp(const SparsePolynomial& f, const Polytope& P, int t) {
  return build_lp_impl(f, P, t, false, true);
}

HandelmanDecomposition handelman_decompose(const SparsePolynomial& f,
                                           const Polytope& P, int t,
                                           bool force_shift_zero) {
  auto D = try_decompose(f, P, t, force_shift_zero);
  if (!D)
    throw domain_error("handelman: no degree-" + std::to_string(t) +
                       " decomposition" + (force_shift_zero ? " with zero shift" : ""));
  return *D;
}

SparsePolynomial expand_decomposition(const HandelmanDecomposition& D) {
  int d = (int)(D.facet_A.empty() ? 0 : D.facet_A[0].size());
  SparsePolynomial total(d);
  for (const auto& [alpha, c] : D.terms) {
    SparsePolynomial term(d);
    term.insert(ExpVec((size_t)d, 0), c);
    for (size_t i = 0; i < alpha.size(); ++i) {
      if (alpha[i] == 0) continue;
      term = mul(term, pow_expand(facet_polynomial(D.facet_A, D.facet_b, i, d),
                                  alpha[i]));
    }
    total = add(total, term);
  }
  return total;
}

std::optional<Rational> handelman_bound(const SparsePolynomial& f,
                                        const Polytope& P, int t) {
  if (!P.full_dimensional())
    throw domain_error("handelman: polytope needs a nonempty interior");
  ExactLp lp = build_lp_impl(f, P, t, true, true);
  LpSolution sol = solve_lp_exact(lp);
  if (sol.status == LpStatus::infeasible) return std::nullopt;
  if (sol.status == LpStatus::unbounded)
    throw domain_error("handelman: bound relaxation unbounded");
  return sol.value;
}

std::pair<Rational, Rational> integrate_via_handelman(const SparsePolynomial& f,
                                                      const Polytope& P, long k,
                                                      int degree_cap) {
  if (k < 0) throw domain_error("handelman: negative power");
  int t0 = (int)f.total_degree();
  int cap = degree_cap < 0 ? t0 + 4 : degree_cap;
  if (cap < t0) throw domain_error("handelman: degree cap below the degree of f");
  std::optional<HandelmanDecomposition> D;
  for (int t = t0; t <= cap && !D; ++t) D = try_decompose(f, P, t, false);
  if (!D)
    throw domain_error("handelman: no decomposition up to degree " +
                       std::to_string(cap));

  size_t n = P.A().size();
  std::vector<AffineFactor> factors;
  for (size_t i = 0; i < n; ++i) {
    Vec ell((size_t)P.dim());
    for (int j = 0; j < P.dim(); ++j) ell[(size_t)j] = -P.A()[i][(size_t)j];
    factors.push_back({ell, P.b()[i]});
  }
  AffineTable table = integrate_affine_products_cone(P, factors, D->degree * (int)k);

  std::vector<std::pair<std::vector<int>, Rational>> parts(D->terms.begin(),
                                                           D->terms.end());
  Rational value = 0;
  std::vector<int> beta((size_t)n, 0);
  /* Multinomial expansion of (sum_j c_j g^{alpha_j})^k; every summand is a
   * coefficient times g^beta, read off the shared table. */
  std::function<void(size_t, long, Rational)> rec = [&](size_t idx, long left,
                                                        Rational coef) {
    if (idx == parts.size()) {
      if (left != 0) return;
      Rational betafact = 1;
      for (int e : beta) betafact *= Rational(factorial(e));
      value += coef * betafact * table.at(beta);
      return;
    }
    Rational step = coef;
    for (long kk = 0; kk <= left; ++kk) {
      if (kk > 0) {
        step *= parts[idx].second;
        step /= Rational(kk);
        for (size_t i = 0; i < beta.size(); ++i)
          beta[i] += parts[idx].first[i];
      }
      rec(idx + 1, left - kk, step);
    }
    for (long kk = 1; kk <= left; ++kk)
      for (size_t i = 0; i < beta.size(); ++i) beta[i] -= parts[idx].first[i];
  };
  rec(0, k, Rational(factorial(k)));
  return {D->shift, value};
}

}  // namespace pk
