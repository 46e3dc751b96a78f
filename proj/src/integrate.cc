#include "pk/integrate.hh"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <functional>
#include <mutex>
#include <thread>
#include <utility>

#include "pk/errors.hh"
#include "pk/series.hh"

namespace pk {

namespace {

Rational dot_qi(const Vec& q, const IVec& z) {
  Rational s = 0;
  for (size_t i = 0; i < q.size(); ++i) s += q[i] * Rational(z[i]);
  return s;
}

Int dot_ii(const IVec& a, const IVec& b) {
  Int s = 0;
  for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

/* |det(s_1 - s_0, ..., s_d - s_0)| = d! vol of the simplex. */
Rational simplex_scaled_volume(const std::vector<Vec>& vertices) {
  if (vertices.empty()) throw domain_error("integrate: empty vertex list");
  size_t d = vertices[0].size();
  if (d == 0 || vertices.size() != d + 1)
    throw domain_error("integrate: a simplex in dimension d needs d+1 vertices");
  for (const auto& v : vertices)
    if (v.size() != d) throw domain_error("integrate: vertex dimension mismatch");
  std::vector<Vec> edges;
  for (size_t i = 1; i <= d; ++i) {
    Vec e(d);
    for (size_t j = 0; j < d; ++j) e[j] = vertices[i][j] - vertices[0][j];
    edges.push_back(e);
  }
  Rational det = rat_det(mat_from_columns(edges));
  if (det == 0) throw domain_error("integrate: degenerate simplex");
  return abs(det);
}

struct PoleGroup {
  Rational value;
  long mult = 0;
};

/* Distinct vertex pairings with multiplicities, grouped in the encounter
 * order of the requested scan direction. */
std::vector<PoleGroup> group_poles(const std::vector<Rational>& values,
                                   PoleChoice pole) {
  std::vector<size_t> order(values.size());
  for (size_t i = 0; i < order.size(); ++i) order[i] = i;
  if (pole == PoleChoice::last) std::reverse(order.begin(), order.end());
  std::vector<PoleGroup> groups;
  for (size_t i : order) {
    bool found = false;
    for (auto& g : groups)
      if (g.value == values[i]) {
        ++g.mult;
        found = true;
        break;
      }
    if (!found) groups.push_back({values[i], 1});
  }
  return groups;
}

Rational plf_scale(long power, size_t d) {
  return make_rat(factorial(power), factorial(power + (long)d));
}

std::vector<int> zero_key(int len) { return std::vector<int>(len, 0); }

/* Evaluate f(0), ..., f(n-1) into a vector, optionally on several threads.
 * Slots are independent objects and the final order is fixed, so the
 * reduction later on is deterministic. */
std::vector<Rational> map_indexed(long n, int jobs,
                                  const std::function<Rational(long)>& f) {
  std::vector<Rational> out((size_t)n);
  if (jobs <= 1 || n <= 1) {
    for (long i = 0; i < n; ++i) out[(size_t)i] = f(i);
    return out;
  }
  long workers = std::min<long>(jobs, n);
  std::atomic<long> next{0};
  std::mutex err_mu;
  std::exception_ptr err;
  std::vector<std::thread> pool;
  for (long w = 0; w < workers; ++w)
    pool.emplace_back([&]() {
      for (;;) {
        long i = next.fetch_add(1);
        if (i >= n) return;
        try {
          out[(size_t)i] = f(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(err_mu);
          if (!err) err = std::current_exception();
          return;
        }
      }
    });
  for (auto& t : pool) t.join();
  if (err) std::rethrow_exception(err);
  return out;
}

Rational ordered_sum(const std::vector<Rational>& terms) {
  Rational s = 0;
  for (const auto& t : terms) s += t;
  return s;
}

struct VertexCones {
  std::vector<SimplicialCone> cones;
  IVec perturb;  // pairs nonzero with every ray above
};

VertexCones polytope_vertex_cones(const Polytope& P) {
  VertexCones out;
  std::vector<IVec> all_rays;
  for (const auto& v : P.vertices()) {
    auto pieces = triangulate_cone(v, tangent_cone(P, v));
    for (auto& C : pieces) {
      for (const auto& u : C.rays) all_rays.push_back(u);
      out.cones.push_back(std::move(C));
    }
  }
  out.perturb = find_regular_vector(P.dim(), all_rays);
  return out;
}

void enumerate_exponents(int n, int max_deg,
                         const std::function<void(const std::vector<int>&)>& fn) {
  std::vector<int> p((size_t)n, 0);
  std::function<void(int, int)> rec = [&](int pos, int left) {
    if (pos == n) {
      fn(p);
      return;
    }
    for (int e = 0; e <= left; ++e) {
      p[(size_t)pos] = e;
      rec(pos + 1, left - e);
    }
    p[(size_t)pos] = 0;
  };
  rec(0, max_deg);
}

TruncatedSeries one_series(int nvars, int max_deg, bool laurent = false,
                           int cap = INT_MAX) {
  TruncatedSeries s(nvars, max_deg, laurent, cap);
  s.add_term(zero_key(s.key_len()), 1);
  return s;
}

}  // namespace

std::vector<Rational> plf_simplex_pole_terms(const std::vector<Vec>& vertices,
                                             const Vec& ell, long power,
                                             PoleChoice pole) {
  simplex_scaled_volume(vertices);  // validates the simplex
  size_t d = vertices[0].size();
  if (ell.size() != d) throw domain_error("integrate: linear form dimension mismatch");
  if (power < 0) throw domain_error("integrate: negative power");
  std::vector<Rational> values;
  for (const auto& s : vertices) values.push_back(dot(ell, s));
  auto groups = group_poles(values, pole);
  long n = power + (long)d;
  std::vector<Rational> terms;
  for (size_t k = 0; k < groups.size(); ++k) {
    int cap = (int)groups[k].mult - 1;
    TruncatedSeries S = affine_power(groups[k].value, 1, n, cap);
    for (size_t i = 0; i < groups.size(); ++i) {
      if (i == k) continue;
      S = mul(S, affine_inverse_power(groups[k].value - groups[i].value, 1,
                                      groups[i].mult, cap));
    }
    terms.push_back(residue_coeff(S, cap));
  }
  return terms;
}

Rational integrate_plf_simplex(const std::vector<Vec>& vertices, const Vec& ell,
                               long power, PoleChoice pole) {
  Rational dvol = simplex_scaled_volume(vertices);
  Rational total = ordered_sum(plf_simplex_pole_terms(vertices, ell, power, pole));
  return dvol * plf_scale(power, vertices[0].size()) * total;
}

Rational integrate_plf_cone(const SimplicialCone& cone, const Vec& ell,
                            long power, const IVec& perturb) {
  size_t d = cone.apex.size();
  if (cone.rays.size() != d || cone.det == 0)
    throw domain_error("integrate: tangent cone is not simplicial and full-dimensional");
  if (ell.size() != d || perturb.size() != d)
    throw domain_error("integrate: linear form dimension mismatch");
  if (power < 0) throw domain_error("integrate: negative power");

  std::vector<size_t> vanishing, active;
  for (size_t i = 0; i < d; ++i) {
    if (dot_qi(ell, cone.rays[i]) == 0)
      vanishing.push_back(i);
    else
      active.push_back(i);
  }
  int q = (int)vanishing.size();
  Rational prefactor = 1;
  for (size_t i : vanishing) {
    Int p = dot_ii(perturb, cone.rays[i]);
    if (p == 0)
      throw domain_error("integrate: perturbation vector vanishes on a cone ray");
    prefactor *= make_rat(Int(-1), p);
  }
  TruncatedSeries S =
      affine_power(dot(ell, cone.apex), dot(to_rational(perturb), cone.apex),
                   power + (long)d, q);
  for (size_t i : active)
    S = mul(S, affine_inverse_power(-dot_qi(ell, cone.rays[i]),
                                    Rational(-dot_ii(perturb, cone.rays[i])), 1, q));
  Rational res = residue_coeff(S, q);
  Rational value = plf_scale(power, d) * Rational(abs(cone.det)) * prefactor * res;
  if (cone.sign < 0) value = -value;
  return value;
}

IntegrationResult integrate_plf_polytope(const Polytope& P, const Vec& ell,
                                         long power, IntegrationMethod method,
                                         int jobs) {
  if ((int)ell.size() != P.dim())
    throw domain_error("integrate: linear form dimension mismatch");
  IntegrationResult out;
  out.method = method;
  if (method == IntegrationMethod::triangulation) {
    auto simplices = triangulate_polytope(P);
    out.term_count = (long)simplices.size();
    auto terms = map_indexed(out.term_count, jobs, [&](long i) {
      return integrate_plf_simplex(simplices[(size_t)i], ell, power);
    });
    out.value = ordered_sum(terms);
  } else {
    auto vc = polytope_vertex_cones(P);
    out.term_count = (long)vc.cones.size();
    auto terms = map_indexed(out.term_count, jobs, [&](long i) {
      return integrate_plf_cone(vc.cones[(size_t)i], ell, power, vc.perturb);
    });
    out.value = ordered_sum(terms);
  }
  return out;
}

Rational integrate_polynomial(const Polytope& P, const SparsePolynomial& f,
                              IntegrationMethod method, int jobs) {
  if (f.dim() != P.dim())
    throw domain_error("integrate: polynomial dimension mismatch");
  auto parts = to_linear_forms(f);
  if (parts.empty()) return 0;
  if (method == IntegrationMethod::triangulation) {
    auto simplices = triangulate_polytope(P);
    long n = (long)(parts.size() * simplices.size());
    auto terms = map_indexed(n, jobs, [&](long i) -> Rational {
      const auto& t = parts[(size_t)i / simplices.size()];
      const auto& S = simplices[(size_t)i % simplices.size()];
      return t.coeff * integrate_plf_simplex(S, t.ell, t.power);
    });
    return ordered_sum(terms);
  }
  auto vc = polytope_vertex_cones(P);
  long n = (long)(parts.size() * vc.cones.size());
  auto terms = map_indexed(n, jobs, [&](long i) -> Rational {
    const auto& t = parts[(size_t)i / vc.cones.size()];
    const auto& C = vc.cones[(size_t)i % vc.cones.size()];
    return t.coeff * integrate_plf_cone(C, t.ell, t.power, vc.perturb);
  });
  return ordered_sum(terms);
}

AffineTable integrate_affine_products_simplex(
    const std::vector<Vec>& vertices, const std::vector<AffineFactor>& factors,
    int max_deg) {
  Rational dvol = simplex_scaled_volume(vertices);
  size_t d = vertices[0].size();
  int n = (int)factors.size();
  if (max_deg < 0) throw domain_error("integrate: negative degree bound");
  for (const auto& f : factors)
    if (f.ell.size() != d)
      throw domain_error("integrate: affine factor dimension mismatch");

  /* Grouped by total degree m, the vertex pairings contribute the complete
   * homogeneous sums; the truncated product of geometric series collects
   * exactly those. */
  TruncatedSeries G = one_series(n, max_deg);
  for (const auto& s : vertices) {
    Vec lam((size_t)n);
    for (int j = 0; j < n; ++j) lam[(size_t)j] = dot(factors[(size_t)j].ell, s);
    TruncatedSeries lin = linear_series(lam, max_deg);
    TruncatedSeries geo = one_series(n, max_deg);
    TruncatedSeries pw = one_series(n, max_deg);
    for (int k = 1; k <= max_deg; ++k) {
      pw = mul(pw, lin);
      if (pw.is_zero()) break;
      geo += pw;
    }
    G = mul(G, geo);
  }
  TruncatedSeries S(n, max_deg);
  for (const auto& [key, c] : G.terms()) {
    long m = 0;
    for (int e : key) m += e;
    S.add_term(key, c / Rational(factorial(m + (long)d)));
  }
  Vec shifts((size_t)n);
  for (int j = 0; j < n; ++j) shifts[(size_t)j] = factors[(size_t)j].r;
  TruncatedSeries F = mul(S, exp_linear(shifts, max_deg));
  F.scale(dvol);

  AffineTable table;
  enumerate_exponents(n, max_deg,
                      [&](const std::vector<int>& p) { table[p] = F.coeff(p); });
  return table;
}

AffineTable integrate_affine_products_cone(
    const Polytope& P, const std::vector<AffineFactor>& factors, int max_deg) {
  int d = P.dim();
  int n = (int)factors.size();
  if (max_deg < 0) throw domain_error("integrate: negative degree bound");
  for (const auto& f : factors)
    if ((int)f.ell.size() != d)
      throw domain_error("integrate: affine factor dimension mismatch");

  auto vc = polytope_vertex_cones(P);
  /* The auxiliary variable tracks the extra linear form that is regular on
   * every tangent-cone ray; only its zeroth power survives. */
  const IVec& aux = vc.perturb;
  int cap = d * (max_deg + 1);

  TruncatedSeries total(n, max_deg);
  for (const auto& C : vc.cones) {
    Vec expc((size_t)n);
    for (int j = 0; j < n; ++j)
      expc[(size_t)j] = dot(factors[(size_t)j].ell, C.apex) + factors[(size_t)j].r;
    TruncatedSeries A = exp_linear(expc, max_deg, true, cap);
    for (int i = 0; i < d; ++i) {
      const IVec& u = C.rays[(size_t)i];
      Rational beta(dot_ii(aux, u));
      Vec bc((size_t)n);
      for (int j = 0; j < n; ++j) bc[(size_t)j] = dot_qi(factors[(size_t)j].ell, u);
      /* 1/(-<b,t> - beta tau) expanded around tau = infinity. */
      TruncatedSeries h(n, max_deg, true, cap);
      TruncatedSeries lin = linear_series(bc, max_deg, true, cap);
      TruncatedSeries pw = one_series(n, max_deg, true, cap);
      for (int k = 0; k <= max_deg; ++k) {
        TruncatedSeries t = pw;
        t.scale(((k & 1) ? Rational(1) : Rational(-1)) * pow_rat(beta, -(long)(k + 1)));
        t.shift_laurent(-(k + 1));
        h += t;
        if (k < max_deg) {
          pw = mul(pw, lin);
          if (pw.is_zero()) break;
        }
      }
      A = mul(A, h);
    }
    TruncatedSeries arg(n, max_deg, true, cap);
    std::vector<int> tau_key = zero_key(n + 1);
    tau_key[(size_t)n] = 1;
    arg.add_term(tau_key, dot(to_rational(aux), C.apex));
    A = mul(A, exp_series(arg));
    TruncatedSeries piece = laurent_coeff(A, 0);
    piece.scale(Rational(abs(C.det)));
    total += piece;
  }

  AffineTable table;
  enumerate_exponents(n, max_deg,
                      [&](const std::vector<int>& p) { table[p] = total.coeff(p); });
  return table;
}

}  // namespace pk
