#include "pk/lp.hh"

#include <cstddef>

#include "pk/errors.hh"

namespace pk {

namespace {

/* Dense tableau in canonical form: every basis column is a unit column and
 * the cost row holds reduced costs. rows[i] has width() entries, the last
 * one the right-hand side. */
struct Tableau {
  Mat rows;
  Vec cost;  // reduced costs + (-objective) in the last slot
  std::vector<size_t> basis;
  size_t ncols = 0;  // structural columns, excluding the rhs slot

  size_t width() const { return ncols + 1; }

  void pivot(size_t r, size_t e) {
    Rational p = rows[r][e];
    for (auto& v : rows[r]) v /= p;
    for (size_t i = 0; i < rows.size(); ++i) {
      if (i == r || rows[i][e] == 0) continue;
      Rational f = rows[i][e];
      for (size_t j = 0; j < width(); ++j) rows[i][j] -= f * rows[r][j];
    }
    if (cost[e] != 0) {
      Rational f = cost[e];
      for (size_t j = 0; j < width(); ++j) cost[j] -= f * rows[r][j];
    }
    basis[r] = e;
  }

  /* Bland: lowest-index entering column with a negative reduced cost,
   * lowest-basis-index leaving row among the ratio-test ties. */
  LpStatus iterate(size_t allowed_cols) {
    for (;;) {
      size_t enter = allowed_cols;
      for (size_t j = 0; j < allowed_cols; ++j)
        if (cost[j] < 0) {
          enter = j;
          break;
        }
      if (enter == allowed_cols) return LpStatus::optimal;
      bool have = false;
      size_t leave = 0;
      Rational best;
      for (size_t i = 0; i < rows.size(); ++i) {
        if (rows[i][enter] <= 0) continue;
        Rational ratio = rows[i][ncols] / rows[i][enter];
        if (!have || ratio < best ||
            (ratio == best && basis[i] < basis[leave])) {
          have = true;
          best = ratio;
          leave = i;
        }
      }
      if (!have) return LpStatus::unbounded;
      pivot(leave, enter);
    }
  }
};

}  // namespace

LpSolution solve_lp_exact(const ExactLp& lp) {
  size_t m = lp.A.size();
  size_t n = lp.c.size();
  if (lp.b.size() != m || lp.nonneg.size() != n)
    throw domain_error("lp: inconsistent dimensions");
  for (const auto& row : lp.A)
    if (row.size() != n) throw domain_error("lp: inconsistent dimensions");

  /* Free variables are split into differences of nonnegative parts. */
  std::vector<size_t> pos(n), neg(n, SIZE_MAX);
  size_t ns = 0;
  for (size_t j = 0; j < n; ++j) {
    pos[j] = ns++;
    if (!lp.nonneg[j]) neg[j] = ns++;
  }

  Tableau T;
  T.ncols = ns + m;  // structural then one artificial per row
  T.rows.assign(m, Vec(T.width(), Rational(0)));
  T.basis.resize(m);
  for (size_t i = 0; i < m; ++i) {
    int flip = lp.b[i] < 0 ? -1 : 1;
    for (size_t j = 0; j < n; ++j) {
      T.rows[i][pos[j]] = flip * lp.A[i][j];
      if (neg[j] != SIZE_MAX) T.rows[i][neg[j]] = -flip * lp.A[i][j];
    }
    T.rows[i][ns + i] = 1;
    T.rows[i][T.ncols] = flip * lp.b[i];
    T.basis[i] = ns + i;
  }

  /* Phase one: minimize the artificial sum, written in reduced form against
   * the artificial basis. */
  T.cost.assign(T.width(), Rational(0));
  for (size_t i = 0; i < m; ++i)
    for (size_t j = 0; j <= T.ncols; ++j) T.cost[j] -= T.rows[i][j];
  for (size_t i = 0; i < m; ++i) T.cost[ns + i] = 0;
  T.iterate(T.ncols);

  LpSolution out;
  if (-T.cost[T.ncols] > 0) {
    out.status = LpStatus::infeasible;
    return out;
  }

  /* Remove artificials still sitting in the basis: pivot them onto any
   * structural column of their row, or drop the row as redundant. */
  for (size_t i = T.rows.size(); i-- > 0;) {
    if (T.basis[i] < ns) continue;
    size_t e = ns;
    for (size_t j = 0; j < ns; ++j)
      if (T.rows[i][j] != 0) {
        e = j;
        break;
      }
    if (e < ns) {
      T.pivot(i, e);
      continue;
    }
    T.rows.erase(T.rows.begin() + (long)i);
    T.basis.erase(T.basis.begin() + (long)i);
  }

  /* Phase two: the real objective, reduced against the current basis. */
  T.cost.assign(T.width(), Rational(0));
  for (size_t j = 0; j < n; ++j) {
    T.cost[pos[j]] = lp.c[j];
    if (neg[j] != SIZE_MAX) T.cost[neg[j]] = -lp.c[j];
  }
  for (size_t i = 0; i < T.rows.size(); ++i) {
    if (T.cost[T.basis[i]] == 0) continue;
    Rational f = T.cost[T.basis[i]];
    for (size_t j = 0; j < T.width(); ++j) T.cost[j] -= f * T.rows[i][j];
  }
  LpStatus st = T.iterate(ns);
  if (st == LpStatus::unbounded) {
    out.status = LpStatus::unbounded;
    return out;
  }

  Vec xs(ns, Rational(0));
  for (size_t i = 0; i < T.rows.size(); ++i)
    if (T.basis[i] < ns) xs[T.basis[i]] = T.rows[i][T.ncols];
  out.status = LpStatus::optimal;
  out.x.resize(n);
  for (size_t j = 0; j < n; ++j) {
    out.x[j] = xs[pos[j]];
    if (neg[j] != SIZE_MAX) out.x[j] -= xs[neg[j]];
  }
  out.value = dot(lp.c, out.x);
  return out;
}

}  // namespace pk
