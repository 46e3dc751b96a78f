#include "pk/linalg.hh"

#include <algorithm>

namespace pk {

Rational dot(const Vec& a, const Vec& b) {
  if (a.size() != b.size()) throw domain_error("dot arity mismatch");
  Rational s(0);
  for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

Vec matvec(const Mat& A, const Vec& x) {
  Vec y(A.size());
  for (size_t i = 0; i < A.size(); ++i) y[i] = dot(A[i], x);
  return y;
}

Mat mat_from_columns(const std::vector<Vec>& cols) {
  if (cols.empty()) return {};
  size_t m = cols[0].size();
  Mat A(m, Vec(cols.size()));
  for (size_t j = 0; j < cols.size(); ++j) {
    if (cols[j].size() != m) throw domain_error("ragged column list");
    for (size_t i = 0; i < m; ++i) A[i][j] = cols[j][i];
  }
  return A;
}

Rational rat_det(Mat A) {
  size_t n = A.size();
  for (const auto& row : A)
    if (row.size() != n) throw domain_error("determinant of non-square matrix");
  Rational det(1);
  for (size_t c = 0; c < n; ++c) {
    size_t p = c;
    while (p < n && A[p][c] == 0) ++p;
    if (p == n) return Rational(0);
    if (p != c) {
      std::swap(A[p], A[c]);
      det = -det;
    }
    det *= A[c][c];
    for (size_t r = c + 1; r < n; ++r) {
      if (A[r][c] == 0) continue;
      Rational f = A[r][c] / A[c][c];
      for (size_t k = c; k < n; ++k) A[r][k] -= f * A[c][k];
    }
  }
  return det;
}

int rat_rank(Mat A) {
  if (A.empty()) return 0;
  size_t rows = A.size(), cols = A[0].size(), r = 0;
  for (size_t c = 0; c < cols && r < rows; ++c) {
    size_t p = r;
    while (p < rows && A[p][c] == 0) ++p;
    if (p == rows) continue;
    std::swap(A[p], A[r]);
    for (size_t i = r + 1; i < rows; ++i) {
      if (A[i][c] == 0) continue;
      Rational f = A[i][c] / A[r][c];
      for (size_t k = c; k < cols; ++k) A[i][k] -= f * A[r][k];
    }
    ++r;
  }
  return static_cast<int>(r);
}

std::optional<Vec> rat_solve(Mat A, Vec b) {
  size_t n = A.size();
  if (b.size() != n) throw domain_error("solve arity mismatch");
  for (const auto& row : A)
    if (row.size() != n) throw domain_error("solve needs a square matrix");
  for (size_t c = 0; c < n; ++c) {
    size_t p = c;
    while (p < n && A[p][c] == 0) ++p;
    if (p == n) return std::nullopt;
    std::swap(A[p], A[c]);
    std::swap(b[p], b[c]);
    for (size_t r = 0; r < n; ++r) {
      if (r == c || A[r][c] == 0) continue;
      Rational f = A[r][c] / A[c][c];
      for (size_t k = c; k < n; ++k) A[r][k] -= f * A[c][k];
      b[r] -= f * b[c];
    }
  }
  Vec x(n);
  for (size_t i = 0; i < n; ++i) x[i] = b[i] / A[i][i];
  return x;
}

std::optional<Mat> rat_inverse(const Mat& A) {
  size_t n = A.size();
  Mat work = A;
  Mat inv(n, Vec(n, Rational(0)));
  for (size_t i = 0; i < n; ++i) inv[i][i] = 1;
  for (size_t c = 0; c < n; ++c) {
    size_t p = c;
    while (p < n && work[p][c] == 0) ++p;
    if (p == n) return std::nullopt;
    std::swap(work[p], work[c]);
    std::swap(inv[p], inv[c]);
    Rational piv = work[c][c];
    for (size_t k = 0; k < n; ++k) {
      work[c][k] /= piv;
      inv[c][k] /= piv;
    }
    for (size_t r = 0; r < n; ++r) {
      if (r == c || work[r][c] == 0) continue;
      Rational f = work[r][c];
      for (size_t k = 0; k < n; ++k) {
        work[r][k] -= f * work[c][k];
        inv[r][k] -= f * inv[c][k];
      }
    }
  }
  return inv;
}

std::vector<Vec> rat_nullspace(const Mat& A) {
  if (A.empty()) return {};
  size_t rows = A.size(), cols = A[0].size();
  Mat R = A;
  std::vector<int> pivot_col;
  size_t r = 0;
  for (size_t c = 0; c < cols && r < rows; ++c) {
    size_t p = r;
    while (p < rows && R[p][c] == 0) ++p;
    if (p == rows) continue;
    std::swap(R[p], R[r]);
    Rational piv = R[r][c];
    for (size_t k = 0; k < cols; ++k) R[r][k] /= piv;
    for (size_t i = 0; i < rows; ++i) {
      if (i == r || R[i][c] == 0) continue;
      Rational f = R[i][c];
      for (size_t k = 0; k < cols; ++k) R[i][k] -= f * R[r][k];
    }
    pivot_col.push_back(static_cast<int>(c));
    ++r;
  }
  std::vector<bool> is_pivot(cols, false);
  for (int c : pivot_col) is_pivot[static_cast<size_t>(c)] = true;
  std::vector<Vec> basis;
  for (size_t free = 0; free < cols; ++free) {
    if (is_pivot[free]) continue;
    Vec v(cols, Rational(0));
    v[free] = 1;
    for (size_t i = 0; i < pivot_col.size(); ++i)
      v[static_cast<size_t>(pivot_col[i])] = -R[i][free];
    basis.push_back(std::move(v));
  }
  return basis;
}

Mat to_rational(const IMat& A) {
  Mat R(A.size());
  for (size_t i = 0; i < A.size(); ++i)
    R[i] = Vec(A[i].begin(), A[i].end());
  return R;
}

Vec to_rational(const IVec& v) { return Vec(v.begin(), v.end()); }

Int int_det(const IMat& A) {
  Rational d = rat_det(to_rational(A));
  if (d.get_den() != 1) throw domain_error("non-integer determinant");
  return d.get_num();
}

HnfResult hnf(const IMat& A) {
  size_t m = A.size();
  if (m == 0) throw domain_error("hnf of empty matrix");
  size_t n = A[0].size();
  for (const auto& row : A)
    if (row.size() != n) throw domain_error("hnf needs a rectangular matrix");
  IMat H = A;
  IMat U(m, IVec(m, Int(0)));
  for (size_t i = 0; i < m; ++i) U[i][i] = 1;

  auto swap_rows = [&](size_t a, size_t b) {
    std::swap(H[a], H[b]);
    std::swap(U[a], U[b]);
  };
  auto negate_row = [&](size_t a) {
    for (auto& x : H[a]) x = -x;
    for (auto& x : U[a]) x = -x;
  };
  auto addmul_row = [&](size_t dst, size_t src, const Int& q) {
    for (size_t k = 0; k < n; ++k) H[dst][k] += q * H[src][k];
    for (size_t k = 0; k < m; ++k) U[dst][k] += q * U[src][k];
  };

  size_t r = 0;
  for (size_t c = 0; c < n && r < m; ++c) {
    /* Euclidean elimination below row r in column c. */
    for (;;) {
      size_t best = m;
      for (size_t i = r; i < m; ++i)
        if (H[i][c] != 0 && (best == m || cmp(abs(H[i][c]), abs(H[best][c])) < 0))
          best = i;
      if (best == m) break;  // column is zero below r
      if (best != r) swap_rows(best, r);
      if (H[r][c] < 0) negate_row(r);
      bool clean = true;
      for (size_t i = r + 1; i < m; ++i) {
        if (H[i][c] == 0) continue;
        Int q;
        mpz_fdiv_q(q.get_mpz_t(), H[i][c].get_mpz_t(), H[r][c].get_mpz_t());
        addmul_row(i, r, -q);
        if (H[i][c] != 0) clean = false;
      }
      if (clean) break;
    }
    if (H[r][c] == 0) continue;
    /* Reduce entries above the pivot into [0, pivot). */
    for (size_t i = 0; i < r; ++i) {
      Int q;
      mpz_fdiv_q(q.get_mpz_t(), H[i][c].get_mpz_t(), H[r][c].get_mpz_t());
      if (q != 0) addmul_row(i, r, -q);
    }
    ++r;
  }
  return {H, U};
}

namespace {

struct Gs {
  std::vector<Vec> star;
  std::vector<Rational> norm2;
  Mat mu;
};

Gs gram_schmidt(const std::vector<IVec>& b) {
  size_t n = b.size();
  Gs g;
  g.star.resize(n);
  g.norm2.resize(n);
  g.mu.assign(n, Vec(n, Rational(0)));
  for (size_t i = 0; i < n; ++i) {
    Vec v = to_rational(b[i]);
    for (size_t j = 0; j < i; ++j) {
      if (g.norm2[j] == 0) throw domain_error("lll needs independent basis vectors");
      g.mu[i][j] = dot(to_rational(b[i]), g.star[j]) / g.norm2[j];
      for (size_t k = 0; k < v.size(); ++k) v[k] -= g.mu[i][j] * g.star[j][k];
    }
    g.star[i] = v;
    g.norm2[i] = dot(v, v);
  }
  return g;
}

Int round_nearest(const Rational& q) {
  return rat_floor(q + make_rat(1, 2));
}

}  // namespace

std::vector<IVec> lll_reduce(std::vector<IVec> basis) {
  size_t n = basis.size();
  if (n == 0) return basis;
  const Rational delta = make_rat(3, 4);
  Gs g = gram_schmidt(basis);
  size_t k = 1;
  while (k < n) {
    for (size_t j = k; j-- > 0;) {
      Int r = round_nearest(g.mu[k][j]);
      if (r != 0) {
        for (size_t t = 0; t < basis[k].size(); ++t)
          basis[k][t] -= r * basis[j][t];
        g = gram_schmidt(basis);
      }
    }
    Rational lhs = g.norm2[k];
    Rational rhs = (delta - g.mu[k][k - 1] * g.mu[k][k - 1]) * g.norm2[k - 1];
    if (lhs >= rhs) {
      ++k;
    } else {
      std::swap(basis[k], basis[k - 1]);
      g = gram_schmidt(basis);
      k = (k > 1) ? k - 1 : 1;
    }
  }
  return basis;
}

IVec lll_short_vector(const std::vector<IVec>& basis) {
  auto red = lll_reduce(basis);
  if (red.empty()) throw domain_error("lll_short_vector on empty basis");
  auto norm2 = [](const IVec& v) {
    Int s(0);
    for (const auto& x : v) s += x * x;
    return s;
  };
  size_t best = 0;
  for (size_t i = 1; i < red.size(); ++i) {
    int c = cmp(norm2(red[i]), norm2(red[best]));
    if (c < 0 || (c == 0 && red[i] < red[best])) best = i;
  }
  return red[best];
}

}  // namespace pk
