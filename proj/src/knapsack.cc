#include "pk/knapsack.hh"

#include <algorithm>
#include <atomic>
#include <mutex>
#include <set>
#include <thread>

#include "pk/bernoulli.hh"
#include "pk/errors.hh"
#include "pk/polyhedra.hh"
#include "pk/series.hh"

namespace pk {

namespace {

void validate_list(const std::vector<Int>& a) {
  if (a.empty()) throw domain_error("knapsack list is empty");
  for (const auto& v : a)
    if (v < 1) throw domain_error("knapsack entries must be positive");
}

Int list_gcd(const std::vector<Int>& a) {
  Int g = 0;
  for (const auto& v : a) g = gcd(g, v);
  return g;
}

Int idot(const std::vector<Int>& u, const IVec& v) {
  Int s = 0;
  for (size_t i = 0; i < u.size(); ++i) s += u[i] * v[i];
  return s;
}

IVec imatvec(const IMat& A, const IVec& x) {
  IVec y(A.size());
  for (size_t i = 0; i < A.size(); ++i) {
    Int s = 0;
    for (size_t j = 0; j < x.size(); ++j) s += A[i][j] * x[j];
    y[i] = s;
  }
  return y;
}

}  // namespace

KnapsackList make_knapsack(const std::vector<Int>& raw) {
  validate_list(raw);
  KnapsackList out;
  out.g = list_gcd(raw);
  out.a.reserve(raw.size());
  for (const auto& v : raw) out.a.push_back(v / out.g);
  return out;
}

/* -------------------------------------------------------------------------
 * Divisor poset. */

namespace {

long find_mobius(const Int& n, const std::vector<Int>& V,
                 std::map<Int, long>& M) {
  auto it = M.find(n);
  if (it != M.end()) return it->second;
  long sum = 0;
  bool any = false;
  for (const auto& v : V)
    if (v != n && v % n == 0) {
      sum += find_mobius(v, V, M);
      any = true;
    }
  long val = any ? 1 - sum : 1;
  M[n] = val;
  return val;
}

}  // namespace

GcdPoset gcd_poset(const std::vector<Int>& a, int k) {
  validate_list(a);
  long N = static_cast<long>(a.size()) - 1;
  if (k < 0 || k > N) throw domain_error("poset order k must satisfy 0 <= k <= N");
  if (a.size() > 20)
    throw resource_error("divisor poset is limited to 20 entries at desk scale");

  std::set<Int> values;
  unsigned long full = (1ul << a.size()) - 1ul;
  for (unsigned long mask = 1; mask <= full; ++mask) {
    if (__builtin_popcountl(mask) < static_cast<int>(a.size()) - k) continue;
    Int g = 0;
    for (size_t i = 0; i < a.size(); ++i)
      if (mask & (1ul << i)) g = gcd(g, a[i]);
    values.insert(g);
  }

  GcdPoset out;
  out.values.assign(values.begin(), values.end());
  for (const auto& f : out.values) find_mobius(f, out.values, out.mobius);
  return out;
}

/* -------------------------------------------------------------------------
 * Bezout data and the divisor lattice. */

BezoutLattice bezout_and_lattice(const std::vector<Int>& a, const Int& f) {
  validate_list(a);
  if (f < 1) throw domain_error("divisor must be positive");
  if (list_gcd(a) != 1)
    throw domain_error("divide out the common factor first");

  BezoutLattice out;
  for (size_t i = 0; i < a.size(); ++i)
    if (a[i] % f != 0) {
      out.J.push_back(static_cast<int>(i));
      out.aJ.push_back(a[i]);
    }
  if (out.J.empty()) return out;  // f = 1
  size_t r = out.J.size();

  /* <s, aJ> = 1 (mod f): first row of the transform putting (aJ, f) in
   * Hermite form pairs to the gcd, which is 1. */
  IMat col(r + 1, IVec(1));
  for (size_t i = 0; i < r; ++i) col[i][0] = out.aJ[i];
  col[r][0] = f;
  HnfResult bez = hnf(col);
  if (bez.H[0][0] != 1)
    throw domain_error("divisor shares a factor with every remaining entry");
  out.s.assign(bez.U[0].begin(), bez.U[0].end() - 1);

  /* Rows of the Hermite transform of the aJ column, with the pivot row
   * scaled by f, span { y : <aJ, y> = 0 (mod f) }; gcd(aJ) is coprime to f,
   * so the scale is exactly f and |det B| = f. */
  IMat col2(r, IVec(1));
  for (size_t i = 0; i < r; ++i) col2[i][0] = out.aJ[i];
  HnfResult lat = hnf(col2);
  IMat B(r, IVec(r));
  for (size_t i = 0; i < r; ++i)
    for (size_t j = 0; j < r; ++j)
      B[i][j] = (j == 0 ? f * lat.U[0][i] : lat.U[j][i]);
  out.B = std::move(B);
  return out;
}

/* -------------------------------------------------------------------------
 * Top coefficients. */

namespace {

/* Analytic part of 1/(1 - e^{(c + b eps) x}) after removing x^{-1}:
 * -sum_p B_p/p! (c + b eps)^{p-1} x^p, the p = 0 term expanded
 * geometrically in eps. Series variables are {x, eps}. */
TruncatedSeries regular_factor(const Rational& c, const Rational& b, int D) {
  TruncatedSeries out(2, D);
  for (int m = 0; m <= D; ++m) {
    Rational v = -pow_rat(-b, m) / pow_rat(c, m + 1);
    out.add_term({0, m}, v);
  }
  for (int p = 1; p <= D; ++p) {
    Rational base = -bernoulli(p) / Rational(factorial(p));
    int mmax = std::min(p - 1, D - p);
    for (int m = 0; m <= mmax; ++m)
      out.add_term({p, m}, Rational(base * Rational(binomial(Int(p - 1), m)) *
                                    pow_rat(c, p - 1 - m) * pow_rat(b, m)));
  }
  return out;
}

/* Analytic part of 1/(1 - e^{b eps x}) after removing (eps x)^{-1} and 1/b:
 * -sum_p B_p b^{p-1}/p! (eps x)^p. */
TruncatedSeries singular_factor(const Rational& b, int D) {
  TruncatedSeries out(2, D);
  for (int p = 0; 2 * p <= D; ++p)
    out.add_term({p, p},
                 Rational(-bernoulli(p) * pow_rat(b, p - 1) / Rational(factorial(p))));
  return out;
}

struct ConeData {
  int sign = 1;
  int singular = 0;               // rays with <aJ, B g_j> = 0
  std::vector<Rational> gamma;    // coordinates of B^{-1} s in the ray basis
  std::vector<Int> pair_c;        // <aJ, B g_j>
  std::vector<Int> pair_b;        // <beta, B g_j>
};

/* Contribution of one divisor f to E_{N-i}, i = 0..k, before the poset
 * weight. The term is
 *   f * M(-T s, R^J_{>=0}, Lambda; aJ x) * prod_{f | alpha_j} 1/(1-e^{alpha_j x}),
 * assembled over a signed unimodular decomposition; E_{N-i} picks up
 * -(-1)^{N-i}/(N-i)! times the x^{-N-1+i} Laurent coefficient. Singular
 * ray pairings are perturbed along beta and the eps^0 slice is kept. */
std::vector<StepPolynomial> divisor_term(const std::vector<Int>& a,
                                         const Int& f, int k, long N) {
  std::vector<StepPolynomial> e(k + 1);
  BezoutLattice bz = bezout_and_lattice(a, f);
  size_t r = bz.J.size();

  std::vector<SimplicialCone> pieces;
  std::vector<ConeData> data;
  int cap = k;

  if (r > 0) {
    Mat Binv_m;
    {
      auto inv = rat_inverse(to_rational(bz.B));
      if (!inv) throw domain_error("divisor lattice basis is singular");
      Binv_m = std::move(*inv);
    }
    std::vector<IVec> rays;
    for (size_t j = 0; j < r; ++j) {
      Int den = 1;
      for (size_t i = 0; i < r; ++i) den = lcm(den, Binv_m[i][j].get_den());
      IVec ray(r);
      for (size_t i = 0; i < r; ++i)
        ray[i] = Int(Rational(Binv_m[i][j] * den).get_num());
      rays.push_back(std::move(ray));
    }
    SimplicialCone C = make_cone(Vec(r, Rational(0)), std::move(rays));
    pieces = barvinok_decompose(C, {}, BarvinokVariant::dual);

    /* B^{-1} s once; gamma solves (ray matrix) gamma = B^{-1} s per piece. */
    Vec Binv_s(r, Rational(0));
    for (size_t i = 0; i < r; ++i)
      for (size_t j = 0; j < r; ++j) Binv_s[i] += Binv_m[i][j] * Rational(bz.s[j]);

    std::vector<IVec> must_not_vanish;
    std::vector<std::vector<IVec>> images(pieces.size());
    for (size_t p = 0; p < pieces.size(); ++p) {
      for (const auto& g : pieces[p].rays) {
        IVec Bg = imatvec(bz.B, g);
        if (idot(bz.aJ, Bg) == 0) must_not_vanish.push_back(Bg);
        images[p].push_back(std::move(Bg));
      }
    }
    IVec beta(r, 0);
    if (!must_not_vanish.empty())
      beta = find_regular_vector(static_cast<int>(r), must_not_vanish);

    int smax = 0;
    for (size_t p = 0; p < pieces.size(); ++p) {
      ConeData cd;
      cd.sign = pieces[p].sign;
      for (const auto& Bg : images[p]) {
        Int c = idot(bz.aJ, Bg);
        Int b = idot(beta, Bg);
        if (c == 0) ++cd.singular;
        cd.pair_c.push_back(c);
        cd.pair_b.push_back(b);
      }
      Mat G(r, Vec(r));
      for (size_t i = 0; i < r; ++i)
        for (size_t j = 0; j < r; ++j) G[i][j] = Rational(pieces[p].rays[j][i]);
      auto gamma = rat_solve(G, Binv_s);
      if (!gamma) throw domain_error("decomposition produced a singular cone");
      cd.gamma = std::move(*gamma);
      smax = std::max(smax, cd.singular);
      data.push_back(std::move(cd));
    }
    cap = k + smax;
  }

  /* Factors for the entries the divisor divides, shared by every piece. */
  TruncatedSeries tail(2, cap);
  tail.add_term({0, 0}, Rational(1));
  for (size_t i = 0; i < a.size(); ++i)
    if (a[i] % f == 0)
      tail = mul(tail, regular_factor(Rational(a[i]), Rational(0), cap));

  if (r == 0) {
    for (int i = 0; i <= k; ++i) {
      Rational v = tail.coeff({i, 0});
      if (v == 0) continue;
      Rational sc = make_rat(((N - i) % 2 == 0) ? -1 : 1, 1) /
                    Rational(factorial(N - i));
      StepPolynomial c(Rational(v * sc * f));
      e[i] += c;
    }
    return e;
  }

  for (size_t p = 0; p < pieces.size(); ++p) {
    const ConeData& cd = data[p];
    TruncatedSeries base = tail;
    for (size_t j = 0; j < r; ++j) {
      if (cd.pair_c[j] == 0)
        base = mul(base, singular_factor(Rational(cd.pair_b[j]), cap));
      else
        base = mul(base, regular_factor(Rational(cd.pair_c[j]),
                                        Rational(cd.pair_b[j]), cap));
    }

    /* ((c_j + b_j eps) x)^m / m! for the exponential numerator. */
    std::vector<std::vector<TruncatedSeries>> upow(r);
    for (size_t j = 0; j < r; ++j) {
      for (int m = 0; m <= k; ++m) {
        TruncatedSeries s(2, cap);
        Rational invfact = make_rat(Int(1), factorial(m));
        for (int t = 0; t <= std::min(m, cap - m); ++t)
          s.add_term({m, t},
                     Rational(invfact * Rational(binomial(Int(m), t)) *
                              pow_rat(Rational(cd.pair_c[j]), m - t) *
                              pow_rat(Rational(cd.pair_b[j]), t)));
        upow[j].push_back(std::move(s));
      }
    }

    std::vector<int> expo(r, 0);
    auto emit = [&](const TruncatedSeries& series) {
      for (int i = 0; i <= k; ++i) {
        Rational v = series.coeff({i, cd.singular});
        if (v == 0) continue;
        std::vector<std::pair<Rational, int>> key;
        for (size_t j = 0; j < r; ++j)
          if (expo[j] > 0) key.push_back({cd.gamma[j], expo[j]});
        Rational sc = make_rat(((N - i) % 2 == 0) ? -1 : 1, 1) /
                      Rational(factorial(N - i));
        e[i].add_term(key, Rational(v * sc * f * cd.sign));
      }
    };
    std::function<void(size_t, int, const TruncatedSeries&)> walk =
        [&](size_t j, int budget, const TruncatedSeries& cur) {
          if (j == r) {
            emit(cur);
            return;
          }
          for (int m = 0; m <= budget; ++m) {
            expo[j] = m;
            walk(j + 1, budget - m, m == 0 ? cur : mul(cur, upow[j][m]));
          }
          expo[j] = 0;
        };
    walk(0, k, base);
  }
  return e;
}

}  // namespace

TopKQuasiPolynomial top_coefficients(const std::vector<Int>& a, int k,
                                     int jobs) {
  validate_list(a);
  long N = static_cast<long>(a.size()) - 1;
  if (list_gcd(a) != 1)
    throw domain_error("divide out the common factor first");
  if (k < 0 || k > N) throw domain_error("need 0 <= k <= N");
  if (k > 8) throw resource_error("coefficient order is limited to 8 at desk scale");

  GcdPoset poset = gcd_poset(a, k);
  std::vector<Int> fs;
  for (const auto& f : poset.values)
    if (poset.mobius.at(f) != 0) fs.push_back(f);

  long n = static_cast<long>(fs.size());
  std::vector<std::vector<StepPolynomial>> parts(n);
  auto run = [&](long i) { parts[i] = divisor_term(a, fs[i], k, N); };
  if (jobs <= 1 || n <= 1) {
    for (long i = 0; i < n; ++i) run(i);
  } else {
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
            run(i);
          } catch (...) {
            std::lock_guard<std::mutex> lock(err_mu);
            if (!err) err = std::current_exception();
            return;
          }
        }
      });
    for (auto& t : pool) t.join();
    if (err) std::rethrow_exception(err);
  }

  TopKQuasiPolynomial out;
  out.N = N;
  out.k = k;
  for (int i = 0; i <= k; ++i) out.coeff[N - i] = StepPolynomial();
  for (long i = 0; i < n; ++i) {
    long mu = poset.mobius.at(fs[i]);
    for (int j = 0; j <= k; ++j) {
      StepPolynomial part = parts[i][j];
      part.scale(Rational(mu));
      out.coeff[N - j] += part;
    }
  }
  return out;
}

Rational evaluate_topk(const TopKQuasiPolynomial& q, const Int& t) {
  Rational total = 0;
  for (const auto& [deg, poly] : q.coeff)
    total += poly.evaluate(t) * pow_rat(Rational(t), deg);
  return total;
}

Int topk_period(const TopKQuasiPolynomial& q) {
  Int p = 1;
  for (const auto& [deg, poly] : q.coeff) p = lcm(p, poly.period());
  return p;
}

std::vector<std::vector<Rational>> coset_polynomials(const std::vector<Int>& a) {
  validate_list(a);
  if (list_gcd(a) != 1)
    throw domain_error("divide out the common factor first");
  long N = static_cast<long>(a.size()) - 1;
  if (N > 6)
    throw resource_error("coset listing is limited to 7 entries at desk scale");
  Int L = 1;
  for (const auto& v : a) L = lcm(L, v);
  if (L > 10000)
    throw resource_error("coset listing needs the entry lcm within 10^4");

  TopKQuasiPolynomial q = top_coefficients(a, static_cast<int>(N));
  long period = L.get_si();
  std::vector<std::vector<Rational>> out(period,
                                         std::vector<Rational>(N + 1, Rational(0)));
  for (long rho = 0; rho < period; ++rho)
    for (long d = 0; d <= N; ++d)
      out[rho][d] = q.coeff.at(d).evaluate(Int(rho));
  return out;
}

/* -------------------------------------------------------------------------
 * Periodicity threshold. */

FirstPeriodicReport first_periodic_degree(
    const std::vector<Int>& a,
    const std::vector<std::vector<std::pair<Int, int>>>& factorizations) {
  validate_list(a);
  if (list_gcd(a) != 1)
    throw domain_error("divide out the common factor first");
  if (factorizations.size() != a.size())
    throw domain_error("one factorization per entry is required");
  for (size_t i = 0; i < a.size(); ++i) {
    Int prod = 1;
    for (const auto& [p, eexp] : factorizations[i]) {
      if (p < 2 || eexp < 1) throw domain_error("malformed factorization");
      for (int j = 0; j < eexp; ++j) prod *= p;
    }
    if (prod != a[i]) throw domain_error("factorization does not match entry");
  }

  std::map<Int, std::vector<int>> support;  // prime -> entries it divides
  for (size_t i = 0; i < a.size(); ++i)
    for (const auto& [p, eexp] : factorizations[i])
      support[p].push_back(static_cast<int>(i));

  FirstPeriodicReport out;
  for (const auto& [p, idx] : support)
    out.ell = std::max(out.ell, static_cast<long>(idx.size()));

  std::set<std::vector<int>> sublists;
  if (out.ell > 0)
    for (const auto& [p, idx] : support)
      if (static_cast<long>(idx.size()) == out.ell) sublists.insert(idx);
  out.sublists.assign(sublists.begin(), sublists.end());

  std::set<Int> values;
  values.insert(Int(1));
  for (const auto& idx : out.sublists) {
    Int g = 0;
    for (int i : idx) g = gcd(g, a[i]);
    values.insert(g);
  }
  out.fan_values.assign(values.begin(), values.end());
  for (const auto& f : out.fan_values) out.fan_mobius[f] = 1;
  out.fan_mobius[Int(1)] = 2 - static_cast<long>(out.fan_values.size());
  return out;
}

FirstPeriodicReport first_periodic_degree(const std::vector<Int>& a) {
  validate_list(a);
  std::vector<std::vector<std::pair<Int, int>>> factorizations;
  for (const auto& v : a) {
    if (v > 1000000000)
      throw resource_error(
          "trial division is limited to 10^9; supply factorizations");
    std::vector<std::pair<Int, int>> fac;
    long rest = v.get_si();
    for (long p = 2; p * p <= rest; p += (p == 2 ? 1 : 2)) {
      int e = 0;
      while (rest % p == 0) {
        rest /= p;
        ++e;
      }
      if (e > 0) fac.push_back({Int(p), e});
    }
    if (rest > 1) fac.push_back({Int(rest), 1});
    factorizations.push_back(std::move(fac));
  }
  return first_periodic_degree(a, factorizations);
}

Int denumerant_oracle(const std::vector<Int>& a, const Int& t) {
  validate_list(a);
  if (t < 0) throw domain_error("counts are defined for t >= 0");
  if (t > 1000000)
    throw resource_error("oracle counting is limited to t <= 10^6");
  long T = t.get_si();
  std::vector<Int> dp(T + 1, Int(0));
  dp[0] = 1;
  for (const auto& coin : a) {
    if (coin > T) continue;
    long c = coin.get_si();
    for (long s = c; s <= T; ++s) dp[s] += dp[s - c];
  }
  return dp[T];
}

}  // namespace pk
