#include "pk/optimize.hh"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "pk/bernoulli.hh"
#include "pk/errors.hh"
#include "pk/integrate.hh"

namespace pk {

namespace {

void check_radical(const Radical& r, const char* who) {
  if (r.n < 1) throw domain_error(std::string(who) + ": root degree must be >= 1");
  if (r.q < 0) throw domain_error(std::string(who) + ": negative radicand");
}

Int ceil_rat(const Rational& q) { return -rat_floor(-q); }

long total_deg(const ExpVec& e) {
  long s = 0;
  for (int x : e) s += x;
  return s;
}

/* Exact integral of g over the box: each monomial factors through
 * int_l^u x^e dx = (u^(e+1) - l^(e+1)) / (e+1). */
Rational integrate_polynomial_box(
    const std::vector<std::pair<Rational, Rational>>& box,
    const SparsePolynomial& g) {
  Rational total = 0;
  g.for_each([&](const ExpVec& e, const Rational& c) {
    Rational t = c;
    for (size_t i = 0; i < box.size(); ++i) {
      long p = e[i] + 1;
      t *= (pow_rat(box[i].second, p) - pow_rat(box[i].first, p)) / Rational(p);
    }
    total += t;
  });
  return total;
}

}  // namespace

int radical_compare(const Radical& a, const Radical& b) {
  check_radical(a, "radical_compare");
  check_radical(b, "radical_compare");
  long g = std::gcd(a.n, b.n);
  Rational pa = pow_rat(a.q, b.n / g);  // common exponent lcm(a.n, b.n)
  Rational pb = pow_rat(b.q, a.n / g);
  int c = cmp(pa, pb);
  return c < 0 ? -1 : c > 0 ? 1 : 0;
}

Rational radical_decimal(const Radical& r, int frac_digits) {
  check_radical(r, "radical_decimal");
  if (frac_digits < 0) throw domain_error("radical_decimal: negative precision");
  Int p10;
  mpz_ui_pow_ui(p10.get_mpz_t(), 10, (unsigned long)frac_digits);
  Int scale;
  mpz_pow_ui(scale.get_mpz_t(), p10.get_mpz_t(), (unsigned long)r.n);
  Int target = r.q.get_num() * scale;
  const Int& den = r.q.get_den();
  Int root;
  {
    Int t = target / den;
    mpz_root(root.get_mpz_t(), t.get_mpz_t(), (unsigned long)r.n);
  }
  /* root = floor(floor(target/den)^(1/n)) already equals
   * floor((target/den)^(1/n)); the loops only certify that. */
  auto fits = [&](const Int& x) -> bool {
    Int xp;
    mpz_pow_ui(xp.get_mpz_t(), x.get_mpz_t(), (unsigned long)r.n);
    return xp * den <= target;
  };
  while (fits(root + 1)) root += 1;
  while (root > 0 && !fits(root)) root -= 1;
  return make_rat(root, p10);
}

std::string radical_to_string(const Radical& r, int frac_digits) {
  return rat_to_decimal(radical_decimal(r, frac_digits), frac_digits);
}

Rational lipschitz_constant(const SparsePolynomial& f, const Rational& M) {
  Rational L = 0;
  f.for_each([&](const ExpVec& e, const Rational& c) {
    long deg = total_deg(e);
    if (deg == 0) return;
    Rational t = abs(c) * Rational(deg) * pow_rat(M, deg - 1);
    L += t;
  });
  return L;
}

BoundsReport continuous_bounds(const SparsePolynomial& f, const Polytope& P,
                               long k, int jobs) {
  if (f.dim() != P.dim())
    throw domain_error("continuous_bounds: polynomial/domain dimension mismatch");
  if (k < 1) throw domain_error("continuous_bounds: k must be >= 1");
  if (!P.full_dimensional())
    throw domain_error("continuous_bounds: domain must be full-dimensional");

  const auto& V = P.vertices();
  for (const auto& v : V) {
    if (f.evaluate(v) < 0)
      throw domain_error(
          "continuous_bounds: f is negative at a vertex of the domain; add a "
          "constant shift making f nonnegative (handelman_bound yields one) "
          "and retry");
  }

  const int d = P.dim();
  Rational width = 0;   // largest coordinate width, enters U_k
  Rational coord = 0;   // largest |x_i|, enters the Lipschitz bound
  for (int i = 0; i < d; ++i) {
    Rational lo = V[0][i], hi = V[0][i];
    for (const auto& v : V) {
      lo = std::min(lo, v[i]);
      hi = std::max(hi, v[i]);
    }
    width = std::max(width, Rational(hi - lo));
    coord = std::max(coord, Rational(std::max(Rational(abs(lo)), Rational(abs(hi)))));
  }

  SparsePolynomial g = pow_expand(f, k);
  Rational integral, vol;
  if (auto box = as_box(P)) {
    vol = 1;
    for (const auto& side : *box) vol *= side.second - side.first;
    integral = integrate_polynomial_box(*box, g);
  } else {
    integral = integrate_polynomial(P, g, IntegrationMethod::triangulation, jobs);
    SparsePolynomial one(d);
    one.insert(ExpVec(d, 0), 1);
    vol = integrate_polynomial(P, one, IntegrationMethod::triangulation, jobs);
  }

  BoundsReport rep;
  rep.k = k;
  rep.M = width;
  rep.L = lipschitz_constant(f, coord);
  rep.eps_prime = make_rat(d, d + k);

  Rational qL = integral / vol;
  rep.L_k_root = Radical{qL, k};
  if (rep.L == 0 || qL == 0) {
    /* Constant (or identically zero) f: the k-norm is already the max. */
    rep.U_k_root = rep.L_k_root;
  } else {
    Rational qU = qL * pow_rat(rep.M * rep.L / rep.eps_prime, d) *
                  pow_rat(1 - rep.eps_prime, -k);
    rep.U_k_root = Radical{qU, d + k};
  }
  rep.L_k = radical_decimal(rep.L_k_root, 50);
  rep.U_k = radical_decimal(rep.U_k_root, 50);

  Rational ml = rep.M * rep.L;
  rep.k0 = 1;
  if (ml > 0) {
    Rational u0 = 0;  // termwise upper bound on |f| over the domain
    f.for_each([&](const ExpVec& e, const Rational& c) {
      Rational t = abs(c) * pow_rat(coord, total_deg(e));
      u0 += t;
    });
    Int c = ceil_rat(Rational(d) * (u0 / ml - 1));
    if (c > 1)
      rep.k0 = c.fits_slong_p() ? c.get_si() : std::numeric_limits<long>::max();
  }
  return rep;
}

long choose_k(const Rational& eps, const Rational& U, const Rational& M,
              const Rational& L, int d) {
  if (eps <= 0) throw domain_error("choose_k: eps must be positive");
  if (M * L <= 0) throw domain_error("choose_k: M and L must be positive");
  const long double e = (long double)eps.get_d();
  const long double u = (long double)U.get_d();
  const long double ml = (long double)Rational(M * L).get_d();
  const long double dd = (long double)d;
  const long double delta = 0.1L, c_delta = 4.05L;
  long double t1 = dd * (u / ml - 1.0L);
  long double t2 = dd / (std::cbrt(1.0L + e) - 1.0L);
  long double t3 = 3.0L * dd * std::log(u * ml) * (1.0L + 1.0L / e);
  long double t4 =
      dd * (std::pow(3.0L * c_delta * (1.0L + 1.0L / e), 1.0L + delta) - 1.0L);
  long double best = std::max(std::max(t1, t2), std::max(t3, t4));
  return (long)std::ceil(best);
}

Rational lattice_power_sum(const SparsePolynomial& f,
                           const std::vector<std::pair<Int, Int>>& box,
                           long k) {
  if ((int)box.size() != f.dim())
    throw domain_error("lattice_power_sum: polynomial/box dimension mismatch");
  if (k < 0) throw domain_error("lattice_power_sum: k must be >= 0");
  for (const auto& side : box) {
    if (side.first > side.second)
      throw domain_error("lattice_power_sum: empty box side");
  }
  SparsePolynomial g = pow_expand(f, k);
  Rational total = 0;
  g.for_each([&](const ExpVec& e, const Rational& c) {
    Rational t = c;
    for (size_t i = 0; i < box.size(); ++i) {
      /* sum_{j=l..u} j^e = F(u,e) - F(l-1,e); the Faulhaber polynomial
       * telescopes at negative arguments too. */
      t *= faulhaber(Rational(box[i].second), e[i]) -
           faulhaber(Rational(box[i].first) - 1, e[i]);
    }
    total += t;
  });
  return total;
}

std::pair<Radical, Radical> discrete_bounds_box(const SparsePolynomial& f,
                                                const Polytope& P, long k) {
  if (k < 1) throw domain_error("discrete_bounds_box: k must be >= 1");
  auto box = as_box(P);
  if (!box)
    throw domain_error(
        "discrete_bounds_box: domain is not a box; only box domains are "
        "supported");
  std::vector<std::pair<Int, Int>> ibox;
  Rational count = 1;
  for (const auto& side : *box) {
    Int lo = ceil_rat(side.first), hi = rat_floor(side.second);
    if (lo > hi)
      throw domain_error("discrete_bounds_box: box contains no lattice points");
    count *= Rational(hi - lo + 1);
    ibox.emplace_back(lo, hi);
  }
  Rational sum = lattice_power_sum(f, ibox, k);
  if (sum < 0)
    throw domain_error(
        "discrete_bounds_box: sum of f^k is negative; f must be nonnegative "
        "on the lattice points of the box");
  return {Radical{sum / count, k}, Radical{sum, k}};
}

}  // namespace pk
