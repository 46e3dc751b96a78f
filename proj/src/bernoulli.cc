#include "pk/bernoulli.hh"

#include <mutex>
#include <vector>

namespace pk {

/* Row-reduction scheme over a single working array; one new row extends the
 * cache to index k. The k = 1 sign flip keeps the generating-function
 * convention x/(e^x - 1). */
static void extend_bernoulli(std::vector<Rational>& cache, long k) {
  std::vector<Rational> a(static_cast<size_t>(k) + 1);
  for (long i = 0; i <= k; ++i) {
    a[static_cast<size_t>(i)] = make_rat(Int(1), Int(i + 1));
    for (long j = i; j >= 1; --j)
      a[static_cast<size_t>(j - 1)] =
          Rational(j) * (a[static_cast<size_t>(j - 1)] - a[static_cast<size_t>(j)]);
  }
  Rational b = (k == 1) ? Rational(-a[0]) : a[0];
  cache.resize(static_cast<size_t>(k) + 1);
  cache[static_cast<size_t>(k)] = b;
}

Rational bernoulli(long k) {
  if (k < 0) throw domain_error("bernoulli of negative index");
  static std::mutex mu;
  static std::vector<Rational> cache;
  std::lock_guard<std::mutex> lock(mu);
  while (static_cast<long>(cache.size()) <= k)
    extend_bernoulli(cache, static_cast<long>(cache.size()));
  return cache[static_cast<size_t>(k)];
}

TruncatedSeries bernoulli_factor_series(const std::vector<Rational>& c, int M) {
  bool nonzero = false;
  for (const auto& q : c)
    if (q != 0) nonzero = true;
  if (!nonzero) throw domain_error("bernoulli_factor_series needs a nonzero form");
  TruncatedSeries lin = linear_series(c, M);
  TruncatedSeries pow(static_cast<int>(c.size()), M);
  pow.add_term(std::vector<int>(pow.key_len(), 0), 1);
  TruncatedSeries out(static_cast<int>(c.size()), M);
  for (int k = 0; k <= M; ++k) {
    TruncatedSeries term = pow;
    term.scale(-bernoulli(k) / Rational(factorial(k)));
    out += term;
    if (k < M) pow = mul(pow, lin);
  }
  return out;
}

std::vector<Rational> faulhaber_coeffs(long p) {
  if (p < 0) throw domain_error("faulhaber of negative power");
  /* F(n,p) = 1/(p+1) sum_{j=0..p} C(p+1,j) B+_j n^{p+1-j}, B+_1 = +1/2. */
  std::vector<Rational> coeffs(static_cast<size_t>(p) + 2, Rational(0));
  Rational inv = make_rat(Int(1), Int(p + 1));
  for (long j = 0; j <= p; ++j) {
    Rational bj = (j == 1) ? make_rat(1, 2) : bernoulli(j);
    coeffs[static_cast<size_t>(p + 1 - j)] =
        inv * Rational(binomial(Int(p + 1), j)) * bj;
  }
  return coeffs;
}

Rational faulhaber(const Rational& n, long p) {
  auto coeffs = faulhaber_coeffs(p);
  Rational acc(0);
  for (size_t j = coeffs.size(); j-- > 0;) acc = acc * n + coeffs[j];
  return acc;
}

}  // namespace pk
