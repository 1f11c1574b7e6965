#include "asai/classical_l.hpp"

#include <random>

#include "asai/errors.hpp"
#include "asai/padic.hpp"

namespace asai {

using Poly = std::vector<mpq_class>;

static Poly pmul(const Poly& a, const Poly& b) {
  Poly r(a.size() + b.size() - 1, mpq_class(0));
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  return r;
}

static Poly trim(Poly p) {
  while (p.size() > 1 && p.back() == 0) p.pop_back();
  return p;
}

static mpq_class qpow(long q, long e) {
  mpz_class r;
  mpz_ui_pow_ui(r.get_mpz_t(), q, e);
  return mpq_class(r);
}

LocalFactor asai_local_factor(const std::string& tag, long q, const std::vector<mpq_class>& roots, long k) {
  LocalFactor F;
  F.tag = tag;
  F.q = q;
  auto check_pair = [&](const mpq_class& x, const mpq_class& y) {
    if (k < 0 || (x == 0 && y == 0)) return;
    if (x * y != qpow(q, k + 1)) throw ValidationError("inconsistent roots: product is not q^{k+1}");
  };
  if (tag == "split") {
    if (roots.size() != 4) throw ValidationError("split factor needs four roots");
    check_pair(roots[0], roots[1]);
    check_pair(roots[2], roots[3]);
    Poly acc{1};
    for (int i = 0; i < 2; ++i)
      for (int j = 2; j < 4; ++j) acc = pmul(acc, {1, -roots[i] * roots[j]});
    F.c = acc;
  } else if (tag == "inert") {
    if (roots.size() != 2) throw ValidationError("inert factor needs two roots");
    check_pair(roots[0], roots[1]);
    F.c = pmul(pmul({1, -roots[0]}, {1, -roots[1]}), {1, 0, -qpow(q, 2)});
  } else if (tag == "ramified") {
    if (roots.size() != 2) throw ValidationError("ramified factor needs two roots");
    check_pair(roots[0], roots[1]);
    F.c = pmul(pmul({1, -roots[0] * roots[0]}, {1, -qpow(q, 1)}), {1, -roots[1] * roots[1]});
  } else {
    throw ValidationError("unknown splitting tag: " + tag);
  }
  F.c = trim(F.c);
  return F;
}

LocalFactor asai_local_factor_sym(const std::string& tag, long q, const mpq_class& s, const mpq_class& P1,
                                  const mpq_class& t, const mpq_class& P2) {
  LocalFactor F;
  F.tag = tag;
  F.q = q;
  if (tag == "split") {
    F.c = {1, -s * t, P2 * s * s + P1 * t * t - 2 * P1 * P2, -P1 * P2 * s * t, P1 * P1 * P2 * P2};
  } else if (tag == "inert") {
    F.c = pmul({1, -s, P1}, {1, 0, -qpow(q, 2)});
  } else if (tag == "ramified") {
    F.c = pmul({1, -(s * s - 2 * P1), P1 * P1}, {1, -qpow(q, 1)});
  } else {
    throw ValidationError("unknown splitting tag: " + tag);
  }
  F.c = trim(F.c);
  return F;
}

DirichletSeries DirichletSeries::zero(long xmax) {
  DirichletSeries d;
  d.xmax = xmax;
  d.a.assign(xmax + 1, mpq_class(0));
  return d;
}

DirichletSeries DirichletSeries::identity(long xmax) {
  DirichletSeries d = zero(xmax);
  if (xmax >= 1) d.a[1] = 1;
  return d;
}

DirichletSeries dirichlet_mul(const DirichletSeries& f, const DirichletSeries& g) {
  long X = std::min(f.xmax, g.xmax);
  DirichletSeries r = DirichletSeries::zero(X);
  for (long m = 1; m <= X; ++m) {
    if (f.a[m] == 0) continue;
    for (long n = 1; m * n <= X; ++n)
      if (g.a[n] != 0) r.a[m * n] += f.a[m] * g.a[n];
  }
  return r;
}

long first_difference(const DirichletSeries& f, const DirichletSeries& g) {
  long X = std::min(f.xmax, g.xmax);
  for (long n = 1; n <= X; ++n)
    if (f.a[n] != g.a[n]) return n;
  return 0;
}

std::vector<mpq_class> inverse_power_series(const LocalFactor& F, long m) {
  if (F.c.empty() || F.c[0] != 1) throw ValidationError("local factor must have constant term 1");
  std::vector<mpq_class> b(m + 1, mpq_class(0));
  b[0] = 1;
  for (long n = 1; n <= m; ++n) {
    mpq_class s = 0;
    for (long i = 1; i <= std::min(n, F.degree()); ++i) s += F.c[i] * b[n - i];
    b[n] = -s;
  }
  return b;
}

static long max_exponent(long q, long xmax) {
  long e = 0;
  for (long x = q; x <= xmax; x *= q) ++e;
  return e;
}

DirichletSeries multiplicative_table(const EulerModel& model, long xmax) {
  std::map<long, std::vector<mpq_class>> local;
  for (const auto& [q, F] : model)
    if (q <= xmax) local[q] = inverse_power_series(F, max_exponent(q, xmax));
  DirichletSeries d = DirichletSeries::zero(xmax);
  for (long n = 1; n <= xmax; ++n) {
    mpq_class v = 1;
    long m = n;
    for (long q = 2; m > 1 && v != 0; ++q) {
      if (q * q > m) q = m;
      if (m % q) continue;
      long e = 0;
      while (m % q == 0) m /= q, ++e;
      auto it = local.find(q);
      v = (it == local.end()) ? mpq_class(0) : v * it->second[e];
    }
    d.a[n] = v;
  }
  return d;
}

static DirichletSeries local_series(long q, const std::vector<mpq_class>& b, long xmax) {
  DirichletSeries d = DirichletSeries::zero(xmax);
  long x = 1;
  for (size_t e = 0; e < b.size() && x <= xmax; ++e, x *= q) d.a[x] = b[e];
  return d;
}

DirichletSeries euler_product_expand(const EulerModel& model, long xmax) {
  DirichletSeries acc = DirichletSeries::identity(xmax);
  for (const auto& [q, F] : model)
    if (q <= xmax) acc = dirichlet_mul(acc, local_series(q, inverse_power_series(F, max_exponent(q, xmax)), xmax));
  return acc;
}

DirichletSeries euler_polynomial_series(const EulerModel& model, long xmax) {
  DirichletSeries acc = DirichletSeries::identity(xmax);
  for (const auto& [q, F] : model)
    if (q <= xmax) acc = dirichlet_mul(acc, local_series(q, F.c, xmax));
  return acc;
}

EulerCheckReport euler_check(const EulerModel& model, long xmax) {
  EulerCheckReport rep;
  rep.xmax = xmax;
  DirichletSeries table = multiplicative_table(model, xmax);
  long bad = first_difference(table, euler_product_expand(model, xmax));
  if (bad) rep.table_matches_product = false, rep.first_bad = bad;
  long bad2 = first_difference(dirichlet_mul(table, euler_polynomial_series(model, xmax)),
                               DirichletSeries::identity(xmax));
  if (bad2) {
    rep.inverse_is_identity = false;
    if (!rep.first_bad) rep.first_bad = bad2;
  }
  return rep;
}

long legendre(long n, long p) {
  long r = ((n % p) + p) % p;
  if (r == 0) return 0;
  mpz_class a = r, pp = p;
  return mpz_legendre(a.get_mpz_t(), pp.get_mpz_t());
}

DirichletSeries twist_by_legendre(const DirichletSeries& f, long p) {
  DirichletSeries r = f;
  for (long n = 1; n <= f.xmax; ++n) r.a[n] *= legendre(n, p);
  return r;
}

StabReport stabilization_identity_check(const EulerModel& model, long p, const mpq_class& alpha, long xmax) {
  StabReport rep;
  EulerModel stab = model;
  LocalFactor Fp;
  Fp.tag = "custom";
  Fp.q = p;
  Fp.c = trim({1, -alpha});
  stab[p] = Fp;
  DirichletSeries orig = multiplicative_table(model, xmax);
  DirichletSeries stabilized = multiplicative_table(stab, xmax);
  DirichletSeries deprived = orig;
  for (long n = p; n <= xmax; n += p) deprived.a[n] = 0;
  DirichletSeries geo = DirichletSeries::zero(xmax);
  mpq_class pw = 1;
  for (long x = 1; x <= xmax; x *= p, pw *= alpha) geo.a[x] = pw;
  long bad = first_difference(dirichlet_mul(deprived, geo), stabilized);
  if (bad) rep.geometric_identity = false, rep.first_bad = bad;
  long bad2 = first_difference(twist_by_legendre(orig, p), twist_by_legendre(stabilized, p));
  if (bad2) {
    rep.theta_insensitive = false;
    if (!rep.first_bad) rep.first_bad = bad2;
  }
  return rep;
}

static LocalFactor random_factor(long q, long k, std::mt19937_64& rng, long bound) {
  static const char* tags[] = {"split", "inert", "ramified"};
  std::string tag = tags[rng() % 3];
  auto tr = [&] { return mpq_class((long)(rng() % (2 * bound + 1)) - bound); };
  mpq_class P = qpow(q, k + 1);
  if (tag == "split") return asai_local_factor_sym(tag, q, tr(), P, tr(), P);
  return asai_local_factor_sym(tag, q, tr(), P);
}

EulerModel random_model(long xmax, long k, uint64_t seed, long bound) {
  std::mt19937_64 rng(seed);
  EulerModel m;
  for (long q = 2; q <= xmax; ++q)
    if (is_prime(q)) m[q] = random_factor(q, k, rng, bound);
  return m;
}

EulerModel two_prime_model(long p, long q, long k, uint64_t seed, long bound) {
  if (p == q) throw ValidationError("two-prime model needs distinct primes");
  std::mt19937_64 rng(seed);
  EulerModel m;
  m[p] = random_factor(p, k, rng, bound);
  m[q] = random_factor(q, k, rng, bound);
  return m;
}

}  // namespace asai
