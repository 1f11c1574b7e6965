#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace asai {

// Polynomial in X = q^{-s} with rational coefficients and constant term 1.
struct LocalFactor {
  std::string tag;  // split | inert | ramified | custom
  long q = 0;
  std::vector<mpq_class> c;

  long degree() const { return (long)c.size() - 1; }
};

// Split: roots {alpha_p, beta_p, alpha_pbar, beta_pbar}; inert and ramified: {alpha, beta}.
// With k >= 0 every pair must multiply to q^{k+1} (or vanish).
LocalFactor asai_local_factor(const std::string& tag, long q, const std::vector<mpq_class>& roots, long k = -1);

// Same products written through traces and norms, for roots outside Q:
// s = alpha_p + beta_p, P1 = alpha_p beta_p, t and P2 likewise at p-bar (split only).
LocalFactor asai_local_factor_sym(const std::string& tag, long q, const mpq_class& s, const mpq_class& P1,
                                  const mpq_class& t = 0, const mpq_class& P2 = 0);

// Coefficients 1..xmax; a[0] unused.
struct DirichletSeries {
  long xmax = 0;
  std::vector<mpq_class> a;

  static DirichletSeries zero(long xmax);
  static DirichletSeries identity(long xmax);
  bool operator==(const DirichletSeries& o) const { return xmax == o.xmax && a == o.a; }
};

DirichletSeries dirichlet_mul(const DirichletSeries& f, const DirichletSeries& g);
// First index where the two differ, or 0.
long first_difference(const DirichletSeries& f, const DirichletSeries& g);

using EulerModel = std::map<long, LocalFactor>;  // prime -> local factor; absent primes have factor 1

// 1 / F(X) through X^m.
std::vector<mpq_class> inverse_power_series(const LocalFactor& F, long m);

// a(n) = prod over q^e || n of the X^e coefficient of 1/F_q.
DirichletSeries multiplicative_table(const EulerModel& model, long xmax);
// The product over primes of the local series sum_e b_e q^{-es}, expanded by Dirichlet convolution.
DirichletSeries euler_product_expand(const EulerModel& model, long xmax);
// Series of prod_q F_q(q^{-s}) (the inverse Euler product).
DirichletSeries euler_polynomial_series(const EulerModel& model, long xmax);

struct EulerCheckReport {
  long xmax = 0;
  bool table_matches_product = true;
  bool inverse_is_identity = true;
  long first_bad = 0;
  bool pass() const { return table_matches_product && inverse_is_identity; }
};

EulerCheckReport euler_check(const EulerModel& model, long xmax);

// Legendre symbol (n / p) for odd p.
long legendre(long n, long p);
DirichletSeries twist_by_legendre(const DirichletSeries& f, long p);

struct StabReport {
  bool geometric_identity = true;  // deprived * geometric(alpha) == stabilized
  bool theta_insensitive = true;   // twisted original == twisted stabilized
  long first_bad = 0;
  bool pass() const { return geometric_identity && theta_insensitive; }
};

// The stabilized model replaces the factor at p by 1 - alpha X.
StabReport stabilization_identity_check(const EulerModel& model, long p, const mpq_class& alpha, long xmax);

// Seeded model over all primes <= xmax with integer traces in [-bound, bound],
// norms q^{k+1}, and a random splitting type per prime.
EulerModel random_model(long xmax, long k, uint64_t seed, long bound = 5);
// Model supported on two primes only.
EulerModel two_prime_model(long p, long q, long k, uint64_t seed, long bound = 5);

}  // namespace asai
