#pragma once

#include <functional>
#include <vector>

#include "asai/padic.hpp"

namespace asai {

// Polynomial or truncated power series in T over Q_p.
// exact: a true polynomial, every coefficient past c.size() is 0.
// inexact: coefficients known up to dmax, those beyond have v >= tail_floor.
struct TruncSeries {
  Ctx ctx;
  std::vector<PadicElt> c;
  long dmax = 0;
  bool exact = true;
  long tail_floor = kInf;

  TruncSeries() = default;
  static TruncSeries poly(const Ctx& ctx, std::vector<PadicElt> coeffs);
  static TruncSeries series(const Ctx& ctx, std::vector<PadicElt> coeffs, long dmax, long tail_floor);
  static TruncSeries constant(const Ctx& ctx, const PadicElt& a);
  static TruncSeries monomial(const Ctx& ctx, const PadicElt& a, long n);

  // Last index holding a coefficient that is not (tracked or exact) zero; -1 if none.
  long degree() const;
  long size() const { return (long)c.size(); }
  const PadicElt& coeff(long n) const;
  // Known coefficients only, together with the tail floor.
  long min_val() const;

  TruncSeries operator+(const TruncSeries& o) const;
  TruncSeries operator-(const TruncSeries& o) const;
  TruncSeries operator-() const;
  TruncSeries operator*(const TruncSeries& o) const;
  TruncSeries operator*(const PadicElt& s) const;

  TruncSeries truncate(long D) const;
  TruncSeries shift_up(long k) const;
  PadicElt eval(const PadicElt& x) const;
  void trim();
};

// a_i == b_i at joint precision for every index both know.
bool agree(const TruncSeries& a, const TruncSeries& b);

// f(alpha*T + beta).
TruncSeries compose_affine(const TruncSeries& f, const PadicElt& alpha, const PadicElt& beta);
// f(u^{-j}(1+T) - 1).
TruncSeries twist_sub(const TruncSeries& f, long j);

// (1+T)^{p^r} - 1.
TruncSeries omega(const Ctx& ctx, long r);
// omega_n / omega_{n-1}, the p^n-th cyclotomic polynomial in 1+T.
TruncSeries phi_n(const Ctx& ctx, long n);

// Division by a polynomial whose leading coefficient is invertible.
void divmod(const TruncSeries& f, const TruncSeries& g, TruncSeries& q, TruncSeries& r);
TruncSeries rem(const TruncSeries& f, const TruncSeries& g);
TruncSeries make_monic(const TruncSeries& g);

// Remainder of a truncated series modulo a monic polynomial whose lower
// coefficients all lie in pZ_p; precision is capped by the unknown tail.
TruncSeries rem_distinguished(const TruncSeries& f, const TruncSeries& m);

// 1/f up to degree D; f(0) must be invertible.
TruncSeries series_inverse(const TruncSeries& f, long D);

// Binomial series (1+T)^lambda up to degree D with lambda known mod p^lam_digits.
TruncSeries binomial_series(const Ctx& ctx, const mpz_class& lambda, long lam_digits, long D);
// Digits of lambda needed so that (1+T)^lambda is known to full precision through degree D.
long binomial_digits(const Ctx& ctx, long D);

// Sum b_m (1+T)^m rewritten in powers of T.
TruncSeries from_one_plus_T(const Ctx& ctx, const std::vector<PadicElt>& b);

// sum_t coeffs[t] * weight[t] * (1+T)^{log_u t} over units t mod p^r.
class LogTable;
TruncSeries group_ring_to_poly(const Ctx& ctx, const LogTable& tab, const std::vector<PadicElt>& coeffs,
                               const std::function<PadicElt(long)>& delta);

// delta = eps^i as a function on residues.
std::function<PadicElt(long)> teich_power(const Ctx& ctx, long i);

// prod_{i=0}^{k} prod_{m=1}^{M} Phi_m(u^{-i}(1+T)-1)/p.
TruncSeries log_product(const Ctx& ctx, long k, long M);

// prod_{i=0}^{h-1} omega_{r-1}(u^{-i}(1+T)-1).
TruncSeries twisted_omega_product(const Ctx& ctx, long h, long r);

}  // namespace asai
