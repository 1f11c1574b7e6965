#pragma once

#include <gmpxx.h>

#include <memory>
#include <string>
#include <vector>

#include "asai/errors.hpp"

namespace asai {

// Sentinel for "no finite bound" on absolute precision or valuation.
constexpr long kInf = 1L << 40;

// Prime, topological generator of 1 + pZ_p and the digit budget.
// Caches powers of p and the Teichmuller residues at full precision.
struct PrimeCtx {
  long p;
  long u;
  int N;
  std::vector<mpz_class> pw;     // p^0 .. p^(2N+2)
  std::vector<mpz_class> teich;  // teich[t] for t = 1..p-1, mod p^N

  PrimeCtx(long p, int N, long u = 0);
  mpz_class ppow(long e) const;
  const mpz_class& modulus() const { return pw[N]; }
};

using Ctx = std::shared_ptr<const PrimeCtx>;

Ctx make_ctx(long p, int N, long u = 0);

bool is_prime(long n);

// v_p as a half-integer, with +inf.
class Valuation {
 public:
  Valuation() : twice_(0), inf_(true) {}
  static Valuation of_int(long v) { return Valuation(2 * v, false); }
  static Valuation of_twice(long t) { return Valuation(t, false); }
  static Valuation infinity() { return Valuation(); }

  bool is_inf() const { return inf_; }
  long twice() const { return twice_; }
  bool is_integral() const { return !inf_ && twice_ % 2 == 0; }
  long floor() const;
  double to_double() const;
  std::string str() const;

  Valuation operator+(const Valuation& o) const;
  bool operator==(const Valuation& o) const { return inf_ == o.inf_ && (inf_ || twice_ == o.twice_); }
  bool operator<(const Valuation& o) const;
  bool operator<=(const Valuation& o) const { return !(o < *this); }

 private:
  Valuation(long t, bool inf) : twice_(t), inf_(inf) {}
  long twice_;
  bool inf_;
};

Valuation min(const Valuation& a, const Valuation& b);

// p^val * unit, the unit known modulo p^rel with rel <= N.
// rel == 0 is the tracked zero O(p^val). A null context is the exact zero.
class PadicElt {
 public:
  PadicElt() = default;
  PadicElt(const Ctx& ctx, long n);
  PadicElt(const Ctx& ctx, const mpz_class& n);
  PadicElt(const Ctx& ctx, const mpq_class& q);

  static PadicElt zero(const Ctx& ctx, long abs);
  static PadicElt from_parts(const Ctx& ctx, long val, mpz_class unit, long rel);
  // Integer residue known modulo p^abs.
  static PadicElt from_residue(const Ctx& ctx, const mpz_class& r, long abs);

  const Ctx& ctx() const { return ctx_; }
  bool is_exact_zero() const { return !ctx_; }
  bool is_zero() const { return !ctx_ || rel_ == 0; }
  long val() const { return ctx_ ? val_ : kInf; }
  long rel() const { return rel_; }
  long abs_prec() const { return ctx_ ? val_ + rel_ : kInf; }
  const mpz_class& unit() const { return unit_; }
  Valuation valuation() const { return is_zero() ? Valuation::infinity() : Valuation::of_int(val_); }

  PadicElt operator-() const;
  PadicElt operator+(const PadicElt& o) const;
  PadicElt operator-(const PadicElt& o) const;
  PadicElt operator*(const PadicElt& o) const;
  PadicElt operator/(const PadicElt& o) const;
  PadicElt& operator+=(const PadicElt& o) { return *this = *this + o; }
  PadicElt& operator-=(const PadicElt& o) { return *this = *this - o; }
  PadicElt& operator*=(const PadicElt& o) { return *this = *this * o; }

  PadicElt inv() const;
  PadicElt pow(long e) const;
  PadicElt mul_pow_p(long e) const;
  // Lower the absolute precision to at most a.
  PadicElt cap_abs(long a) const;

  // p^val * unit as an exact rational (the canonical lift).
  mpq_class lift() const;
  // Residue mod p^abs when val >= 0.
  mpz_class residue() const;

  std::string str() const;
  static PadicElt parse(const Ctx& ctx, const std::string& s);

 private:
  void normalize(mpz_class s, long val, long rel);
  Ctx ctx_;
  long val_ = 0;
  long rel_ = 0;
  mpz_class unit_;
};

const Ctx& common_ctx(const PadicElt& a, const PadicElt& b);

// True iff a - b vanishes at the joint precision.
bool agree(const PadicElt& a, const PadicElt& b);

// The (p-1)-th root of unity congruent to t mod p, known mod p^r.
PadicElt teichmuller(const Ctx& ctx, long t, long r);

// Unique 0 <= m < p^(r-1) with u^m = t / eps(t) mod p^r, by enumeration.
long log_u(const Ctx& ctx, const mpz_class& t, long r);

// u-logarithm of <z> = z / eps(z) modulo p^digits, digit by digit.
mpz_class log_u_padic(const Ctx& ctx, const mpz_class& z, long digits);

// Teichmuller class and log_u for every unit residue mod p^r.
class LogTable {
 public:
  LogTable(const Ctx& ctx, long r);
  long r() const { return r_; }
  long modulus() const { return mod_; }
  bool is_unit(long t) const { return logs_[reduce(t)] >= 0; }
  long log(long t) const { return logs_[reduce(t)]; }
  long teich_class(long t) const { return t % p_; }
  const std::vector<long>& units() const { return units_; }

 private:
  long reduce(long t) const { return ((t % mod_) + mod_) % mod_; }
  long r_, p_, mod_;
  std::vector<long> logs_;
  std::vector<long> units_;
};

long mpz_val(const mpz_class& n, long p);

}  // namespace asai
