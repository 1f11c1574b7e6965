#include "asai/series.hpp"

#include <algorithm>

namespace asai {

namespace {

const PadicElt kZero;

long tail_beyond(const TruncSeries& s, long D) {
  long t = s.exact ? kInf : s.tail_floor;
  for (long i = D + 1; i < s.size(); ++i) t = std::min(t, s.c[i].val());
  return t;
}

long joint_dmax(const TruncSeries& a, const TruncSeries& b) {
  long D = kInf;
  if (!a.exact) D = std::min(D, a.dmax);
  if (!b.exact) D = std::min(D, b.dmax);
  return D;
}

const Ctx& series_ctx(const TruncSeries& a, const TruncSeries& b) {
  if (!a.ctx) return b.ctx;
  if (!b.ctx) return a.ctx;
  if (a.ctx != b.ctx && (a.ctx->p != b.ctx->p || a.ctx->N != b.ctx->N || a.ctx->u != b.ctx->u))
    throw ContextMismatch("series context mismatch");
  return a.ctx;
}

}  // namespace

TruncSeries TruncSeries::poly(const Ctx& ctx, std::vector<PadicElt> coeffs) {
  TruncSeries s;
  s.ctx = ctx;
  s.c = std::move(coeffs);
  s.exact = true;
  s.trim();
  return s;
}

TruncSeries TruncSeries::series(const Ctx& ctx, std::vector<PadicElt> coeffs, long dmax, long tail_floor) {
  TruncSeries s;
  s.ctx = ctx;
  s.c = std::move(coeffs);
  s.c.resize(dmax + 1);
  s.dmax = dmax;
  s.exact = false;
  s.tail_floor = tail_floor;
  return s;
}

TruncSeries TruncSeries::constant(const Ctx& ctx, const PadicElt& a) { return poly(ctx, {a}); }

TruncSeries TruncSeries::monomial(const Ctx& ctx, const PadicElt& a, long n) {
  std::vector<PadicElt> v(n + 1);
  v[n] = a;
  return poly(ctx, std::move(v));
}

void TruncSeries::trim() {
  if (!exact) return;
  while (!c.empty() && c.back().is_exact_zero()) c.pop_back();
  dmax = std::max(0L, (long)c.size() - 1);
}

long TruncSeries::degree() const {
  for (long i = size() - 1; i >= 0; --i)
    if (!c[i].is_zero()) return i;
  return -1;
}

const PadicElt& TruncSeries::coeff(long n) const {
  if (n < size()) return c[n];
  if (!exact) throw PrecisionError("coefficient beyond the truncation degree");
  return kZero;
}

long TruncSeries::min_val() const {
  long m = exact ? kInf : tail_floor;
  for (const auto& x : c) m = std::min(m, x.val());
  return m;
}

TruncSeries TruncSeries::operator+(const TruncSeries& o) const {
  TruncSeries r;
  r.ctx = series_ctx(*this, o);
  if (exact && o.exact) {
    r.c.resize(std::max(size(), o.size()));
    for (long i = 0; i < r.size(); ++i) r.c[i] = coeff(i) + o.coeff(i);
    r.trim();
    return r;
  }
  long D = joint_dmax(*this, o);
  r.exact = false;
  r.dmax = D;
  r.c.resize(D + 1);
  for (long i = 0; i <= D; ++i) {
    const PadicElt& x = i < size() ? c[i] : kZero;
    const PadicElt& y = i < o.size() ? o.c[i] : kZero;
    r.c[i] = x + y;
  }
  r.tail_floor = std::min(tail_beyond(*this, D), tail_beyond(o, D));
  return r;
}

TruncSeries TruncSeries::operator-() const {
  TruncSeries r = *this;
  for (auto& x : r.c) x = -x;
  return r;
}

TruncSeries TruncSeries::operator-(const TruncSeries& o) const { return *this + (-o); }

TruncSeries TruncSeries::operator*(const TruncSeries& o) const {
  TruncSeries r;
  r.ctx = series_ctx(*this, o);
  if (c.empty() && exact) return *this;
  if (o.c.empty() && o.exact) return o;
  if (exact && o.exact) {
    r.c.assign(size() + o.size() - 1, PadicElt());
    for (long i = 0; i < size(); ++i) {
      if (c[i].is_exact_zero()) continue;
      for (long j = 0; j < o.size(); ++j)
        if (!o.c[j].is_exact_zero()) r.c[i + j] += c[i] * o.c[j];
    }
    r.trim();
    return r;
  }
  long D = joint_dmax(*this, o);
  r.exact = false;
  r.dmax = D;
  r.c.assign(D + 1, PadicElt());
  for (long i = 0; i < size() && i <= D; ++i) {
    if (c[i].is_exact_zero()) continue;
    for (long j = 0; j < o.size() && i + j <= D; ++j)
      if (!o.c[j].is_exact_zero()) r.c[i + j] += c[i] * o.c[j];
  }
  long ma = min_val(), mb = o.min_val();
  r.tail_floor = (ma >= kInf || mb >= kInf) ? kInf : ma + mb;
  return r;
}

TruncSeries TruncSeries::operator*(const PadicElt& s) const {
  TruncSeries r = *this;
  for (auto& x : r.c) x = x * s;
  if (!exact && tail_floor < kInf) r.tail_floor = s.is_exact_zero() ? kInf : tail_floor + s.val();
  r.trim();
  return r;
}

TruncSeries TruncSeries::truncate(long D) const {
  TruncSeries r;
  r.ctx = ctx;
  r.exact = false;
  r.dmax = exact ? D : std::min(D, dmax);
  r.c.assign(r.dmax + 1, PadicElt());
  for (long i = 0; i <= r.dmax && i < size(); ++i) r.c[i] = c[i];
  r.tail_floor = tail_beyond(*this, r.dmax);
  return r;
}

TruncSeries TruncSeries::shift_up(long k) const {
  TruncSeries r = *this;
  r.c.insert(r.c.begin(), k, PadicElt());
  if (exact)
    r.trim();
  else
    r.dmax += k;
  return r;
}

PadicElt TruncSeries::eval(const PadicElt& x) const {
  PadicElt acc;
  for (long i = size() - 1; i >= 0; --i) acc = acc * x + c[i];
  if (!exact) {
    if (x.is_exact_zero()) return acc;
    if (x.val() <= 0) throw PrecisionError("evaluating a truncated series outside the open disc");
    if (tail_floor > -kInf) acc = acc.cap_abs(tail_floor + (dmax + 1) * x.val());
  }
  return acc;
}

bool agree(const TruncSeries& a, const TruncSeries& b) {
  long n = std::max(a.size(), b.size());
  if (!a.exact) n = std::min(n, a.dmax + 1);
  if (!b.exact) n = std::min(n, b.dmax + 1);
  for (long i = 0; i < n; ++i)
    if (!agree(i < a.size() ? a.c[i] : kZero, i < b.size() ? b.c[i] : kZero)) return false;
  return true;
}

TruncSeries compose_affine(const TruncSeries& f, const PadicElt& alpha, const PadicElt& beta) {
  const Ctx& ctx = f.ctx;
  TruncSeries lin = TruncSeries::poly(ctx, {beta, alpha});
  if (f.exact) {
    TruncSeries acc = TruncSeries::poly(ctx, {});
    for (long i = f.size() - 1; i >= 0; --i) {
      acc = acc * lin;
      if (acc.c.empty()) acc.c.resize(1);
      acc.c[0] += f.c[i];
      acc.trim();
    }
    return acc;
  }
  if (!alpha.is_exact_zero() && alpha.val() < 0)
    throw PrecisionError("affine substitution into a truncated series needs integral alpha");
  if (!beta.is_exact_zero() && beta.val() < 1)
    throw PrecisionError("affine substitution into a truncated series needs v(beta) >= 1");
  const long D = f.dmax;
  std::vector<PadicElt> acc(D + 1);
  for (long i = D; i >= 0; --i) {
    // acc <- acc * (beta + alpha T) + f_i, truncated at D.
    for (long m = D; m >= 0; --m) {
      PadicElt v = acc[m] * beta;
      if (m > 0) v += acc[m - 1] * alpha;
      acc[m] = v;
    }
    acc[0] += f.c[i];
  }
  long tf = std::min(f.tail_floor, f.min_val());
  if (!beta.is_exact_zero() && f.tail_floor > -kInf) {
    for (long m = 0; m <= D; ++m) acc[m] = acc[m].cap_abs(f.tail_floor + (D + 1 - m) * beta.val());
  }
  return TruncSeries::series(ctx, std::move(acc), D, tf);
}

TruncSeries twist_sub(const TruncSeries& f, long j) {
  if (j == 0) return f;
  const Ctx& ctx = f.ctx;
  PadicElt a = PadicElt(ctx, ctx->u).pow(-j);
  return compose_affine(f, a, a - PadicElt(ctx, 1L));
}

TruncSeries omega(const Ctx& ctx, long r) {
  mpz_class P = ctx->ppow(r);
  if (P > 1000000) throw ValidationError("omega: degree too large");
  long n = P.get_si();
  std::vector<PadicElt> v(n + 1);
  mpz_class b = 1;
  for (long i = 1; i <= n; ++i) {
    b = b * (n - i + 1) / i;
    v[i] = PadicElt(ctx, b);
  }
  return TruncSeries::poly(ctx, std::move(v));
}

TruncSeries phi_n(const Ctx& ctx, long n) {
  if (n < 1) throw ValidationError("phi_n needs n >= 1");
  const long p = ctx->p;
  long q = ctx->ppow(n - 1).get_si();
  std::vector<PadicElt> b((p - 1) * q + 1);
  for (long l = 0; l < p; ++l) b[l * q] = PadicElt(ctx, 1L);
  return from_one_plus_T(ctx, b);
}

void divmod(const TruncSeries& f, const TruncSeries& g, TruncSeries& q, TruncSeries& r) {
  const Ctx& ctx = series_ctx(f, g);
  long dg = g.degree();
  if (dg < 0) throw std::domain_error("division by the zero polynomial");
  PadicElt lead_inv = g.c[dg].inv();
  std::vector<PadicElt> rem(f.c.begin(), f.c.end());
  long df = (long)rem.size() - 1;
  std::vector<PadicElt> quo(std::max(0L, df - dg + 1));
  for (long i = df; i >= dg; --i) {
    if (rem[i].is_exact_zero()) continue;
    PadicElt t = rem[i] * lead_inv;
    quo[i - dg] = t;
    for (long j = 0; j <= dg; ++j)
      if (!g.c[j].is_exact_zero()) rem[i - dg + j] -= t * g.c[j];
    rem[i] = PadicElt();
  }
  if ((long)rem.size() > dg) rem.resize(dg);
  q = TruncSeries::poly(ctx, std::move(quo));
  r = TruncSeries::poly(ctx, std::move(rem));
}

TruncSeries rem(const TruncSeries& f, const TruncSeries& g) {
  TruncSeries q, r;
  divmod(f, g, q, r);
  return r;
}

TruncSeries make_monic(const TruncSeries& g) {
  long d = g.degree();
  if (d < 0) throw std::domain_error("zero polynomial has no monic form");
  TruncSeries m = g * g.c[d].inv();
  m.c.resize(d + 1);
  m.c[d] = PadicElt(g.ctx, 1L);
  return m;
}

TruncSeries rem_distinguished(const TruncSeries& f, const TruncSeries& m) {
  long D = m.degree();
  if (D < 0 || !agree(m.c[D], PadicElt(m.ctx, 1L))) throw ValidationError("rem_distinguished: modulus must be monic");
  for (long i = 0; i < D; ++i)
    if (m.c[i].val() < 1) throw ValidationError("rem_distinguished: modulus is not distinguished");
  TruncSeries body = f;
  body.exact = true;
  TruncSeries r = rem(body, m);
  if (!f.exact && f.tail_floor > -kInf) {
    long cap = f.tail_floor + (f.dmax + 1) / D;
    r.c.resize(D);
    for (auto& x : r.c) x = x.is_exact_zero() ? PadicElt::zero(f.ctx, cap) : x.cap_abs(cap);
  }
  return r;
}

TruncSeries series_inverse(const TruncSeries& f, long D) {
  const Ctx& ctx = f.ctx;
  const PadicElt& a0 = f.coeff(0);
  if (a0.is_zero()) throw PrecisionError("series inverse: constant term is zero to precision");
  long Dm = f.exact ? D : std::min(D, f.dmax);
  PadicElt b0 = a0.inv();
  std::vector<PadicElt> b(Dm + 1);
  b[0] = b0;
  for (long n = 1; n <= Dm; ++n) {
    PadicElt s;
    for (long i = 1; i <= n && i < f.size(); ++i)
      if (!f.c[i].is_exact_zero()) s += f.c[i] * b[n - i];
    b[n] = -(s * b0);
  }
  long floor = (a0.val() == 0 && f.min_val() >= 0) ? 0 : -kInf;
  return TruncSeries::series(ctx, std::move(b), Dm, floor);
}

long binomial_digits(const Ctx& ctx, long D) {
  long v = 0;
  for (long q = ctx->p; q <= D; q *= ctx->p) v += D / q;
  return ctx->N + v + 1;
}

TruncSeries binomial_series(const Ctx& ctx, const mpz_class& lambda, long lam_digits, long D) {
  const long p = ctx->p;
  mpz_class mod = ctx->ppow(lam_digits);
  mpz_class lam;
  mpz_fdiv_r(lam.get_mpz_t(), lambda.get_mpz_t(), mod.get_mpz_t());
  std::vector<PadicElt> v(D + 1);
  v[0] = PadicElt(ctx, 1L);
  mpz_class P = 1, fu = 1, tmp, inv;
  long fv = 0;
  for (long n = 1; n <= D; ++n) {
    tmp = lam - (n - 1);
    P *= tmp;
    mpz_fdiv_r(P.get_mpz_t(), P.get_mpz_t(), mod.get_mpz_t());
    long nn = n;
    while (nn % p == 0) {
      nn /= p;
      ++fv;
    }
    fu *= nn;
    mpz_fdiv_r(fu.get_mpz_t(), fu.get_mpz_t(), mod.get_mpz_t());
    long abs = lam_digits - fv;
    if (abs <= 0) {
      v[n] = PadicElt::zero(ctx, 0);
      continue;
    }
    mpz_class amod = ctx->ppow(abs);
    mpz_class q = P / ctx->ppow(fv);
    mpz_invert(inv.get_mpz_t(), fu.get_mpz_t(), amod.get_mpz_t());
    q *= inv;
    mpz_fdiv_r(q.get_mpz_t(), q.get_mpz_t(), amod.get_mpz_t());
    v[n] = PadicElt::from_residue(ctx, q, abs);
  }
  return TruncSeries::series(ctx, std::move(v), D, 0);
}

TruncSeries from_one_plus_T(const Ctx& ctx, const std::vector<PadicElt>& b) {
  long n = (long)b.size();
  std::vector<PadicElt> a(n);
  mpz_class bin;
  for (long m = 0; m < n; ++m) {
    if (b[m].is_exact_zero()) continue;
    bin = 1;
    for (long k = 0; k <= m; ++k) {
      a[k] += b[m] * PadicElt(ctx, bin);
      bin = bin * (m - k) / (k + 1);
    }
  }
  return TruncSeries::poly(ctx, std::move(a));
}

std::function<PadicElt(long)> teich_power(const Ctx& ctx, long i) {
  const long p = ctx->p;
  long e = ((i % (p - 1)) + (p - 1)) % (p - 1);
  std::vector<PadicElt> vals(p);
  for (long t = 1; t < p; ++t) vals[t] = PadicElt::from_residue(ctx, ctx->teich[t], ctx->N).pow(e);
  return [vals, p](long t) { return vals[((t % p) + p) % p]; };
}

TruncSeries group_ring_to_poly(const Ctx& ctx, const LogTable& tab, const std::vector<PadicElt>& coeffs,
                               const std::function<PadicElt(long)>& delta) {
  long d = tab.modulus() / ctx->p;
  std::vector<PadicElt> b(d);
  for (long t : tab.units()) {
    if (t >= (long)coeffs.size() || coeffs[t].is_exact_zero()) continue;
    b[tab.log(t)] += coeffs[t] * delta(t);
  }
  return from_one_plus_T(ctx, b);
}

TruncSeries log_product(const Ctx& ctx, long k, long M) {
  TruncSeries r = TruncSeries::constant(ctx, PadicElt(ctx, 1L));
  PadicElt pinv = PadicElt(ctx, ctx->p).inv();
  for (long m = 1; m <= M; ++m) {
    TruncSeries ph = phi_n(ctx, m) * pinv;
    for (long i = 0; i <= k; ++i) r = r * twist_sub(ph, i);
  }
  return r;
}

TruncSeries twisted_omega_product(const Ctx& ctx, long h, long r) {
  TruncSeries w = omega(ctx, r - 1);
  TruncSeries acc = TruncSeries::constant(ctx, PadicElt(ctx, 1L));
  for (long i = 0; i < h; ++i) acc = acc * twist_sub(w, i);
  return acc;
}

}  // namespace asai
