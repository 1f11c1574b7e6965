#include "asai/cyclo.hpp"

#include <algorithm>

namespace asai {

CycloRing::CycloRing(const Ctx& ctx, long m) : ctx_(ctx), m_(m) {
  if (m < 0) throw ValidationError("cyclotomic level must be >= 0");
  if (m == 0) return;
  q_ = ctx->ppow(m - 1).get_si();
  dim_ = (ctx->p - 1) * q_;
  order_ = ctx->p * q_;
}

std::vector<PadicElt> CycloRing::reduce(std::vector<PadicElt> v) const {
  if (m_ == 0) {
    PadicElt s;
    for (auto& x : v) s += x;
    return {s};
  }
  const long p = ctx_->p;
  const long top = (p - 1) * q_;
  for (long e = (long)v.size() - 1; e >= dim_; --e) {
    if (v[e].is_exact_zero()) continue;
    PadicElt c = v[e];
    v[e] = PadicElt();
    long base = e - top;
    for (long l = 0; l <= p - 2; ++l) v[base + l * q_] -= c;
  }
  v.resize(dim_);
  return v;
}

std::vector<PadicElt> CycloRing::mul(const std::vector<PadicElt>& a, const std::vector<PadicElt>& b) const {
  std::vector<PadicElt> r(a.size() + b.size());
  for (size_t i = 0; i < a.size(); ++i) {
    if (a[i].is_exact_zero()) continue;
    for (size_t j = 0; j < b.size(); ++j)
      if (!b[j].is_exact_zero()) r[i + j] += a[i] * b[j];
  }
  return reduce(std::move(r));
}

std::vector<PadicElt> CycloRing::shift(const std::vector<PadicElt>& a, long e) const {
  if (m_ == 0) return reduce(a);
  e = ((e % order_) + order_) % order_;
  std::vector<PadicElt> r(a.size() + e);
  for (size_t i = 0; i < a.size(); ++i) r[i + e] = a[i];
  return reduce(std::move(r));
}

CycloElt CycloElt::zero(const CycloRing& R) { return {R, std::vector<PadicElt>(R.dim())}; }

CycloElt CycloElt::scalar(const CycloRing& R, const PadicElt& a) {
  CycloElt z = zero(R);
  z.v[0] = a;
  return z;
}

CycloElt CycloElt::zeta_pow(const CycloRing& R, long e) {
  CycloElt one = scalar(R, PadicElt(R.ctx(), 1L));
  one.v = R.shift(one.v, e);
  return one;
}

CycloElt CycloElt::operator+(const CycloElt& o) const {
  CycloElt r = *this;
  for (long i = 0; i < ring.dim(); ++i) r.v[i] += o.v[i];
  return r;
}

CycloElt CycloElt::operator-(const CycloElt& o) const {
  CycloElt r = *this;
  for (long i = 0; i < ring.dim(); ++i) r.v[i] -= o.v[i];
  return r;
}

CycloElt CycloElt::operator*(const CycloElt& o) const { return {ring, ring.mul(v, o.v)}; }

CycloElt CycloElt::operator*(const PadicElt& s) const {
  CycloElt r = *this;
  for (auto& x : r.v) x = x * s;
  return r;
}

bool CycloElt::is_zero() const {
  return std::all_of(v.begin(), v.end(), [](const PadicElt& x) { return x.is_zero(); });
}

long CycloElt::abs_prec() const {
  long m = kInf;
  for (const auto& x : v) m = std::min(m, x.abs_prec());
  return m;
}

std::string CycloElt::str() const {
  std::string s = "[";
  for (size_t i = 0; i < v.size(); ++i) {
    if (i) s += ", ";
    s += v[i].str();
  }
  return s + "]";
}

bool agree(const CycloElt& a, const CycloElt& b) {
  if (a.ring.level() != b.ring.level()) throw ValidationError("cyclotomic level mismatch");
  return (a - b).is_zero();
}

void DirichletChar::validate(const Ctx& ctx) const {
  if (p != ctx->p) throw ValidationError("character prime does not match the context");
  if (r < 0) throw ValidationError("character conductor exponent must be >= 0");
  if (r == 0) {
    if (delta_power != 0 || wild_exp != 0) throw ValidationError("conductor 1 forces the trivial character");
    return;
  }
  if (delta_power < 0 || delta_power >= p - 1) throw ValidationError("delta_power out of range");
  long w = ctx->ppow(r - 1).get_si();
  if (wild_exp < 0 || wild_exp >= w) throw ValidationError("wild_exp out of range");
}

CycloRing DirichletChar::ring(const Ctx& ctx) const { return CycloRing(ctx, std::max(0L, r - 1)); }

CycloElt DirichletChar::value(const Ctx& ctx, const LogTable& tab, long t) const {
  CycloRing R = ring(ctx);
  if (r == 0) return CycloElt::scalar(R, PadicElt(ctx, 1L));
  PadicElt d = PadicElt::from_residue(ctx, ctx->teich[t % p], ctx->N).pow(delta_power);
  CycloElt z = CycloElt::zeta_pow(R, wild_exp * tab.log(t));
  return z * d;
}

CycloElt eval_series_at(const TruncSeries& f, long j, const DirichletChar& theta, const Ctx& ctx) {
  theta.validate(ctx);
  if (j < 0) throw ValidationError("twist j must be >= 0");
  CycloRing R = theta.ring(ctx);
  PadicElt uj = PadicElt(ctx, ctx->u).pow(j);
  PadicElt one(ctx, 1L);
  long w = theta.r >= 1 ? theta.wild_exp : 0;
  CycloElt acc = CycloElt::zero(R);
  if (w == 0) {
    PadicElt x = uj - one, s;
    if (j == 0) {
      s = f.size() ? f.c[0] : PadicElt();
    } else {
      s = f.eval(x);
    }
    acc.v[0] = s;
    return acc;
  }
  for (long i = f.size() - 1; i >= 0; --i) {
    std::vector<PadicElt> sh = R.shift(acc.v, w);
    for (long k = 0; k < R.dim(); ++k) acc.v[k] = sh[k] * uj - acc.v[k];
    acc.v[0] += f.c[i];
  }
  if (!f.exact) {
    if (f.tail_floor <= -kInf) throw PrecisionError("evaluation of a series without a tail bound");
    // zeta^w has order p^s; v(u^j zeta^w - 1) = 1/phi(p^s).
    long s = R.level() - mpz_val(mpz_class(w), ctx->p);
    long e = (ctx->p - 1) * ctx->ppow(s - 1).get_si();
    long cap = f.tail_floor + (f.dmax + 1) / e;
    for (auto& x : acc.v) x = x.is_exact_zero() ? PadicElt::zero(ctx, cap) : x.cap_abs(cap);
  }
  return acc;
}

CycloElt char_sum(const Ctx& ctx, const std::vector<PadicElt>& values, const DirichletChar& theta) {
  theta.validate(ctx);
  if (theta.r < 1) throw ValidationError("char_sum needs conductor exponent >= 1");
  LogTable tab(ctx, theta.r);
  CycloElt acc = CycloElt::zero(theta.ring(ctx));
  for (long t : tab.units()) {
    if (t >= (long)values.size() || values[t].is_exact_zero()) continue;
    acc = acc + theta.value(ctx, tab, t) * values[t];
  }
  return acc;
}

}  // namespace asai
