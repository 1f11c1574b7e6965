#include "asai/padic.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace asai {

bool is_prime(long n) {
  if (n < 2) return false;
  for (long d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

long mpz_val(const mpz_class& n, long p) {
  if (n == 0) return kInf;
  mpz_class m = n, pp = p;
  return (long)mpz_remove(m.get_mpz_t(), m.get_mpz_t(), pp.get_mpz_t());
}

static mpz_class teich_residue(long p, long t, const mpz_class& mod) {
  mpz_class x = t % p, prev;
  mpz_class pp = p;
  do {
    prev = x;
    mpz_powm(x.get_mpz_t(), x.get_mpz_t(), pp.get_mpz_t(), mod.get_mpz_t());
  } while (x != prev);
  return x;
}

PrimeCtx::PrimeCtx(long p_, int N_, long u_) : p(p_), u(u_ ? u_ : 1 + p_), N(N_) {
  if (p < 3 || !is_prime(p)) throw ValidationError("p must be an odd prime");
  if (N < 1) throw ValidationError("precision must be >= 1");
  if (((u % p) + p) % p != 1 || ((u - 1) % (p * p)) == 0)
    throw ValidationError("u must be 1 mod p and not 1 mod p^2");
  pw.resize(2 * N + 3);
  pw[0] = 1;
  for (size_t i = 1; i < pw.size(); ++i) pw[i] = pw[i - 1] * p;
  teich.assign(p, 0);
  for (long t = 1; t < p; ++t) teich[t] = teich_residue(p, t, pw[N]);
}

mpz_class PrimeCtx::ppow(long e) const {
  if (e >= 0 && (size_t)e < pw.size()) return pw[e];
  mpz_class r;
  mpz_ui_pow_ui(r.get_mpz_t(), p, e);
  return r;
}

Ctx make_ctx(long p, int N, long u) { return std::make_shared<const PrimeCtx>(p, N, u); }

// ---------------------------------------------------------------- Valuation

long Valuation::floor() const {
  if (inf_) return kInf;
  return twice_ >= 0 ? twice_ / 2 : -((-twice_ + 1) / 2);
}

double Valuation::to_double() const { return inf_ ? 1e300 : twice_ / 2.0; }

std::string Valuation::str() const {
  if (inf_) return "inf";
  if (twice_ % 2 == 0) return std::to_string(twice_ / 2);
  return std::to_string(twice_) + "/2";
}

Valuation Valuation::operator+(const Valuation& o) const {
  if (inf_ || o.inf_) return infinity();
  return of_twice(twice_ + o.twice_);
}

bool Valuation::operator<(const Valuation& o) const {
  if (inf_) return false;
  if (o.inf_) return true;
  return twice_ < o.twice_;
}

Valuation min(const Valuation& a, const Valuation& b) { return a < b ? a : b; }

// ---------------------------------------------------------------- PadicElt

const Ctx& common_ctx(const PadicElt& a, const PadicElt& b) {
  if (!a.ctx()) return b.ctx();
  if (!b.ctx()) return a.ctx();
  if (a.ctx() != b.ctx()) {
    const PrimeCtx& x = *a.ctx();
    const PrimeCtx& y = *b.ctx();
    if (x.p != y.p || x.N != y.N || x.u != y.u) throw ContextMismatch("p-adic context mismatch");
  }
  return a.ctx();
}

void PadicElt::normalize(mpz_class s, long val, long rel) {
  if (rel <= 0 || s == 0) {
    val_ = val + std::max(rel, 0L);
    rel_ = 0;
    unit_ = 0;
    return;
  }
  const long p = ctx_->p;
  if (mpz_divisible_ui_p(s.get_mpz_t(), p)) {
    mpz_class pp = p;
    long v = (long)mpz_remove(s.get_mpz_t(), s.get_mpz_t(), pp.get_mpz_t());
    val += v;
    rel -= v;
  }
  if (rel > ctx_->N) {
    rel = ctx_->N;
    mpz_fdiv_r(s.get_mpz_t(), s.get_mpz_t(), ctx_->pw[rel].get_mpz_t());
  }
  val_ = val;
  rel_ = rel;
  unit_ = std::move(s);
}

PadicElt::PadicElt(const Ctx& ctx, long n) : PadicElt(ctx, mpz_class(n)) {}

PadicElt::PadicElt(const Ctx& ctx, const mpz_class& n) {
  if (n == 0) return;
  ctx_ = ctx;
  mpz_class s = n;
  mpz_class pp = ctx->p;
  long v = (long)mpz_remove(s.get_mpz_t(), s.get_mpz_t(), pp.get_mpz_t());
  mpz_fdiv_r(s.get_mpz_t(), s.get_mpz_t(), ctx->pw[ctx->N].get_mpz_t());
  val_ = v;
  rel_ = ctx->N;
  unit_ = s;
}

PadicElt::PadicElt(const Ctx& ctx, const mpq_class& q) {
  if (q == 0) return;
  ctx_ = ctx;
  mpz_class num = q.get_num(), den = q.get_den();
  mpz_class pp = ctx->p;
  long vn = (long)mpz_remove(num.get_mpz_t(), num.get_mpz_t(), pp.get_mpz_t());
  long vd = (long)mpz_remove(den.get_mpz_t(), den.get_mpz_t(), pp.get_mpz_t());
  const mpz_class& mod = ctx->pw[ctx->N];
  mpz_invert(den.get_mpz_t(), den.get_mpz_t(), mod.get_mpz_t());
  num *= den;
  mpz_fdiv_r(num.get_mpz_t(), num.get_mpz_t(), mod.get_mpz_t());
  val_ = vn - vd;
  rel_ = ctx->N;
  unit_ = num;
}

PadicElt PadicElt::zero(const Ctx& ctx, long abs) {
  PadicElt z;
  z.ctx_ = ctx;
  z.val_ = abs;
  z.rel_ = 0;
  return z;
}

PadicElt PadicElt::from_parts(const Ctx& ctx, long val, mpz_class unit, long rel) {
  PadicElt z;
  z.ctx_ = ctx;
  if (rel > 0) mpz_fdiv_r(unit.get_mpz_t(), unit.get_mpz_t(), ctx->ppow(rel).get_mpz_t());
  z.normalize(std::move(unit), val, rel);
  return z;
}

PadicElt PadicElt::from_residue(const Ctx& ctx, const mpz_class& r, long abs) {
  return from_parts(ctx, 0, r, abs);
}

PadicElt PadicElt::operator-() const {
  if (is_zero()) return *this;
  PadicElt r = *this;
  r.unit_ = ctx_->pw[rel_] - unit_;
  return r;
}

PadicElt PadicElt::operator+(const PadicElt& o) const {
  if (!ctx_) return o;
  if (!o.ctx_) return *this;
  const Ctx& c = common_ctx(*this, o);
  const long abs = std::min(abs_prec(), o.abs_prec());
  const PadicElt& x = val_ <= o.val_ ? *this : o;
  const PadicElt& y = val_ <= o.val_ ? o : *this;
  const long vx = x.val_;
  if (abs <= vx) return zero(c, abs);
  const long rs = abs - vx;
  mpz_class s = x.unit_;
  const long shift = y.val_ - vx;
  if (y.rel_ > 0 && shift < rs) {
    if (shift == 0)
      s += y.unit_;
    else
      mpz_addmul(s.get_mpz_t(), y.unit_.get_mpz_t(), c->pw[shift].get_mpz_t());
  }
  mpz_fdiv_r(s.get_mpz_t(), s.get_mpz_t(), c->pw[rs].get_mpz_t());
  PadicElt r;
  r.ctx_ = c;
  r.normalize(std::move(s), vx, rs);
  return r;
}

PadicElt PadicElt::operator-(const PadicElt& o) const { return *this + (-o); }

PadicElt PadicElt::operator*(const PadicElt& o) const {
  if (!ctx_ || !o.ctx_) return PadicElt();
  const Ctx& c = common_ctx(*this, o);
  if (rel_ == 0 || o.rel_ == 0) return zero(c, val_ + o.val_);
  PadicElt r;
  r.ctx_ = c;
  r.val_ = val_ + o.val_;
  r.rel_ = std::min(rel_, o.rel_);
  mpz_mul(r.unit_.get_mpz_t(), unit_.get_mpz_t(), o.unit_.get_mpz_t());
  mpz_fdiv_r(r.unit_.get_mpz_t(), r.unit_.get_mpz_t(), c->pw[r.rel_].get_mpz_t());
  return r;
}

PadicElt PadicElt::inv() const {
  if (!ctx_) throw std::domain_error("inverse of exact zero");
  if (rel_ == 0) throw PrecisionError("inverse of a tracked zero O(p^" + std::to_string(val_) + ")");
  PadicElt r;
  r.ctx_ = ctx_;
  r.val_ = -val_;
  r.rel_ = rel_;
  mpz_invert(r.unit_.get_mpz_t(), unit_.get_mpz_t(), ctx_->pw[rel_].get_mpz_t());
  return r;
}

PadicElt PadicElt::operator/(const PadicElt& o) const {
  if (!ctx_) {
    if (!o.ctx_) throw std::domain_error("division by exact zero");
    return PadicElt();
  }
  return *this * o.inv();
}

PadicElt PadicElt::pow(long e) const {
  if (e < 0) return inv().pow(-e);
  if (e == 0) {
    if (!ctx_) return PadicElt();
    return PadicElt(ctx_, 1L);
  }
  if (!ctx_) return PadicElt();
  if (rel_ == 0) return zero(ctx_, val_ * e);
  PadicElt r;
  r.ctx_ = ctx_;
  r.val_ = val_ * e;
  r.rel_ = rel_;
  mpz_class ee = e;
  mpz_powm(r.unit_.get_mpz_t(), unit_.get_mpz_t(), ee.get_mpz_t(), ctx_->pw[rel_].get_mpz_t());
  return r;
}

PadicElt PadicElt::mul_pow_p(long e) const {
  if (!ctx_) return *this;
  PadicElt r = *this;
  r.val_ += e;
  return r;
}

PadicElt PadicElt::cap_abs(long a) const {
  if (!ctx_) return *this;
  if (abs_prec() <= a) return *this;
  if (a <= val_) return zero(ctx_, a);
  PadicElt r;
  r.ctx_ = ctx_;
  mpz_class s = unit_;
  long rel = a - val_;
  mpz_fdiv_r(s.get_mpz_t(), s.get_mpz_t(), ctx_->ppow(rel).get_mpz_t());
  r.normalize(std::move(s), val_, rel);
  return r;
}

mpq_class PadicElt::lift() const {
  if (is_zero()) return 0;
  mpq_class q(unit_);
  if (val_ >= 0)
    q *= ctx_->ppow(val_);
  else
    q /= ctx_->ppow(-val_);
  q.canonicalize();
  return q;
}

mpz_class PadicElt::residue() const {
  if (is_zero()) return 0;
  if (val_ < 0) throw ValidationError("residue of a non-integral element");
  mpz_class s = unit_ * ctx_->ppow(val_);
  return s;
}

std::string PadicElt::str() const {
  if (!ctx_) return "0";
  const long p = ctx_->p;
  if (rel_ == 0) return "O(" + std::to_string(p) + "^" + std::to_string(val_) + ")";
  std::ostringstream os;
  os << p << "^" << val_ << "*[";
  mpz_class s = unit_;
  for (long i = 0; i < rel_; ++i) {
    if (i) os << ",";
    os << mpz_fdiv_q_ui(s.get_mpz_t(), s.get_mpz_t(), p);
  }
  os << "]";
  return os.str();
}

static std::string strip_spaces(const std::string& s) {
  std::string r;
  for (char ch : s)
    if (!std::isspace((unsigned char)ch)) r += ch;
  return r;
}

PadicElt PadicElt::parse(const Ctx& ctx, const std::string& in) {
  std::string s = strip_spaces(in);
  if (s.empty()) throw ValidationError("empty p-adic literal");
  const long p = ctx->p;
  auto read_long = [&](const std::string& t) {
    size_t pos = 0;
    long v = std::stol(t, &pos);
    if (pos != t.size()) throw ValidationError("bad integer '" + t + "'");
    return v;
  };
  try {
    if (s.rfind("O(", 0) == 0 && s.back() == ')') {
      std::string body = s.substr(2, s.size() - 3);
      auto caret = body.find('^');
      if (caret == std::string::npos || read_long(body.substr(0, caret)) != p)
        throw ValidationError("bad tracked zero '" + in + "'");
      return zero(ctx, read_long(body.substr(caret + 1)));
    }
    auto star = s.find('*');
    if (star != std::string::npos) {
      std::string head = s.substr(0, star), body = s.substr(star + 1);
      auto caret = head.find('^');
      if (caret == std::string::npos || read_long(head.substr(0, caret)) != p)
        throw ValidationError("bad p-adic literal '" + in + "'");
      long v = read_long(head.substr(caret + 1));
      if (body.size() < 2 || body.front() != '[' || body.back() != ']')
        throw ValidationError("bad digit list in '" + in + "'");
      body = body.substr(1, body.size() - 2);
      std::vector<long> digits;
      std::stringstream ss(body);
      std::string tok;
      while (std::getline(ss, tok, ',')) {
        long d = read_long(tok);
        if (d < 0 || d >= p) throw ValidationError("digit out of range in '" + in + "'");
        digits.push_back(d);
      }
      if (digits.empty()) return zero(ctx, v);
      if (digits[0] == 0) throw ValidationError("leading unit digit is zero in '" + in + "'");
      if ((long)digits.size() > ctx->N) digits.resize(ctx->N);
      mpz_class u = 0;
      for (size_t i = digits.size(); i-- > 0;) u = u * p + digits[i];
      return from_parts(ctx, v, u, (long)digits.size());
    }
    mpq_class q(s);
    q.canonicalize();
    return PadicElt(ctx, q);
  } catch (const std::invalid_argument& e) {
    if (dynamic_cast<const ValidationError*>(&e)) throw;
    throw ValidationError("bad p-adic literal '" + in + "'");
  }
}

bool agree(const PadicElt& a, const PadicElt& b) { return (a - b).is_zero(); }

// ---------------------------------------------------------------- roots of unity, log_u

PadicElt teichmuller(const Ctx& ctx, long t, long r) {
  const long p = ctx->p;
  if (((t % p) + p) % p == 0) throw ValidationError("teichmuller of a non-unit");
  if (r < 1) throw ValidationError("teichmuller level must be >= 1");
  mpz_class mod = ctx->ppow(r);
  mpz_class x = ((t % p) + p) % p;
  mpz_class prev, pp = p;
  do {
    prev = x;
    mpz_powm(x.get_mpz_t(), x.get_mpz_t(), pp.get_mpz_t(), mod.get_mpz_t());
  } while (x != prev);
  return PadicElt::from_residue(ctx, x, r);
}

long log_u(const Ctx& ctx, const mpz_class& t, long r) {
  const long p = ctx->p;
  if (mpz_divisible_ui_p(t.get_mpz_t(), p)) throw ValidationError("log_u of a non-unit");
  if (r < 1) throw ValidationError("log_u level must be >= 1");
  mpz_class mod = ctx->ppow(r);
  mpz_class tr;
  mpz_fdiv_r(tr.get_mpz_t(), t.get_mpz_t(), mod.get_mpz_t());
  mpz_class e = teichmuller(ctx, mpz_fdiv_ui(tr.get_mpz_t(), p), r).residue();
  mpz_class y;
  mpz_invert(y.get_mpz_t(), e.get_mpz_t(), mod.get_mpz_t());
  y = y * tr % mod;
  mpz_class cur = 1;
  mpz_class count = ctx->ppow(r - 1);
  for (long m = 0; m < count; ++m) {
    if (cur == y) return m;
    cur = cur * ctx->u % mod;
  }
  throw ValidationError("log_u: no discrete logarithm found (is u a generator?)");
}

mpz_class log_u_padic(const Ctx& ctx, const mpz_class& z, long digits) {
  const long p = ctx->p;
  if (mpz_divisible_ui_p(z.get_mpz_t(), p)) throw ValidationError("log_u of a non-unit");
  const long W = digits + 1;
  mpz_class mod = ctx->ppow(W);
  mpz_class zr;
  mpz_fdiv_r(zr.get_mpz_t(), z.get_mpz_t(), mod.get_mpz_t());
  mpz_class e = teich_residue(p, mpz_fdiv_ui(zr.get_mpz_t(), p), mod);
  mpz_class cur;
  mpz_invert(cur.get_mpz_t(), e.get_mpz_t(), mod.get_mpz_t());
  cur = cur * zr % mod;
  mpz_class upow = ctx->u, pp = p, L = 0;
  for (long s = 0; s < digits; ++s) {
    mpz_class ps1 = ctx->ppow(s + 1);
    mpz_class a = (cur - 1) / ps1, b = (upow - 1) / ps1;
    long am = mpz_fdiv_ui(a.get_mpz_t(), p), bm = mpz_fdiv_ui(b.get_mpz_t(), p);
    long d = 0;
    if (am) {
      mpz_class binv, bb = bm;
      mpz_invert(binv.get_mpz_t(), bb.get_mpz_t(), pp.get_mpz_t());
      d = (long)(am * binv.get_si() % p);
      mpz_class step, dd = d;
      mpz_powm(step.get_mpz_t(), upow.get_mpz_t(), dd.get_mpz_t(), mod.get_mpz_t());
      mpz_invert(step.get_mpz_t(), step.get_mpz_t(), mod.get_mpz_t());
      cur = cur * step % mod;
      L += d * ctx->ppow(s);
    }
    mpz_powm(upow.get_mpz_t(), upow.get_mpz_t(), pp.get_mpz_t(), mod.get_mpz_t());
  }
  return L;
}

LogTable::LogTable(const Ctx& ctx, long r) : r_(r), p_(ctx->p) {
  if (r < 1) throw ValidationError("log table level must be >= 1");
  mpz_class m = ctx->ppow(r);
  if (!m.fits_slong_p() || m > 50000000) throw ValidationError("log table too large");
  mod_ = m.get_si();
  logs_.assign(mod_, -1);
  std::vector<long> te(p_);
  for (long d = 1; d < p_; ++d) te[d] = teichmuller(ctx, d, r).residue().get_si();
  long count = mod_ / p_;
  long cur = 1, u = ctx->u % mod_;
  for (long e = 0; e < count; ++e) {
    for (long d = 1; d < p_; ++d) logs_[(__int128)cur * te[d] % mod_] = e;
    cur = (long)((__int128)cur * u % mod_);
  }
  for (long t = 1; t < mod_; ++t)
    if (logs_[t] >= 0) units_.push_back(t);
}

}  // namespace asai
