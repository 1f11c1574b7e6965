#include "asai/quadratic.hpp"

namespace asai {

bool padic_sqrt(const PadicElt& x, PadicElt& out) {
  if (x.is_exact_zero()) {
    out = x;
    return true;
  }
  if (x.is_zero()) throw PrecisionError("square root of a tracked zero");
  const Ctx& ctx = x.ctx();
  const long p = ctx->p;
  if (x.val() % 2 != 0) return false;
  long r = mpz_fdiv_ui(x.unit().get_mpz_t(), p);
  long root = -1;
  for (long t = 1; t < p; ++t)
    if (t * t % p == r) {
      root = t;
      break;
    }
  if (root < 0) return false;
  PadicElt u = PadicElt::from_parts(ctx, 0, x.unit(), x.rel());
  PadicElt y(ctx, root), half = PadicElt(ctx, 2L).inv();
  for (int it = 0; it < 64; ++it) {
    PadicElt next = (y + u / y) * half;
    bool done = agree(next, y);
    y = next;
    if (done) break;
  }
  out = y.mul_pow_p(x.val() / 2);
  return true;
}

// Returns true and fills the roots when X^2 - aX + c splits over Q_p.
static bool split_roots(const PadicElt& a, const PadicElt& c, PadicElt& alpha, PadicElt& beta) {
  if (c.is_zero()) throw ValidationError("hensel_roots: constant term must be nonzero");
  const Ctx& ctx = common_ctx(a, c);
  const long va = a.is_zero() ? kInf : a.val();
  const long vc = c.val();
  if (2 * va < vc) {
    // Slopes va and vc - va: the big root is a fixed point of x -> a - c/x.
    PadicElt x = a;
    for (int it = 0; it < 4 * ctx->N + 16; ++it) {
      PadicElt next = a - c / x;
      bool done = agree(next, x);
      x = next;
      if (done) break;
    }
    alpha = x;
    beta = c / x;
    return true;
  }
  PadicElt disc = a * a - PadicElt(ctx, 4L) * c;
  if (disc.is_zero()) throw ValidationError("hensel_roots: repeated root");
  PadicElt s;
  if (!padic_sqrt(disc, s)) return false;
  PadicElt half = PadicElt(ctx, 2L).inv();
  alpha = (a + s) * half;
  beta = (a - s) * half;
  if (beta.val() < alpha.val()) std::swap(alpha, beta);
  return true;
}

QuadField::QuadField(const PadicElt& a, const PadicElt& c) : a_(a), c_(c) {
  ctx_ = common_ctx(a, c);
  if (!ctx_) throw ValidationError("quadratic field needs a context");
  split_ = split_roots(a, c, alpha_, beta_);
}

QField make_qfield(const PadicElt& a, const PadicElt& c) { return std::make_shared<const QuadField>(a, c); }

PadicElt QuadField::norm(const PadicElt& x0, const PadicElt& x1) const {
  if (split_) {
    PadicElt y = x0 + x1 * alpha_;
    return y * y;
  }
  return x0 * x0 + a_ * x0 * x1 + c_ * x1 * x1;
}

Valuation QuadField::valuation(const PadicElt& x0, const PadicElt& x1) const {
  if (split_) return (x0 + x1 * alpha_).valuation();
  PadicElt n = norm(x0, x1);
  if (n.is_zero()) return Valuation::infinity();
  return Valuation::of_twice(n.val());
}

QuadElt::QuadElt(QField f_, PadicElt a, PadicElt b) : f(std::move(f_)), x0(std::move(a)), x1(std::move(b)) {
  if (f->split() && !x1.is_exact_zero()) {
    x0 = x0 + x1 * f->alpha();
    x1 = PadicElt();
  }
}

QuadElt QuadElt::gen(const QField& f) {
  if (f->split()) return QuadElt(f, f->alpha());
  return QuadElt(f, PadicElt(), PadicElt(f->ctx(), 1L));
}

QuadElt QuadElt::operator+(const QuadElt& o) const { return QuadElt(f, x0 + o.x0, x1 + o.x1); }
QuadElt QuadElt::operator-(const QuadElt& o) const { return QuadElt(f, x0 - o.x0, x1 - o.x1); }
QuadElt QuadElt::operator-() const { return QuadElt(f, -x0, -x1); }

QuadElt QuadElt::operator*(const QuadElt& o) const {
  if (f->split()) return QuadElt(f, x0 * o.x0);
  PadicElt t = x1 * o.x1;
  return QuadElt(f, x0 * o.x0 - f->c() * t, x0 * o.x1 + x1 * o.x0 + f->a() * t);
}

QuadElt QuadElt::operator*(const PadicElt& s) const { return QuadElt(f, x0 * s, x1 * s); }

QuadElt QuadElt::conj() const {
  if (f->split()) {
    // X -> a - X swaps alpha and beta; x0 already holds the alpha-embedding.
    throw ValidationError("conjugation is not defined on a split algebra");
  }
  return QuadElt(f, x0 + f->a() * x1, -x1);
}

QuadElt QuadElt::inv() const {
  if (f->split()) return QuadElt(f, x0.inv());
  PadicElt n = norm();
  if (n.is_zero()) throw PrecisionError("inverse of a zero quadratic element");
  return conj() * n.inv();
}

QuadElt QuadElt::pow(long e) const {
  if (e < 0) return inv().pow(-e);
  QuadElt r(f, PadicElt(f->ctx(), 1L)), b = *this;
  while (e) {
    if (e & 1) r = r * b;
    b = b * b;
    e >>= 1;
  }
  return r;
}

bool QuadElt::is_zero() const { return x0.is_zero() && x1.is_zero(); }

std::string QuadElt::str() const {
  if (f->split()) return x0.str();
  return "(" + x0.str() + ") + (" + x1.str() + ")*X";
}

HenselResult hensel_roots(const PadicElt& a, const PadicElt& c) {
  HenselResult r;
  QField f = make_qfield(a, c);
  r.split = f->split();
  if (r.split) {
    r.alpha = f->alpha();
    r.beta = f->beta();
  } else {
    r.marker = QuadElt::gen(f);
  }
  return r;
}

}  // namespace asai
