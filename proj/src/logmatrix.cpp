#include "asai/logmatrix.hpp"

#include <algorithm>
#include <cmath>

namespace asai {

Mat2 Mat2::constant(const Ctx& ctx, const PadicElt& a, const PadicElt& b, const PadicElt& c, const PadicElt& d) {
  Mat2 m;
  m.e = {TruncSeries::constant(ctx, a), TruncSeries::constant(ctx, b), TruncSeries::constant(ctx, c),
         TruncSeries::constant(ctx, d)};
  return m;
}

Mat2 Mat2::identity(const Ctx& ctx) { return constant(ctx, PadicElt(ctx, 1L), PadicElt(), PadicElt(), PadicElt(ctx, 1L)); }

Mat2 Mat2::operator*(const Mat2& o) const {
  Mat2 r;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) r.at(i, j) = at(i, 0) * o.at(0, j) + at(i, 1) * o.at(1, j);
  return r;
}

Mat2 Mat2::operator-(const Mat2& o) const {
  Mat2 r;
  for (int i = 0; i < 4; ++i) r.e[i] = e[i] - o.e[i];
  return r;
}

Mat2 Mat2::truncate(long D) const {
  Mat2 r;
  for (int i = 0; i < 4; ++i) r.e[i] = e[i].truncate(D);
  return r;
}

TruncSeries Mat2::det() const { return at(0, 0) * at(1, 1) - at(0, 1) * at(1, 0); }

long Mat2::min_val() const {
  long v = kInf;
  for (const auto& s : e) v = std::min(v, s.min_val());
  return v;
}

QuadSeries QuadSeries::zero(const QField& f) {
  return {f, TruncSeries::poly(f->ctx(), {}), TruncSeries::poly(f->ctx(), {})};
}

QuadSeries QuadSeries::operator+(const QuadSeries& o) const { return {f, s0 + o.s0, s1 + o.s1}; }
QuadSeries QuadSeries::operator-(const QuadSeries& o) const { return {f, s0 - o.s0, s1 - o.s1}; }
QuadSeries QuadSeries::operator*(const TruncSeries& g) const { return {f, s0 * g, s1 * g}; }
QuadSeries QuadSeries::truncate(long D) const { return {f, s0.truncate(D), s1.truncate(D)}; }

Valuation QuadSeries::coeff_valuation(long n) const {
  const PadicElt& a = n < s0.size() ? s0.c[n] : PadicElt();
  const PadicElt& b = n < s1.size() ? s1.c[n] : PadicElt();
  if (a.is_zero() && b.is_zero()) return Valuation::infinity();
  return f->valuation(a, b);
}

std::vector<Valuation> QuadSeries::valuations() const {
  std::vector<Valuation> v;
  for (long n = 0; n < size(); ++n) v.push_back(coeff_valuation(n));
  return v;
}

bool QuadSeries::is_zero() const {
  for (const auto& x : s0.c)
    if (!x.is_zero()) return false;
  for (const auto& x : s1.c)
    if (!x.is_zero()) return false;
  return true;
}

QuadSeries operator*(const QuadElt& x, const TruncSeries& g) {
  QuadSeries r{x.f, g * x.x0, g * x.x1};
  return r;
}

QuadSeries operator*(const QuadElt& x, const QuadSeries& g) {
  // (x0 + x1 X)(s0 + s1 X) with X^2 = aX - c.
  const QuadField& F = *x.f;
  TruncSeries t = g.s1 * x.x1;
  return {x.f, g.s0 * x.x0 - t * F.c(), g.s1 * x.x0 + g.s0 * x.x1 + t * F.a()};
}

PadicElt LogMatrixData::det_A() const { return v.mul_pow_p(k + 1); }

void LogMatrixData::validate() const {
  if (!ctx) throw ValidationError("log matrix data has no context");
  if (k < 0) throw ValidationError("k must be >= 0");
  if (v.is_zero()) throw ValidationError("v must be nonzero");
  const long bound = k / (ctx->p - 1);
  if (a.is_zero()) return;  // v(a) = +inf
  if (a.val() <= bound)
    throw ValidationError("need v_p(a) > floor(k/(p-1)) = " + std::to_string(bound) + ", got " +
                          std::to_string(a.val()));
}

Mat2 build_A(const LogMatrixData& d) {
  d.validate();
  return Mat2::constant(d.ctx, d.a, PadicElt(d.ctx, 1L), -d.det_A(), PadicElt());
}

Mat2 build_A_inverse(const LogMatrixData& d) {
  d.validate();
  PadicElt di = d.det_A().inv();
  return Mat2::constant(d.ctx, PadicElt(), -di, PadicElt(d.ctx, 1L), d.a * di);
}

TruncSeries twisted_phi_product(const Ctx& ctx, long k, long m) {
  TruncSeries ph = phi_n(ctx, m);
  TruncSeries acc = TruncSeries::constant(ctx, PadicElt(ctx, 1L));
  for (long i = 0; i <= k; ++i) acc = acc * twist_sub(ph, i);
  return acc;
}

Mat2 build_C(const LogMatrixData& d, long m) {
  if (m < 1) throw ValidationError("build_C needs m >= 1");
  d.validate();
  Mat2 C = Mat2::constant(d.ctx, d.a, PadicElt(d.ctx, 1L), PadicElt(), PadicElt());
  C.at(1, 0) = twisted_phi_product(d.ctx, d.k, m) * (-d.v);
  return C;
}

static Mat2 diag_tail(const LogMatrixData& d) {
  return Mat2::constant(d.ctx, PadicElt(d.ctx, 1L), PadicElt(), PadicElt(), d.det_A());
}

Mat2 build_M(const LogMatrixData& d, long n) {
  if (n < 0) throw ValidationError("build_M needs n >= 0");
  Mat2 Ainv = build_A_inverse(d);
  Mat2 acc = diag_tail(d), pw = Ainv;
  for (long m = 1; m <= n; ++m) {
    acc = build_C(d, m) * acc;
    pw = pw * Ainv;
  }
  return pw * acc;
}

LogMatrixRun run_logmatrix(const LogMatrixData& d, long levels) {
  d.validate();
  if (levels < 0) throw ValidationError("levels must be >= 0");
  LogMatrixRun run;
  run.data = d;
  run.levels = levels;
  Mat2 Ainv = build_A_inverse(d);
  Mat2 acc = diag_tail(d), pw = Ainv;  // C_m ... C_1 diag and A^{-(m+1)}
  run.M.push_back(pw * acc);
  const long window = (d.k + 1) * d.ctx->p;
  for (long m = 1; m <= levels; ++m) {
    acc = build_C(d, m) * acc;
    pw = pw * Ainv;
    run.M.push_back(pw * acc);
    Mat2 diff = run.M[m] - run.M[m - 1];
    long v = kInf;
    for (const auto& e : diff.e)
      for (long i = 0; i < std::min(window, e.size()); ++i)
        if (!e.c[i].is_zero()) v = std::min(v, e.c[i].val());
    run.cauchy.push_back(v);
  }
  return run;
}

QMatrix build_Q(const LogMatrixData& d) {
  d.validate();
  QMatrix Q;
  Q.f = make_qfield(d.a, d.det_A());
  const QField& f = Q.f;
  QuadElt alpha, beta;
  if (f->split()) {
    alpha = QuadElt(f, f->alpha());
    beta = QuadElt(f, f->beta());
  } else {
    alpha = QuadElt::gen(f);
    beta = alpha.conj();
  }
  QuadElt vp(f, d.det_A());
  Q.q = {alpha, -beta, -vp, vp};
  QuadElt det = alpha * vp - beta * vp;
  if (det.is_zero()) throw ValidationError("Q is singular: alpha == beta");
  QuadElt di = det.inv();
  Q.qinv = {vp * di, beta * di, vp * di, alpha * di};
  return Q;
}

std::array<QuadSeries, 2> q_inverse_row(const QMatrix& Q, const Mat2& M, int r) {
  std::array<QuadSeries, 2> out;
  for (int c = 0; c < 2; ++c) out[c] = Q.qinv[2 * r] * M.at(0, c) + Q.qinv[2 * r + 1] * M.at(1, c);
  return out;
}

GrowthEstimate estimate_growth(const std::vector<Valuation>& vals, long p, long k, long levels) {
  GrowthEstimate g;
  std::vector<double> xs, ys;
  long lo = 0, hi = k + 1;
  for (long m = 0; m <= levels; ++m) {
    double mn = 1e300;
    for (long n = lo; n < std::min<long>(hi, (long)vals.size()); ++n)
      if (!vals[n].is_inf()) mn = std::min(mn, vals[n].to_double());
    g.block_min.push_back(mn);
    if (mn < 1e299) {
      xs.push_back((double)m);
      ys.push_back(mn);
    }
    lo = (m == 0) ? 1 : lo * p;
    hi *= p;
  }
  if (xs.size() >= 2) {
    double mx = 0, my = 0;
    for (size_t i = 0; i < xs.size(); ++i) mx += xs[i], my += ys[i];
    mx /= xs.size();
    my /= ys.size();
    double sxy = 0, sxx = 0;
    for (size_t i = 0; i < xs.size(); ++i) sxy += (xs[i] - mx) * (ys[i] - my), sxx += (xs[i] - mx) * (xs[i] - mx);
    g.estimate = -sxy / sxx;
  }
  return g;
}

std::array<CycloElt, 2> eval_quad(const QuadSeries& s, long j, const DirichletChar& theta, const Ctx& ctx) {
  return {eval_series_at(s.s0, j, theta, ctx), eval_series_at(s.s1, j, theta, ctx)};
}

std::array<CycloElt, 2> quad_scale(const QuadElt& x, const std::array<CycloElt, 2>& e) {
  const QuadField& F = *x.f;
  CycloElt t = e[1] * x.x1;
  return {e[0] * x.x0 - t * F.c(), e[1] * x.x0 + e[0] * x.x1 + t * F.a()};
}

LogMatrixReport check_properties(const LogMatrixRun& run, bool eigen_check) {
  LogMatrixReport rep;
  const LogMatrixData& d = run.data;
  const Ctx& ctx = d.ctx;
  const long p = ctx->p, k = d.k, L = run.levels;
  rep.cauchy = run.cauchy;

  for (long n = 0; n <= L; ++n) {
    TruncSeries det = run.M[n].det();
    TruncSeries diff = det - log_product(ctx, k, n);
    for (const auto& c : diff.c)
      if (!c.is_zero()) rep.det_identity = false;
    const PadicElt& c0 = det.coeff(0);
    if (c0.is_zero() || c0.val() != 0) rep.det_unit = false;
  }

  Mat2 A = build_A(d);
  Mat2 An = Mat2::identity(ctx);
  for (long n = 1; n <= L; ++n) {
    An = A * An;
    if (n == 1) continue;  // empty modulus
    TruncSeries mod = make_monic(twisted_phi_product(ctx, k, n - 1));
    for (long n2 = n; n2 <= L; ++n2) {
      Mat2 X = An * run.M[n2];
      long v = kInf;
      for (int c = 0; c < 2; ++c)
        for (const auto& x : rem(X.at(1, c), mod).c)
          if (!x.is_zero()) v = std::min(v, x.val());
      rep.divisibility.push_back({n, n2, v});
      if (v < n2 - n - 1) rep.divisibility_pass = false;
    }
  }

  QMatrix Q = build_Q(d);
  rep.v_alpha = Q.q[0].valuation();
  rep.v_beta = Q.q[1].valuation();
  if (L >= 2) {
    auto ra = q_inverse_row(Q, run.M[L], 0), rb = q_inverse_row(Q, run.M[L], 1);
    std::vector<Valuation> va, vb;
    for (long n = 0; n < std::max(ra[0].size(), ra[1].size()); ++n)
      va.push_back(min(ra[0].coeff_valuation(n), ra[1].coeff_valuation(n)));
    for (long n = 0; n < std::max(rb[0].size(), rb[1].size()); ++n)
      vb.push_back(min(rb[0].coeff_valuation(n), rb[1].coeff_valuation(n)));
    rep.growth_alpha = estimate_growth(va, p, k, L);
    rep.growth_beta = estimate_growth(vb, p, k, L);
    rep.growth_pass = std::fabs(rep.growth_alpha.estimate - rep.v_alpha.to_double()) <= rep.growth_tolerance &&
                      std::fabs(rep.growth_beta.estimate - rep.v_beta.to_double()) <= rep.growth_tolerance;
  }

  if (eigen_check && L >= 2) {
    auto ra = q_inverse_row(Q, run.M[L], 0), rb = q_inverse_row(Q, run.M[L], 1);
    for (long r = 2; r <= L + 1; ++r) {
      QuadElt ar = Q.q[0].pow(r), br = (-Q.q[1]).pow(r);
      for (long j = 0; j <= k; ++j) {
        DirichletChar th{p, r, 0, 1};
        for (int c = 0; c < 2; ++c) {
          auto lhs = quad_scale(ar, eval_quad(ra[c], j, th, ctx));
          auto rhs = quad_scale(br, eval_quad(rb[c], j, th, ctx));
          long side = kInf, diff = kInf;
          for (int z = 0; z < 2; ++z) {
            for (const auto& x : lhs[z].v)
              if (!x.is_zero()) side = std::min(side, x.val());
            for (const auto& x : (lhs[z] - rhs[z]).v)
              if (!x.is_zero()) diff = std::min(diff, x.val());
          }
          long digits = (diff >= kInf) ? kInf : diff - side;
          rep.eigen.push_back({r, j, c, digits});
          ++rep.eigen_checked;
          if (k == 0 && digits < kInf) ++rep.eigen_failed;
        }
      }
    }
  }
  return rep;
}

}  // namespace asai
