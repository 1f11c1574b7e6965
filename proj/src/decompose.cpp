#include "asai/decompose.hpp"

#include <algorithm>

namespace asai {

void SplitEigenData::validate() const {
  if (!ctx) throw ValidationError("split eigen data has no context");
  if (k < 0) throw ValidationError("k must be >= 0");
  if (eps.is_zero() || eps.val() != 0) throw ValidationError("eps must be a unit");
  if (a_pbar.is_zero() || a_pbar.val() != 0) throw ValidationError("a_pbar must be a unit (p-bar ordinary)");
  const long bound = k / (ctx->p - 1);
  if (!a_p.is_zero() && a_p.val() <= bound)
    throw ValidationError("need v_p(a_p) > floor(k/(p-1)) = " + std::to_string(bound));
  PadicElt disc = a_p * a_p - PadicElt(ctx, 4L) * eps.mul_pow_p(k + 1);
  if (disc.is_zero()) throw ValidationError("alpha_p == beta_p");
}

PadicElt SplitEigenData::alpha_pbar() const {
  HenselResult h = hensel_roots(a_pbar, eps.mul_pow_p(k + 1));
  if (!h.split || h.alpha.val() != 0) throw ValidationError("p-bar Hecke polynomial has no unit root");
  return h.alpha;
}

LogMatrixData SplitEigenData::product_data() const {
  validate();
  PadicElt ab = alpha_pbar();
  return LogMatrixData{ctx, k, ab * a_p, ab * ab * eps};
}

QMatrix build_Qtilde(const SplitEigenData& d, bool intro_variant) {
  LogMatrixData ld = d.product_data();
  QMatrix Q = build_Q(ld);
  if (!intro_variant) return Q;
  const QField& f = Q.f;
  QuadElt s(f, ld.v.mul_pow_p(d.k - 1));
  Q.q[2] = -s;
  Q.q[3] = -s;
  QuadElt det = Q.q[0] * Q.q[3] - Q.q[1] * Q.q[2];
  if (det.is_zero()) throw ValidationError("intro-variant Qtilde is singular");
  QuadElt di = det.inv();
  Q.qinv = {Q.q[3] * di, -Q.q[1] * di, -Q.q[2] * di, Q.q[0] * di};
  return Q;
}

SynthPair synthesize(const Distribution& sharp, const Distribution& flat, const SplitEigenData& d, long n, long D) {
  LogMatrixData ld = d.product_data();
  Mat2 M = build_M(ld, n);
  QMatrix Q = build_Q(ld);
  SynthPair out;
  out.L_alpha.f = out.L_beta.f = Q.f;
  out.v_alpha = Q.q[0].valuation();
  out.v_beta = Q.q[1].valuation();
  if (sharp.comp.size() != flat.comp.size()) throw ValidationError("synthesize: component counts differ");
  std::vector<Valuation> va, vb;
  for (size_t i = 0; i < sharp.comp.size(); ++i) {
    TruncSeries x = M.at(0, 0) * sharp.comp[i] + M.at(0, 1) * flat.comp[i];
    TruncSeries y = M.at(1, 0) * sharp.comp[i] + M.at(1, 1) * flat.comp[i];
    QuadSeries la = (Q.qinv[0] * x + Q.qinv[1] * y).truncate(D);
    QuadSeries lb = (Q.qinv[2] * x + Q.qinv[3] * y).truncate(D);
    auto fa = la.valuations(), fb = lb.valuations();
    va.resize(std::max(va.size(), fa.size()));
    vb.resize(std::max(vb.size(), fb.size()));
    for (size_t n2 = 0; n2 < fa.size(); ++n2) va[n2] = min(va[n2], fa[n2]);
    for (size_t n2 = 0; n2 < fb.size(); ++n2) vb[n2] = min(vb[n2], fb[n2]);
    out.L_alpha.comp.push_back(la);
    out.L_beta.comp.push_back(lb);
  }
  out.growth_alpha = estimate_growth(va, ld.ctx->p, ld.k, n);
  out.growth_beta = estimate_growth(vb, ld.ctx->p, ld.k, n);
  return out;
}

SignedPair decompose(const QuadDistribution& L_alpha, const QuadDistribution& L_beta, const SplitEigenData& d,
                     long n, long D) {
  LogMatrixData ld = d.product_data();
  const Ctx& ctx = ld.ctx;
  if (L_alpha.comp.size() != L_beta.comp.size()) throw ValidationError("decompose: component counts differ");
  Mat2 M = build_M(ld, n);
  QMatrix Q = build_Q(ld);
  SignedPair out;
  out.sharp = zero_distribution(ctx, "decomposed");
  out.flat = zero_distribution(ctx, "decomposed");
  out.sharp.comp.clear();
  out.flat.comp.clear();
  TruncSeries det = M.det();
  const PadicElt& d0 = det.coeff(0);
  if (d0.is_zero() || d0.val() != 0) {
    out.diag.det_unit = false;
    throw PrecisionError("det M(0) is not a unit; the decomposition is undefined");
  }
  TruncSeries dinv = series_inverse(det, D);
  for (size_t i = 0; i < L_alpha.comp.size(); ++i) {
    QuadSeries w0 = Q.q[0] * L_alpha.comp[i] + Q.q[1] * L_beta.comp[i];
    QuadSeries w1 = Q.q[2] * L_alpha.comp[i] + Q.q[3] * L_beta.comp[i];
    for (const QuadSeries* w : {&w0, &w1})
      for (const auto& x : w->s1.c)
        if (!x.is_zero()) out.diag.rational = false;
    // adj(M) = [[m11, -m01], [-m10, m00]].
    TruncSeries s = (M.at(1, 1) * w0.s0 - M.at(0, 1) * w1.s0).truncate(D) * dinv;
    TruncSeries f = (M.at(0, 0) * w1.s0 - M.at(1, 0) * w0.s0).truncate(D) * dinv;
    out.sharp.comp.push_back(s.truncate(D));
    out.flat.comp.push_back(f.truncate(D));
  }
  SeriesGrowth gs, gf;
  for (size_t i = 0; i < out.sharp.comp.size(); ++i) {
    for (const TruncSeries* t : {&out.sharp.comp[i], &out.flat.comp[i]})
      for (const auto& x : t->c) {
        if (!x.is_zero()) out.diag.min_val = std::min(out.diag.min_val, x.val());
        out.diag.precision = std::min(out.diag.precision, x.abs_prec());
      }
    SeriesGrowth a = growth_scan(out.sharp.comp[i], 0), b = growth_scan(out.flat.comp[i], 0);
    if (i == 0 || a.violated) gs = a;
    if (i == 0 || b.violated) gf = b;
  }
  out.diag.growth_sharp = gs;
  out.diag.growth_flat = gf;
  out.diag.mismatch = gs.violated || gf.violated || !out.diag.rational;
  return out;
}

ConsistencyReport interpolation_consistency(const QuadDistribution& L_alpha, const QuadDistribution& L_beta,
                                            const SplitEigenData& d, const std::vector<DirichletChar>& thetas,
                                            long required_digits) {
  LogMatrixData ld = d.product_data();
  const Ctx& ctx = ld.ctx;
  const long p = ctx->p;
  QMatrix Q = build_Q(ld);
  ConsistencyReport rep;
  const long need = d.k == 0 ? kInf : required_digits;
  for (const auto& th : thetas) {
    th.validate(ctx);
    if (th.r < 2 || th.wild_exp % p == 0) {
      ++rep.skipped;
      continue;
    }
    QuadElt ar = Q.q[0].pow(th.r), br = (-Q.q[1]).pow(th.r);
    for (long j = 0; j <= d.k; ++j) {
      long idx = ((th.delta_power + j) % (p - 1) + (p - 1)) % (p - 1);
      if (idx >= (long)L_alpha.comp.size()) continue;
      auto lhs = quad_scale(ar, eval_quad(L_alpha.comp[idx], j, th, ctx));
      auto rhs = quad_scale(br, eval_quad(L_beta.comp[idx], j, th, ctx));
      long side = kInf, diff = kInf;
      for (int z = 0; z < 2; ++z) {
        for (const auto& x : lhs[z].v)
          if (!x.is_zero()) side = std::min(side, x.val());
        for (const auto& x : rhs[z].v)
          if (!x.is_zero()) side = std::min(side, x.val());
        for (const auto& x : (lhs[z] - rhs[z]).v)
          if (!x.is_zero()) diff = std::min(diff, x.val());
      }
      long digits = diff >= kInf ? kInf : diff - std::min(side, diff);
      ++rep.checked;
      rep.points.push_back({th.r, th.wild_exp, th.delta_power, j, digits});
      rep.min_digits = std::min(rep.min_digits, digits);
      if (digits < need) ++rep.failed;
    }
  }
  return rep;
}

}  // namespace asai
