#include "asai/asai_patch.hpp"

#include <algorithm>

namespace asai {

TruncSeries build_P(const Tower& tw, long delta, long r, long j, const LogTable& tab) {
  const Ctx& ctx = tw.ctx();
  if (r < 1 || r > tw.R) throw ValidationError("build_P: level out of range");
  if (j < 0 || j > tw.eigen.k) throw ValidationError("build_P: twist out of range");
  TruncSeries g = group_ring_to_poly(ctx, tab, tw.x[j][r], teich_power(ctx, delta - j));
  PadicElt scale = tw.eigen.a_p.pow(-r) * m_j(tw.eigen, j).inv();
  return g * scale;
}

TruncSeries build_P(const Tower& tw, long delta, long r, long j) {
  LogTable tab(tw.ctx(), r);
  return build_P(tw, delta, r, j, tab);
}

TruncSeries patch_level(PatchRun& run, long delta, long r) {
  const CrtBasis& crt = *run.crt.at(r);
  std::vector<TruncSeries> res;
  for (long j = 0; j <= run.k; ++j) res.push_back(twist_sub(run.P.at(delta)[r][j], j));
  TruncSeries Q = crt.patch(res);
  const long bound = (run.k + 1) * crt.d();
  if (Q.size() > bound || Q.degree() >= bound)
    throw std::logic_error("patched polynomial violates the degree bound at level " + std::to_string(r));
  return Q;
}

static long remainder_valuation(const TruncSeries& f, const TruncSeries& m) {
  TruncSeries r = rem(f, m);
  long v = kInf;
  for (const auto& x : r.c)
    if (!x.is_zero()) v = std::min(v, x.val());
  return v;
}

PatchRun run_patch(const Tower& tw, std::vector<long> deltas) {
  tw.eigen.validate();
  const Ctx& ctx = tw.ctx();
  const long p = ctx->p;
  long need = required_precision(tw.eigen, tw.R);
  if (ctx->N < need)
    throw PrecisionError("precision " + std::to_string(ctx->N) + " below the level-" + std::to_string(tw.R) +
                         " budget of " + std::to_string(need) + " digits");
  if (deltas.empty())
    for (long d = 0; d < p - 1; ++d) deltas.push_back(d);
  PatchRun run;
  run.tower = &tw;
  run.ctx = ctx;
  run.k = tw.eigen.k;
  run.R = tw.R;
  run.deltas = deltas;
  run.crt.resize(tw.R + 1);
  std::vector<LogTable> tabs;
  tabs.emplace_back(ctx, 1);
  for (long r = 1; r <= tw.R; ++r) {
    run.crt[r] = std::make_shared<CrtBasis>(ctx, run.k + 1, r);
    if (r > 1) tabs.emplace_back(ctx, r);
  }
  for (long d : deltas) {
    if (d < 0 || d >= p - 1) throw ValidationError("delta index out of range");
    auto& P = run.P[d];
    P.resize(tw.R + 1);
    run.Pr[d].resize(tw.R + 1);
    for (long r = 1; r <= tw.R; ++r) {
      for (long j = 0; j <= run.k; ++j) P[r].push_back(build_P(tw, d, r, j, tabs[r - 1]));
      run.Pr[d][r] = patch_level(run, d, r);
      run.denominators[d].push_back(max_denominator(run.Pr[d][r]));
    }
    for (long r = 1; r < tw.R; ++r)
      run.coherence[d].push_back(remainder_valuation(run.Pr[d][r + 1] - run.Pr[d][r], run.crt[r]->product()));
  }
  assemble(run);
  return run;
}

Distribution assemble(PatchRun& run) {
  Distribution d = zero_distribution(run.ctx, "patched");
  for (long delta : run.deltas) d.comp[delta] = run.Pr.at(delta)[run.R];
  d.w = (double)std::max(0L, run.tower->eigen.slope());
  run.final = d;
  run.admissibility = admissibility_report(d, d.w);
  return d;
}

PolylemReport check_polylem(const PatchRun& run, long floor) {
  PolylemReport rep;
  const Ctx& ctx = run.ctx;
  const long n = std::max(0L, run.tower->eigen.slope());
  for (long d : run.deltas) {
    const auto& P = run.P.at(d);
    for (long r = 1; r <= run.R; ++r) {
      for (long j = 0; j <= run.k; ++j) {
        long mv = P[r][j].min_val();
        if (mv < kInf) rep.bounded_margin = std::min(rep.bounded_margin, mv + n * r);
        if (r < run.R) {
          long v = remainder_valuation(P[r + 1][j] - P[r][j], omega(ctx, r - 1));
          if (v < kInf && rep.fail_r < 0) rep.fail_r = r;
          rep.congruence_margin = std::min(rep.congruence_margin, v);
        }
        TruncSeries S = TruncSeries::poly(ctx, {});
        mpz_class bin = 1;
        for (long i = 0; i <= j; ++i) {
          TruncSeries term = twist_sub(P[r][i], i) * PadicElt(ctx, bin);
          S = (i % 2) ? S - term : S + term;
          bin = bin * (j - i) / (i + 1);
        }
        long sv = S.min_val();
        if (sv < kInf) rep.alternating_margin = std::min(rep.alternating_margin, sv + (n - j) * r);
      }
    }
  }
  rep.pass = rep.congruence_margin >= kInf && rep.bounded_margin >= floor && rep.alternating_margin >= floor;
  return rep;
}

InterpReport interpolation_check(const Distribution& d, const Tower& tw, const DirichletChar& theta, long j) {
  const Ctx& ctx = tw.ctx();
  theta.validate(ctx);
  if (j < 0 || j > tw.eigen.k) throw ValidationError("interpolation_check: twist out of range");
  InterpReport rep;
  rep.lhs = eval_at(d, j, theta);
  const PadicElt& a = tw.eigen.a_p;
  PadicElt mj_inv = m_j(tw.eigen, j).inv();
  if (theta.r == 0) {
    if (!tw.has_x0) throw ValidationError("trivial character needs level-0 data");
    PadicElt ep = PadicElt(ctx, 1L) - PadicElt(ctx, ctx->ppow(j)) / a;
    rep.rhs = CycloElt::scalar(theta.ring(ctx), ep * mj_inv * tw.x0[j]);
  } else {
    if (theta.r > tw.R) throw ValidationError("character conductor exceeds the tower height");
    rep.rhs = char_sum(ctx, tw.x[j][theta.r], theta) * (a.pow(-theta.r) * mj_inv);
  }
  CycloElt diff = rep.lhs - rep.rhs;
  rep.pass = diff.is_zero();
  rep.precision = diff.abs_prec();
  return rep;
}

TruncSeries c_factor(const EigenData& e, long delta, long D) {
  const Ctx& ctx = e.ctx;
  const long p = ctx->p;
  if (e.c % p == 0) throw ValidationError("c must be prime to p");
  PadicElt c(ctx, e.c);
  PadicElt eps_c = PadicElt::from_residue(ctx, ctx->teich[e.c % p], ctx->N);
  PadicElt coef = c.pow(-2 * e.k) * e.eps_c_inv * eps_c.pow(2 * delta);
  const long W = binomial_digits(ctx, D);
  mpz_class lam2 = 2 * log_u_padic(ctx, mpz_class(e.c), W);
  TruncSeries bs = binomial_series(ctx, lam2, W, D);
  return TruncSeries::constant(ctx, c * c) - bs * coef;
}

RemoveCResult remove_c_report(const Distribution& d, const EigenData& e, long D) {
  RemoveCResult res;
  res.d = d;
  res.meromorphic.assign(d.comp.size(), false);
  for (size_t i = 0; i < d.comp.size(); ++i) {
    TruncSeries F = c_factor(e, (long)i, D);
    const PadicElt& f0 = F.coeff(0);
    if (f0.is_zero() || f0.val() != 0) {
      res.meromorphic[i] = true;
      continue;
    }
    res.d.comp[i] = d.comp[i].truncate(D) * series_inverse(F, D);
    res.d.comp[i] = res.d.comp[i].truncate(D);
  }
  return res;
}

Distribution remove_c(const Distribution& d, const EigenData& e, long D) {
  RemoveCResult r = remove_c_report(d, e, D);
  for (size_t i = 0; i < r.meromorphic.size(); ++i)
    if (r.meromorphic[i])
      throw MeromorphicComponent((int)i, "component " + std::to_string(i) + " has a pole: c-factor constant term is not a unit");
  return r.d;
}

}  // namespace asai
