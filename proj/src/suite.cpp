#include "asai/suite.hpp"

#include <sstream>

namespace asai {

TruncSeries oracle_patched(const Ctx& ctx, const FiniteMeasure& mu, long delta, long k, long R) {
  const long p = ctx->p;
  LogTable tab(ctx, R);
  const long d = tab.modulus() / p;
  const mpz_class mod = tab.modulus();
  std::vector<PadicElt> out((k + 1) * d + 1, PadicElt(ctx, 0L));
  PadicElt u(ctx, ctx->u);
  PadicElt ud = u.pow(d);
  std::vector<std::vector<PadicElt>> V(k + 1, std::vector<PadicElt>(k + 1));
  for (long i = 0; i <= k; ++i)
    for (long m = 0; m <= k; ++m) V[i][m] = ud.pow(i * m);
  for (size_t q = 0; q < mu.z.size(); ++q) {
    mpz_class zr;
    mpz_fdiv_r(zr.get_mpz_t(), mu.z[q].get_mpz_t(), mod.get_mpz_t());
    const long t = zr.get_si();
    const long l0 = tab.log(t);
    PadicElt eps = teichmuller(ctx, t % p, ctx->N);
    PadicElt base = PadicElt(ctx, mu.z[q]) / eps * u.pow(-l0);
    std::vector<PadicElt> rhs(k + 1);
    for (long i = 0; i <= k; ++i) rhs[i] = base.pow(i);
    std::vector<PadicElt> b = solve_linear(V, rhs);
    PadicElt wt = mu.w[q] * eps.pow(delta);
    for (long m = 0; m <= k; ++m) {
      const long e = l0 + m * d;
      PadicElt s = wt * b[m];
      mpz_class bin = 1;
      for (long n = 0; n <= e; ++n) {
        out[n] += s * PadicElt(ctx, bin);
        bin = bin * (e - n) / (n + 1);
      }
    }
  }
  TruncSeries G = TruncSeries::poly(ctx, out);
  G.trim();
  return G;
}

EigenData demo_eigen(const Ctx& ctx, long k) {
  EigenData e;
  e.ctx = ctx;
  e.k = k;
  e.a_p = k == 0 ? PadicElt(ctx, 2L) : PadicElt(ctx, 2 * ctx->p);
  e.sqrtD = PadicElt(ctx, 2L);
  e.eps_c_inv = PadicElt(ctx, 1L);
  e.c = ctx->p == 5 ? 7 : 5;
  return e;
}

std::vector<DirichletChar> character_grid(long p, long R, bool exhaustive) {
  std::vector<DirichletChar> out;
  long q = 1;  // p^{r-1}
  for (long r = 1; r <= R; ++r, q *= p)
    for (long dp = 0; dp < p - 1; ++dp) {
      if (r == 1) {
        out.push_back({p, r, dp, 0});
        continue;
      }
      std::vector<long> ws;
      if (exhaustive) {
        for (long w = 1; w < q; ++w)
          if (w % p) ws.push_back(w);
      } else {
        ws = {1, q - 1};
      }
      for (long w : ws) out.push_back({p, r, dp, w});
    }
  return out;
}

static std::string join_detail(std::initializer_list<std::pair<const char*, long>> kv) {
  std::ostringstream os;
  bool first = true;
  for (const auto& [k, v] : kv) {
    os << (first ? "" : " ") << k << "=" << (v >= kInf ? std::string("inf") : std::to_string(v));
    first = false;
  }
  return os.str();
}

PipelineReport run_pipeline(const PipelineConfig& cfg) {
  Ctx ctx = make_ctx(cfg.p, (int)cfg.N);
  EigenData e = demo_eigen(ctx, cfg.k);
  e.validate();
  if (cfg.N < required_precision(e, cfg.R))
    throw PrecisionError("precision " + std::to_string(cfg.N) + " is below the required " +
                         std::to_string(required_precision(e, cfg.R)));
  PipelineReport rep;
  auto stage = [&](const std::string& name, bool ok, const std::string& detail) {
    rep.stages.push_back({name, ok, detail});
    if (!ok && rep.failed_stage.empty()) rep.failed_stage = name;
    return ok;
  };

  std::mt19937_64 rng(cfg.seed);
  FiniteMeasure mu;
  if (!cfg.zero_measure) mu = random_measure(ctx, rng, cfg.points, cfg.R + 2);
  Tower tw = gen_from_measure(mu, e, cfg.R);
  tw.seed = cfg.seed;
  if (cfg.fault) tw = perturb(tw, cfg.fault_j, cfg.fault_r, cfg.fault_t, cfg.fault_M);
  stage("gen", true, join_detail({{"points", (long)mu.z.size()}, {"R", cfg.R}}));

  NormReport nr = check_norm(tw);
  if (!stage("norm", nr.pass,
             join_detail({{"checked", nr.checked}, {"worst_val", nr.worst_val}, {"j", nr.worst_j}, {"r", nr.worst_r},
                          {"t", nr.worst_t}})))
    return rep;

  CongruenceReport cr = check_congruences(tw);
  if (!stage("congruences", cr.pass, join_detail({{"C", cr.C_patch3}, {"floor", cr.floor}}))) return rep;

  PatchRun run;
  try {
    run = run_patch(tw);
  } catch (const std::logic_error& ex) {
    stage("patch", false, ex.what());
    return rep;
  }
  long max_deg = -1;
  for (long dl : run.deltas) max_deg = std::max(max_deg, run.Pr[dl][cfg.R].degree());
  const long bound = (cfg.k + 1) * ctx->ppow(cfg.R - 1).get_si();
  PolylemReport pl = check_polylem(run);
  if (!stage("patch", max_deg < bound && pl.pass,
             join_detail({{"max_degree", max_deg}, {"bound", bound}, {"congruence", pl.congruence_margin},
                          {"bounded", pl.bounded_margin}, {"alternating", pl.alternating_margin}})))
    return rep;

  long mismatches = 0, prec = kInf;
  for (long dl : run.deltas) {
    TruncSeries diff = run.Pr[dl][cfg.R] - oracle_patched(ctx, mu, dl, cfg.k, cfg.R);
    for (const auto& c : diff.c) {
      if (!c.is_zero()) ++mismatches;
      prec = std::min(prec, c.abs_prec());
    }
  }
  if (!stage("oracle", mismatches == 0, join_detail({{"mismatched_coeffs", mismatches}, {"precision", prec}})))
    return rep;

  long checked = 0, failed = 0, iprec = kInf;
  std::vector<DirichletChar> chars = character_grid(cfg.p, cfg.R, cfg.exhaustive_chars);
  if (tw.has_x0) chars.push_back({cfg.p, 0, 0, 0});
  for (const auto& th : chars)
    for (long j = 0; j <= cfg.k; ++j) {
      InterpReport ir = interpolation_check(run.final, tw, th, j);
      ++checked;
      if (!ir.pass) ++failed;
      iprec = std::min(iprec, ir.precision);
    }
  stage("interp", failed == 0, join_detail({{"checked", checked}, {"failed", failed}, {"precision", iprec}}));
  return rep;
}

Distribution random_bounded(const Ctx& ctx, std::mt19937_64& rng, long deg) {
  Distribution d = zero_distribution(ctx, "bounded");
  for (auto& c : d.comp) {
    std::vector<PadicElt> v;
    for (long i = 0; i <= deg; ++i) v.push_back(random_integral(ctx, rng));
    c = TruncSeries::poly(ctx, v);
  }
  return d;
}

static bool same(const Distribution& a, const Distribution& b) {
  for (size_t i = 0; i < a.comp.size(); ++i)
    if (!agree(a.comp[i], b.comp[i])) return false;
  return true;
}

RoundTripReport run_roundtrip(const RoundTripConfig& cfg) {
  Ctx ctx = make_ctx(cfg.p, (int)cfg.N);
  SplitEigenData sd{ctx, cfg.k, PadicElt(ctx, cfg.a_p), PadicElt(ctx, cfg.a_pbar), PadicElt(ctx, 1L)};
  sd.validate();
  RoundTripReport rep;
  // The mismatch scan compares coefficient halves; a faulted pair loses about
  // 1/(p-1) digits per degree, so the window needs a few multiples of p-1.
  rep.D = std::max((cfg.k + 1) * (ctx->ppow(cfg.n).get_si() - 1), 8 * (cfg.p - 1)) + cfg.deg;
  std::mt19937_64 rng(cfg.seed);
  SynthPair prev;
  bool have_prev = false;
  for (long it = 0; it < cfg.pairs; ++it) {
    Distribution s = random_bounded(ctx, rng, cfg.deg), f = random_bounded(ctx, rng, cfg.deg);
    SynthPair sp = synthesize(s, f, sd, cfg.n, rep.D);
    SignedPair back;
    try {
      back = decompose(sp.L_alpha, sp.L_beta, sd, cfg.n, rep.D);
    } catch (const PrecisionError&) {
      rep.det_unit = false;
      ++rep.pairs;
      continue;
    }
    ++rep.pairs;
    if (same(back.sharp, s) && same(back.flat, f)) ++rep.recovered;
    if (back.diag.mismatch) ++rep.valid_flagged;
    rep.min_precision = std::min(rep.min_precision, back.diag.precision);

    if (have_prev) {
      SignedPair mixed = decompose(sp.L_alpha, prev.L_beta, sd, cfg.n, rep.D);
      ++rep.faults;
      if (mixed.diag.mismatch) ++rep.faults_flagged;
    }
    QuadDistribution zero_beta = sp.L_beta;
    for (auto& c : zero_beta.comp) c = QuadSeries::zero(zero_beta.f);
    SignedPair lone = decompose(sp.L_alpha, zero_beta, sd, cfg.n, rep.D);
    ++rep.faults;
    if (lone.diag.mismatch) ++rep.faults_flagged;
    prev = sp;
    have_prev = true;
  }
  return rep;
}

std::vector<GridCase> run_invariants(long N, uint64_t seed, const std::string& filter) {
  std::vector<GridCase> out;
  for (long p : {3L, 5L, 7L})
    for (long k = 0; k <= 4; ++k)
      for (long R = 1; R <= 3; ++R) {
        std::string name = "pipeline p=" + std::to_string(p) + " k=" + std::to_string(k) + " R=" + std::to_string(R);
        if (!filter.empty() && filter != name) continue;
        GridCase gc{name, "ok", ""};
        try {
          PipelineConfig cfg;
          cfg.p = p, cfg.k = k, cfg.R = R, cfg.N = N;
          cfg.seed = seed + (uint64_t)(100 * p + 10 * k + R);
          PipelineReport rep = run_pipeline(cfg);
          if (!rep.pass()) gc.status = "fail", gc.detail = "stage " + rep.failed_stage;
        } catch (const PrecisionError& ex) {
          gc.status = "precision-exhausted", gc.detail = ex.what();
        }
        out.push_back(gc);
      }
  for (long p : {3L, 5L, 7L})
    for (long L = 1; L <= 3; ++L) {
      std::string name = "logmatrix p=" + std::to_string(p) + " k=0 L=" + std::to_string(L);
      if (!filter.empty() && filter != name) continue;
      GridCase gc{name, "ok", ""};
      try {
        if (N < 2 * L + 4) throw PrecisionError("precision too small for the log matrix");
        Ctx ctx = make_ctx(p, (int)N);
        LogMatrixData d{ctx, 0, PadicElt(ctx, p), PadicElt(ctx, 1L)};
        LogMatrixReport r = check_properties(run_logmatrix(d, L));
        if (!r.pass() || r.eigen_failed) gc.status = "fail";
      } catch (const PrecisionError& ex) {
        gc.status = "precision-exhausted", gc.detail = ex.what();
      }
      out.push_back(gc);
    }
  return out;
}

}  // namespace asai
