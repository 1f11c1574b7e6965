#include "asai/tower.hpp"

#include <algorithm>
#include <numeric>

namespace asai {

void EigenData::validate() const {
  if (!ctx) throw ValidationError("eigen data has no context");
  if (k < 0) throw ValidationError("k must be >= 0");
  if (a_p.is_zero()) throw ValidationError("a_p must be nonzero");
  if (a_p.val() < 0 || a_p.val() >= k + 1)
    throw ValidationError("slope v_p(a_p) = " + std::to_string(a_p.val()) + " outside [0, k+1)");
  if (sqrtD.is_zero()) throw ValidationError("sqrtD must be nonzero");
  if (eps_c_inv.is_zero()) throw ValidationError("eps_c_inv must be nonzero");
  if (c < 2 || std::gcd(c, 6 * ctx->p) != 1) throw ValidationError("c must be > 1 and prime to 6p");
}

PadicElt m_j(const EigenData& e, long j) {
  const Ctx& ctx = e.ctx;
  mpz_class fact = 1, bin = 1;
  for (long i = 1; i <= j; ++i) fact *= i;
  mpz_bin_uiui(bin.get_mpz_t(), e.k, j);
  return (-e.sqrtD).pow(j) * PadicElt(ctx, mpz_class(fact * bin * bin));
}

long required_precision(const EigenData& e, long R) { return R * std::max(0L, e.slope()) + 8; }

Tower empty_tower(const EigenData& e, long R) {
  if (R < 1) throw ValidationError("tower needs R >= 1");
  Tower tw;
  tw.eigen = e;
  tw.R = R;
  tw.x.assign(e.k + 1, {});
  for (long j = 0; j <= e.k; ++j) {
    tw.x[j].resize(R + 1);
    for (long r = 1; r <= R; ++r) tw.x[j][r].assign(e.ctx->ppow(r).get_si(), PadicElt());
  }
  tw.x0.assign(e.k + 1, PadicElt());
  return tw;
}

Tower gen_from_measure(const FiniteMeasure& mu, const EigenData& e, long R) {
  e.validate();
  const Ctx& ctx = e.ctx;
  mu.validate(ctx);
  Tower tw = empty_tower(e, R);
  for (size_t i = 0; i < mu.z.size(); ++i) {
    PadicElt z(ctx, mu.z[i]);
    PadicElt wz = mu.w[i];
    for (long j = 0; j <= e.k; ++j) {
      for (long r = 1; r <= R; ++r) {
        mpz_class t;
        mpz_fdiv_r(t.get_mpz_t(), mu.z[i].get_mpz_t(), ctx->ppow(r).get_mpz_t());
        tw.x[j][r][t.get_si()] += wz;
      }
      wz = wz * z;
    }
  }
  for (long j = 0; j <= e.k; ++j) {
    PadicElt mj = m_j(e, j), ar = e.a_p;
    for (long r = 1; r <= R; ++r, ar = ar * e.a_p)
      for (auto& v : tw.x[j][r])
        if (!v.is_exact_zero()) v = v * ar * mj;
  }
  tw.has_x0 = true;
  for (long j = 0; j <= e.k; ++j) {
    PadicElt denom = e.a_p - PadicElt(ctx, ctx->ppow(j));
    if (denom.is_zero()) {
      tw.has_x0 = false;
      break;
    }
    PadicElt s;
    for (const auto& v : tw.x[j][1]) s += v;
    tw.x0[j] = s / denom;
  }
  if (!tw.has_x0) tw.x0.assign(e.k + 1, PadicElt());
  return tw;
}

static void note(NormReport& rep, const PadicElt& dev, long j, long r, long t) {
  ++rep.checked;
  if (dev.is_zero()) return;
  rep.pass = false;
  if (dev.val() < rep.worst_val) {
    rep.worst_val = dev.val();
    rep.worst_j = j;
    rep.worst_r = r;
    rep.worst_t = t;
  }
}

NormReport check_norm(const Tower& tw) {
  NormReport rep;
  const Ctx& ctx = tw.ctx();
  const long p = ctx->p;
  const PadicElt& a = tw.eigen.a_p;
  for (long j = 0; j <= tw.eigen.k; ++j) {
    for (long r = 1; r < tw.R; ++r) {
      const long pr = (long)tw.x[j][r].size();
      for (long t = 1; t < pr; ++t) {
        if (t % p == 0) continue;
        PadicElt s;
        for (long i = 0; i < p; ++i) s += tw.x[j][r + 1][t + i * pr];
        note(rep, s - a * tw.x[j][r][t], j, r, t);
      }
    }
    if (tw.has_x0) {
      PadicElt s;
      for (const auto& v : tw.x[j][1]) s += v;
      note(rep, s - (a - PadicElt(ctx, ctx->ppow(j))) * tw.x0[j], j, 0, 0);
    }
  }
  return rep;
}

CongruenceReport check_congruences(const Tower& tw, long floor) {
  CongruenceReport rep;
  rep.floor = floor;
  const Ctx& ctx = tw.ctx();
  const long p = ctx->p, k = tw.eigen.k;
  std::vector<PadicElt> mj(k + 1);
  for (long i = 0; i <= k; ++i) mj[i] = m_j(tw.eigen, i);
  for (long r = 1; r <= tw.R; ++r) rep.margins[{0, r}] = kInf;
  for (long j = 1; j <= k; ++j) {
    for (long r = 1; r <= tw.R; ++r) {
      PadicElt ar_inv = tw.eigen.a_p.pow(-r);
      long worst = kInf;
      const long pr = (long)tw.x[j][r].size();
      for (long t = 1; t < pr; ++t) {
        if (t % p == 0) continue;
        PadicElt tinv = PadicElt(ctx, t).inv(), tp(ctx, 1L), s;
        mpz_class bin = 1;
        for (long i = 0; i <= j; ++i) {
          const PadicElt& xv = tw.x[i][r][t];
          if (!xv.is_exact_zero()) {
            PadicElt term = xv / mj[i] * ar_inv * tp * PadicElt(ctx, bin);
            s += (i % 2) ? -term : term;
          }
          tp = tp * tinv;
          bin = bin * (j - i) / (i + 1);
        }
        long v = s.is_exact_zero() ? kInf : s.val();  // tracked zero: val is the known lower bound
        if (v < kInf) worst = std::min(worst, v - j * r);
      }
      rep.margins[{j, r}] = worst;
      rep.C_patch3 = std::min(rep.C_patch3, worst);
    }
  }
  rep.pass = rep.C_patch3 >= floor;
  return rep;
}

Tower add_towers(const Tower& a, const Tower& b) {
  Tower r = a;
  for (size_t j = 0; j < r.x.size(); ++j)
    for (size_t l = 1; l < r.x[j].size(); ++l)
      for (size_t t = 0; t < r.x[j][l].size(); ++t) r.x[j][l][t] += b.x[j][l][t];
  if (a.has_x0 && b.has_x0)
    for (size_t j = 0; j < r.x0.size(); ++j) r.x0[j] += b.x0[j];
  else
    r.has_x0 = false;
  return r;
}

Tower inject_noise(const Tower& tw, const FiniteMeasure& nu, long j0, long scale_val) {
  if (scale_val >= kInf) return tw;
  if (j0 < 0 || j0 > tw.eigen.k) throw ValidationError("inject_noise: j0 out of range");
  Tower noise = gen_from_measure(nu, tw.eigen, tw.R);
  PadicElt s = PadicElt(tw.ctx(), 1L).mul_pow_p(scale_val);
  Tower r = tw;
  for (size_t l = 1; l < r.x[j0].size(); ++l)
    for (size_t t = 0; t < r.x[j0][l].size(); ++t)
      if (!noise.x[j0][l][t].is_exact_zero()) r.x[j0][l][t] += noise.x[j0][l][t] * s;
  if (r.has_x0 && noise.has_x0) r.x0[j0] += noise.x0[j0] * s;
  return r;
}

Tower perturb(const Tower& tw, long j, long r, long t, long M) {
  Tower out = tw;
  out.x.at(j).at(r).at(t) += PadicElt(tw.ctx(), 1L).mul_pow_p(M);
  return out;
}

PadicElt random_unit(const Ctx& ctx, std::mt19937_64& rng) {
  const long p = ctx->p;
  mpz_class u = 0;
  for (long i = ctx->N - 1; i >= 0; --i) {
    long d = (long)(rng() % (uint64_t)p);
    if (i == 0 && d == 0) d = 1 + (long)(rng() % (uint64_t)(p - 1));
    u = u * p + d;
  }
  return PadicElt::from_residue(ctx, u, ctx->N);
}

PadicElt random_integral(const Ctx& ctx, std::mt19937_64& rng) {
  long v = (long)(rng() % 3);
  return random_unit(ctx, rng).mul_pow_p(v);
}

FiniteMeasure random_measure(const Ctx& ctx, std::mt19937_64& rng, long max_points, long digits) {
  const long p = ctx->p;
  FiniteMeasure mu;
  long n = 1 + (long)(rng() % (uint64_t)max_points);
  for (long i = 0; i < n; ++i) {
    mpz_class z = 0;
    for (long d = digits - 1; d >= 0; --d) {
      long dig = (long)(rng() % (uint64_t)p);
      if (d == 0 && dig == 0) dig = 1 + (long)(rng() % (uint64_t)(p - 1));
      z = z * p + dig;
    }
    mu.z.push_back(z);
    mu.w.push_back(random_integral(ctx, rng));
  }
  return mu;
}

}  // namespace asai
