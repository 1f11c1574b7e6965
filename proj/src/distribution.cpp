#include "asai/distribution.hpp"

#include <algorithm>
#include <cmath>

namespace asai {

Distribution Distribution::operator+(const Distribution& o) const {
  Distribution r = *this;
  for (size_t i = 0; i < comp.size(); ++i) r.comp[i] = comp[i] + o.comp[i];
  return r;
}

Distribution Distribution::operator-(const Distribution& o) const {
  Distribution r = *this;
  for (size_t i = 0; i < comp.size(); ++i) r.comp[i] = comp[i] - o.comp[i];
  return r;
}

Distribution Distribution::operator*(const PadicElt& s) const {
  Distribution r = *this;
  for (auto& c : r.comp) c = c * s;
  return r;
}

Distribution zero_distribution(const Ctx& ctx, const std::string& provenance) {
  Distribution d;
  d.ctx = ctx;
  d.provenance = provenance;
  d.comp.assign(ctx->p - 1, TruncSeries::poly(ctx, {}));
  return d;
}

void FiniteMeasure::validate(const Ctx& ctx) const {
  if (z.size() != w.size()) throw ValidationError("measure: point and weight counts differ");
  for (const auto& x : z)
    if (mpz_divisible_ui_p(x.get_mpz_t(), ctx->p)) throw ValidationError("measure: support must consist of units");
}

FiniteMeasure FiniteMeasure::operator+(const FiniteMeasure& o) const {
  FiniteMeasure r = *this;
  r.z.insert(r.z.end(), o.z.begin(), o.z.end());
  r.w.insert(r.w.end(), o.w.begin(), o.w.end());
  return r;
}

SeriesGrowth growth_scan(const std::vector<Valuation>& vals, double w, long p) {
  SeriesGrowth g;
  long L = (long)vals.size() - 1;
  if (L < 1) return g;
  const double lp = std::log((double)p);
  for (long n = 1; n <= L; ++n) {
    if (vals[n].is_inf()) continue;
    double h = vals[n].to_double() + w * std::log((double)n) / lp;
    g.h_inf = std::min(g.h_inf, h);
    if (2 * n <= L)
      g.first_half_inf = std::min(g.first_half_inf, h);
    else
      g.last_half_inf = std::min(g.last_half_inf, h);
    ++g.samples;
  }
  if (g.first_half_inf < 1e299 && g.last_half_inf < 1e299) g.violated = g.last_half_inf < g.first_half_inf - 1.0;
  return g;
}

SeriesGrowth growth_scan(const TruncSeries& f, double w) {
  std::vector<Valuation> v;
  for (const auto& x : f.c) v.push_back(x.valuation());
  return growth_scan(v, w, f.ctx ? f.ctx->p : 3);
}

AdmissibilityReport admissibility_report(const Distribution& d, double w) {
  AdmissibilityReport r;
  for (const auto& c : d.comp) {
    SeriesGrowth g = growth_scan(c, w);
    r.h_inf = std::min(r.h_inf, g.h_inf);
    r.violated = r.violated || g.violated;
    r.per_component.push_back(g);
  }
  return r;
}

Distribution amice_transform(const Ctx& ctx, const FiniteMeasure& mu, long j, long Dmax) {
  mu.validate(ctx);
  const long p = ctx->p;
  Distribution d;
  d.ctx = ctx;
  d.provenance = "oracle";
  d.w = 0;
  std::vector<std::vector<PadicElt>> acc(p - 1, std::vector<PadicElt>(Dmax + 1));
  long floor = kInf;
  const long W = binomial_digits(ctx, Dmax);
  for (size_t i = 0; i < mu.z.size(); ++i) {
    if (mu.w[i].is_exact_zero()) continue;
    PadicElt weight = mu.w[i] * PadicElt(ctx, mu.z[i]).pow(j);
    floor = std::min(floor, weight.val());
    TruncSeries bs = binomial_series(ctx, log_u_padic(ctx, mu.z[i], W), W, Dmax);
    long t = mpz_fdiv_ui(mu.z[i].get_mpz_t(), p);
    PadicElt eps = PadicElt::from_residue(ctx, ctx->teich[t], ctx->N);
    PadicElt cw = weight;
    for (long c = 0; c < p - 1; ++c) {
      for (long n = 0; n <= Dmax; ++n) acc[c][n] += bs.c[n] * cw;
      cw = cw * eps;
    }
  }
  for (long c = 0; c < p - 1; ++c) d.comp.push_back(TruncSeries::series(ctx, std::move(acc[c]), Dmax, floor));
  return d;
}

CycloElt eval_at(const Distribution& d, long j, const DirichletChar& theta) {
  const long p = d.ctx->p;
  long idx = ((theta.delta_power + j) % (p - 1) + (p - 1)) % (p - 1);
  if (idx >= (long)d.comp.size()) throw ValidationError("eval_at: missing component");
  return eval_series_at(d.comp[idx], j, theta, d.ctx);
}

CycloElt measure_integral(const Ctx& ctx, const FiniteMeasure& mu, long j, const DirichletChar& theta) {
  theta.validate(ctx);
  CycloRing R = theta.ring(ctx);
  CycloElt acc = CycloElt::zero(R);
  long r = std::max(1L, theta.r);
  LogTable tab(ctx, r);
  mpz_class mod = ctx->ppow(r);
  for (size_t i = 0; i < mu.z.size(); ++i) {
    PadicElt wz = mu.w[i] * PadicElt(ctx, mu.z[i]).pow(j);
    mpz_class t;
    mpz_fdiv_r(t.get_mpz_t(), mu.z[i].get_mpz_t(), mod.get_mpz_t());
    acc = acc + theta.value(ctx, tab, t.get_si()) * wz;
  }
  return acc;
}

Distribution from_group_ring(const Ctx& ctx, const std::vector<PadicElt>& values, long r) {
  LogTable tab(ctx, r);
  Distribution d;
  d.ctx = ctx;
  d.provenance = "patched";
  for (long i = 0; i < ctx->p - 1; ++i) d.comp.push_back(group_ring_to_poly(ctx, tab, values, teich_power(ctx, i)));
  return d;
}

std::vector<PadicElt> to_group_ring(const Distribution& d, long r) {
  const Ctx& ctx = d.ctx;
  const long p = ctx->p;
  LogTable tab(ctx, r);
  const long dd = tab.modulus() / p;
  std::vector<std::vector<PadicElt>> b(p - 1, std::vector<PadicElt>(dd));
  for (long i = 0; i < p - 1; ++i) {
    const TruncSeries& f = d.comp[i];
    if (f.degree() >= dd) throw ValidationError("to_group_ring: component degree exceeds the level");
    for (long n = 0; n < f.size(); ++n) {
      if (f.c[n].is_exact_zero()) continue;
      mpz_class bin = 1;  // C(n, m), m from n down to 0
      for (long m = n; m >= 0; --m) {
        PadicElt term = f.c[n] * PadicElt(ctx, bin);
        b[i][m] += ((n - m) % 2) ? -term : term;
        bin = bin * m / (n - m + 1);
      }
    }
  }
  std::vector<PadicElt> v(tab.modulus());
  PadicElt inv = PadicElt(ctx, p - 1).inv();
  for (long t : tab.units()) {
    PadicElt s;
    for (long i = 0; i < p - 1; ++i) s += b[i][tab.log(t)] * teich_power(ctx, -i)(t);
    v[t] = s * inv;
  }
  return v;
}

}  // namespace asai
