// Acceptance run: one PASS/FAIL line per criterion.

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>

#include "asai/classical_l.hpp"
#include "asai/suite.hpp"

using namespace asai;

namespace {

constexpr int kPrecision = 40;             // working relative precision
constexpr double kAC1Seconds = 60.0;       // whole-grid runtime target
constexpr long kAC1Measures = 100;         // minimum measures across the grid
constexpr long kAC3MinMargin = 0;          // congruence margin floor
constexpr double kGrowthTolerance = 0.5;   // |estimate - slope|
constexpr long kAC6Pairs = 100;            // pairs per cell
constexpr long kAC8Xmax = 200;

struct Outcome {
  bool pass = true;
  std::string detail;
};

bool is_zero(const TruncSeries& f) {
  for (const auto& c : f.c)
    if (!c.is_zero()) return false;
  return true;
}

long modpow(long b, long e, long m) {
  long r = 1;
  b %= m;
  for (; e > 0; e >>= 1, b = b * b % m)
    if (e & 1) r = r * b % m;
  return r;
}

Outcome ac1() {
  Outcome o;
  auto t0 = std::chrono::steady_clock::now();
  long measures = 0, bad = 0, amice_bad = 0, amice_min_prec = kInf;
  std::mt19937_64 rng(20261016);
  for (long p : {3L, 5L, 7L})
    for (long k : {0L, 1L, 2L, 4L})
      for (long R : {2L, 3L}) {
        Ctx ctx = make_ctx(p, kPrecision);
        EigenData e = demo_eigen(ctx, k);
        for (int s = 0; s < 5; ++s) {
          FiniteMeasure mu = random_measure(ctx, rng, 5, R + 2);
          PatchRun run = run_patch(gen_from_measure(mu, e, R));
          ++measures;
          const long deg = (k + 1) * ctx->ppow(R - 1).get_si();
          Distribution A = amice_transform(ctx, mu, 0, 6 * deg);
          for (long d : run.deltas) {
            if (!is_zero(run.Pr[d][R] - oracle_patched(ctx, mu, d, k, R))) ++bad;
            TruncSeries diff = rem_distinguished(A.comp[d] - run.Pr[d][R], run.crt[R]->product());
            if (!is_zero(diff)) ++amice_bad;
            for (const auto& c : diff.c) amice_min_prec = std::min(amice_min_prec, c.abs_prec());
          }
        }
      }
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  o.pass = measures >= kAC1Measures && bad == 0 && amice_bad == 0 && secs < kAC1Seconds;
  std::ostringstream s;
  s << measures << " measures, " << bad << " oracle mismatches, " << amice_bad
    << " truncated-transform mismatches (min precision " << amice_min_prec << "), " << secs << " s";
  o.detail = s.str();
  return o;
}

Outcome ac2() {
  Outcome o;
  long checked = 0, bad = 0;
  std::mt19937_64 rng(2);
  for (long p : {3L, 5L, 7L})
    for (long k = 0; k <= 4; ++k)
      for (long R = 1; R <= 3; ++R) {
        Ctx ctx = make_ctx(p, kPrecision);
        PatchRun run = run_patch(gen_from_measure(random_measure(ctx, rng, 5, R + 2), demo_eigen(ctx, k), R));
        for (long d : run.deltas)
          for (long r = 1; r <= R; ++r) {
            ++checked;
            if (run.Pr[d][r].degree() >= (k + 1) * ctx->ppow(r - 1).get_si()) ++bad;
          }
      }
  o.pass = bad == 0;
  o.detail = std::to_string(checked) + " patched polynomials, " + std::to_string(bad) + " over the bound";
  return o;
}

Outcome ac3() {
  Outcome o;
  long towers = 0, norm_bad = 0, cong_bad = 0, faults = 0, fault_bad = 0;
  long min_margin = kInf;
  std::mt19937_64 rng(3);
  for (long p : {3L, 5L, 7L})
    for (long k = 0; k <= 4; ++k)
      for (long R = 1; R <= 3; ++R) {
        Ctx ctx = make_ctx(p, kPrecision);
        Tower tw = gen_from_measure(random_measure(ctx, rng, 5, R + 2), demo_eigen(ctx, k), R);
        ++towers;
        NormReport nr = check_norm(tw);
        if (!nr.pass || nr.worst_val < kInf) ++norm_bad;
        CongruenceReport cr = check_congruences(tw);
        min_margin = std::min(min_margin, cr.C_patch3);
        if (!cr.pass || cr.C_patch3 < kAC3MinMargin) ++cong_bad;
        for (long M : {0L, 3L, 9L}) {
          long j = (long)(rng() % (k + 1)), r = 1 + (long)(rng() % R);
          long m = ctx->ppow(r).get_si(), t;
          do t = 1 + (long)(rng() % (m - 1));
          while (t % p == 0);
          NormReport fr = check_norm(perturb(tw, j, r, t, M));
          ++faults;
          if (fr.pass || fr.worst_val != M) ++fault_bad;
        }
      }
  o.pass = norm_bad == 0 && cong_bad == 0 && fault_bad == 0;
  std::ostringstream s;
  s << towers << " towers: norm failures " << norm_bad << ", congruence failures " << cong_bad << " (min margin "
    << (min_margin >= kInf ? std::string("inf") : std::to_string(min_margin)) << "), faults " << faults
    << " with " << fault_bad << " misreported";
  o.detail = s.str();
  return o;
}

Outcome ac4() {
  Outcome o;
  long checked = 0, bad = 0, trivial = 0;
  std::mt19937_64 rng(4);
  for (long p : {3L, 5L, 7L})
    for (long k : {0L, 1L, 2L})
      for (long R : {2L, 3L}) {
        if (p == 7 && R == 3) continue;
        Ctx ctx = make_ctx(p, kPrecision);
        Tower tw = gen_from_measure(random_measure(ctx, rng, 5, R + 2), demo_eigen(ctx, k), R);
        Distribution d = run_patch(tw).final;
        std::vector<DirichletChar> chars = character_grid(p, R, true);
        if (tw.has_x0) chars.push_back(DirichletChar{p, 0, 0, 0});
        for (const auto& th : chars)
          for (long j = 0; j <= k; ++j) {
            ++checked;
            trivial += th.r == 0;
            if (!interpolation_check(d, tw, th, j).pass) ++bad;
          }
      }
  o.pass = bad == 0 && trivial > 0;
  o.detail = std::to_string(checked) + " (theta, j) points incl. " + std::to_string(trivial) + " trivial, " +
             std::to_string(bad) + " failures";
  return o;
}

Outcome ac5() {
  Outcome o;
  long det_bad = 0, det_checked = 0;
  for (long p : {3L, 5L})
    for (long k = 0; k <= 2; ++k) {
      Ctx ctx = make_ctx(p, 60);
      LogMatrixData d{ctx, k, PadicElt(ctx, p * p), PadicElt(ctx, 1L)};
      for (long n = 1; n <= 3; ++n) {
        ++det_checked;
        if (!is_zero(build_M(d, n).det() - log_product(ctx, k, n))) ++det_bad;
      }
    }
  Ctx c3 = make_ctx(3, kPrecision);
  LogMatrixReport r0 = check_properties(run_logmatrix(LogMatrixData{c3, 0, PadicElt(c3, 3L), PadicElt(c3, 1L)}, 5));
  long div_bad = 0;
  for (const auto& x : r0.divisibility)
    if (x[2] < x[1] - x[0] - 1) ++div_bad;
  Ctx c5 = make_ctx(5, 60);
  LogMatrixReport r2 = check_properties(run_logmatrix(LogMatrixData{c5, 2, PadicElt(c5, 5L), PadicElt(c5, 1L)}, 2));
  auto off = [](const GrowthEstimate& g, const Valuation& v) { return std::abs(g.estimate - v.to_double()); };
  double worst = std::max({off(r0.growth_alpha, r0.v_alpha), off(r0.growth_beta, r0.v_beta),
                           off(r2.growth_alpha, r2.v_alpha), off(r2.growth_beta, r2.v_beta)});
  o.pass = det_bad == 0 && r0.det_identity && r2.det_identity && div_bad == 0 && !r0.divisibility.empty() &&
           worst <= kGrowthTolerance;
  std::ostringstream s;
  s << "det identity " << det_checked - det_bad << "/" << det_checked << ", divisibility " << r0.divisibility.size()
    << " pairs with " << div_bad << " below floor, worst growth offset " << worst;
  o.detail = s.str();
  return o;
}

Outcome ac6() {
  Outcome o;
  struct Cell {
    long p, k, n, a_p;
  };
  std::ostringstream s;
  for (Cell c : {Cell{3, 0, 2, 3}, Cell{3, 0, 3, 3}, Cell{5, 0, 2, 5}, Cell{5, 2, 2, 5}}) {
    RoundTripConfig cfg;
    cfg.p = c.p;
    cfg.k = c.k;
    cfg.n = c.n;
    cfg.a_p = c.a_p;
    cfg.pairs = kAC6Pairs;
    cfg.seed = 600 + c.p * 10 + c.n;
    RoundTripReport r = run_roundtrip(cfg);
    bool ok = r.pass() && r.pairs >= kAC6Pairs && r.valid_flagged == 0;
    o.pass = o.pass && ok;
    s << "(" << c.p << "," << c.k << "," << c.n << ") " << r.recovered << "/" << r.pairs << " recovered, "
      << r.faults_flagged << "/" << r.faults << " faults flagged" << (r.det_unit ? "" : ", det not a unit") << "; ";
  }
  o.detail = s.str();
  return o;
}

Outcome ac7() {
  Outcome o;
  long comps = 0, identity_bad = 0, unit_mismatch = 0, raised = 0, expected_raise = 0;
  std::mt19937_64 rng(7);
  const long D = 24;
  for (long p : {3L, 5L, 7L})
    for (long k = 0; k <= 4; ++k) {
      Ctx ctx = make_ctx(p, kPrecision);
      EigenData e = demo_eigen(ctx, k);
      Distribution d = random_bounded(ctx, rng, 10);
      RemoveCResult res = remove_c_report(d, e, D);
      long first_pole = -1;
      for (long i = 0; i < p - 1; ++i) {
        ++comps;
        // Constant term c^2 - c^{-2k} eps omega(c)^{2i} vanishes mod p iff c^{2(k+1-i)} = 1 there.
        long ee = ((2 * (k + 1 - i)) % (p - 1) + (p - 1)) % (p - 1);
        bool pole = modpow(e.c, ee, p) == 1;
        if (pole != res.meromorphic[i]) ++unit_mismatch;
        if (pole && first_pole < 0) first_pole = i;
        if (pole) continue;
        TruncSeries F = c_factor(e, i, D);
        if (!is_zero((res.d.comp[i] * F).truncate(D) - d.comp[i].truncate(D))) ++identity_bad;
      }
      if (first_pole >= 0) {
        ++expected_raise;
        try {
          remove_c(d, e, D);
        } catch (const MeromorphicComponent& m) {
          if (m.delta == first_pole) ++raised;
        }
      }
    }
  o.pass = identity_bad == 0 && unit_mismatch == 0 && raised == expected_raise && expected_raise > 0;
  std::ostringstream s;
  s << comps << " components, " << identity_bad << " identity failures, " << unit_mismatch
    << " unit-test disagreements, " << raised << "/" << expected_raise << " poles raised";
  o.detail = s.str();
  return o;
}

Outcome ac8() {
  Outcome o;
  long models = 0, euler_bad = 0, stab = 0, stab_bad = 0;
  for (long k = 0; k <= 3; ++k)
    for (uint64_t seed = 0; seed < 5; ++seed) {
      ++models;
      if (!euler_check(random_model(kAC8Xmax, k, seed), kAC8Xmax).pass()) ++euler_bad;
    }
  const std::pair<long, long> pairs[] = {{3, 5}, {5, 7}, {7, 3}, {3, 11}};
  for (auto [p, q] : pairs)
    for (uint64_t seed = 0; seed < 5; ++seed) {
      EulerModel m = two_prime_model(p, q, (long)seed % 3, seed);
      for (long alpha : {0L, 1L, -2L, p}) {
        ++stab;
        if (!stabilization_identity_check(m, p, alpha, kAC8Xmax).pass()) ++stab_bad;
      }
    }
  o.pass = euler_bad == 0 && stab_bad == 0;
  std::ostringstream s;
  s << models << " models to n <= " << kAC8Xmax << " with " << euler_bad << " failures, " << stab
    << " stabilizations with " << stab_bad << " failures";
  o.detail = s.str();
  return o;
}

}  // namespace

int main() {
  const std::pair<const char*, std::function<Outcome()>> criteria[] = {
      {"AC1 oracle equality", ac1},       {"AC2 degree bound", ac2},
      {"AC3 norm and congruences", ac3},  {"AC4 interpolation", ac4},
      {"AC5 log matrix", ac5},            {"AC6 decomposition round trip", ac6},
      {"AC7 c-removal", ac7},             {"AC8 classical identities", ac8},
  };
  int failed = 0;
  for (const auto& [name, fn] : criteria) {
    Outcome o;
    try {
      o = fn();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    failed += !o.pass;
    std::printf("%s %s: %s\n", o.pass ? "PASS" : "FAIL", name, o.detail.c_str());
    std::fflush(stdout);
  }
  return failed ? 1 : 0;
}
