#include "asai/asai_patch.hpp"
#include "asai/suite.hpp"
#include "doctest.h"
#include "support.hpp"

using namespace asai;
using asai::testing::for_all;
using asai::testing::Gen;

static bool is_zero(const TruncSeries& f) {
  for (const auto& c : f.c)
    if (!c.is_zero()) return false;
  return true;
}

static EigenData eigen(const Ctx& ctx, long k) {
  EigenData e = demo_eigen(ctx, k);
  e.validate();
  return e;
}

TEST_CASE("level polynomials") {
  Ctx ctx = make_ctx(5, 30);
  EigenData e = eigen(ctx, 2);
  SUBCASE("level 1 is the constant partial integral") {
    Gen g(41);
    FiniteMeasure mu = g.measure(ctx, 5, 3);
    Tower tw = gen_from_measure(mu, e, 2);
    for (long j = 0; j <= 2; ++j) {
      TruncSeries f = build_P(tw, 0, 1, j);
      PadicElt direct(ctx, 0L);
      for (size_t i = 0; i < mu.z.size(); ++i) {
        PadicElt z(ctx, mu.z[i]);
        long t = mpz_fdiv_ui(mu.z[i].get_mpz_t(), 5);
        direct += mu.w[i] * z.pow(j) * teichmuller(ctx, t, ctx->N).pow(-j);
      }
      CHECK(f.degree() <= 0);
      CHECK(agree(f.coeff(0), direct));
    }
  }
  SUBCASE("zero tower") { CHECK(is_zero(build_P(empty_tower(e, 2), 1, 2, 1))); }
  SUBCASE("Dirac at 11") {
    PadicElt w(ctx, 3L);
    Tower tw = gen_from_measure(FiniteMeasure{{mpz_class(11)}, {w}}, e, 2);
    TruncSeries f = build_P(tw, 0, 2, 0);
    std::vector<PadicElt> want = {w, w * PadicElt(ctx, 2L), w};
    CHECK(is_zero(f - TruncSeries::poly(ctx, want)));
  }
}

TEST_CASE("patching lemma conditions") {
  SUBCASE("measure towers pass") {
    for_all(20, 42, [](Gen& g) {
      long p = std::vector<long>{3, 5, 7}[g.range(0, 2)];
      Ctx ctx = make_ctx(p, 30);
      long k = g.range(0, 3), R = g.range(2, 3);
      Tower tw = gen_from_measure(g.measure(ctx, 5, R + 2), eigen(ctx, k), R);
      PolylemReport rep = check_polylem(run_patch(tw));
      CHECK(rep.pass);
      CHECK(rep.congruence_margin >= kInf);
    });
  }
  SUBCASE("a faulted tower fails at the faulted level") {
    Ctx ctx = make_ctx(5, 30);
    Gen g(43);
    Tower tw = gen_from_measure(g.measure(ctx, 5, 5), eigen(ctx, 1), 3);
    PolylemReport rep = check_polylem(run_patch(perturb(tw, 0, 2, 7, 2)));
    CHECK_FALSE(rep.pass);
    CHECK(rep.fail_r >= 1);
    CHECK(rep.fail_r <= 2);
  }
  SUBCASE("ordinary slope is trivially bounded") {
    Ctx ctx = make_ctx(3, 30);
    Gen g(44);
    Tower tw = gen_from_measure(g.measure(ctx, 5, 4), eigen(ctx, 0), 2);
    PolylemReport rep = check_polylem(run_patch(tw));
    CHECK(rep.pass);
    CHECK(rep.bounded_margin >= 0);
  }
}

TEST_CASE("patched polynomials reduce to each twist") {
  for_all(20, 45, [](Gen& g) {
    long p = std::vector<long>{3, 5, 7}[g.range(0, 2)];
    Ctx ctx = make_ctx(p, 30);
    long k = g.range(0, 4), R = g.range(1, 3);
    Tower tw = gen_from_measure(g.measure(ctx, 5, R + 2), eigen(ctx, k), R);
    PatchRun run = run_patch(tw, {0, p - 2});
    const long bound = (k + 1) * ctx->ppow(R - 1).get_si();
    for (long d : run.deltas) {
      for (long r = 1; r <= R; ++r) CHECK(run.Pr[d][r].degree() < (k + 1) * ctx->ppow(r - 1).get_si());
      CHECK(run.Pr[d][R].degree() < bound);
      for (long j = 0; j <= k; ++j)
        CHECK(is_zero(rem(run.Pr[d][R] - twist_sub(run.P[d][R][j], j), run.crt[R]->moduli()[j])));
    }
    if (k == 0)
      for (long d : run.deltas) CHECK(is_zero(run.Pr[d][R] - rem(run.P[d][R][0], omega(ctx, R - 1))));
  });
}

TEST_CASE("components patch independently") {
  Ctx ctx = make_ctx(5, 30);
  Gen g(46);
  Tower tw = gen_from_measure(g.measure(ctx, 5, 5), eigen(ctx, 2), 3);
  PatchRun all = run_patch(tw), one = run_patch(tw, {2});
  CHECK(is_zero(all.final.comp[2] - one.final.comp[2]));
}

TEST_CASE("assembly is linear") {
  for_all(10, 47, [](Gen& g) {
    long p = std::vector<long>{3, 5}[g.range(0, 1)];
    Ctx ctx = make_ctx(p, 30);
    long k = g.range(0, 2), R = g.range(1, 3);
    EigenData e = eigen(ctx, k);
    Tower a = gen_from_measure(g.measure(ctx, 4, R + 2), e, R);
    Tower b = gen_from_measure(g.measure(ctx, 4, R + 2), e, R);
    Distribution sum = run_patch(add_towers(a, b)).final;
    Distribution parts = run_patch(a).final + run_patch(b).final;
    for (size_t i = 0; i < sum.comp.size(); ++i) CHECK(is_zero(sum.comp[i] - parts.comp[i]));
  });
  Ctx ctx = make_ctx(5, 20);
  Distribution z = run_patch(empty_tower(eigen(ctx, 2), 2)).final;
  for (const auto& c : z.comp) CHECK(is_zero(c));
}

TEST_CASE("patched distribution matches the direct oracle") {
  for_all(20, 48, [](Gen& g) {
    long p = std::vector<long>{3, 5, 7}[g.range(0, 2)];
    Ctx ctx = make_ctx(p, 30);
    long k = g.range(0, 4), R = g.range(1, 3);
    FiniteMeasure mu = g.measure(ctx, 5, R + 2);
    PatchRun run = run_patch(gen_from_measure(mu, eigen(ctx, k), R), {0, p - 2});
    for (long d : run.deltas) {
      CHECK(is_zero(run.Pr[d][R] - oracle_patched(ctx, mu, d, k, R)));
      // Against the truncated Amice transform, at whatever precision its tail allows.
      long deg = (k + 1) * ctx->ppow(R - 1).get_si();
      Distribution A = amice_transform(ctx, mu, 0, 3 * deg);
      CHECK(is_zero(rem_distinguished(A.comp[d] - run.Pr[d][R], run.crt[R]->product())));
    }
  });
}

TEST_CASE("interpolation") {
  Ctx ctx = make_ctx(5, 30);
  SUBCASE("Dirac measure") {
    EigenData e = eigen(ctx, 1);
    PadicElt w(ctx, 4L);
    Tower tw = gen_from_measure(FiniteMeasure{{mpz_class(38)}, {w}}, e, 2);
    Distribution d = run_patch(tw).final;
    LogTable tab(ctx, 2);
    for (long j = 0; j <= 1; ++j) {
      DirichletChar th{5, 2, 1, 3};
      InterpReport ir = interpolation_check(d, tw, th, j);
      CHECK(ir.pass);
      CycloElt want = th.value(ctx, tab, 38) * (w * PadicElt(ctx, 38L).pow(j));
      CHECK(agree(ir.lhs, want));
    }
  }
  SUBCASE("wrong component evaluates to zero") {
    EigenData e = eigen(ctx, 0);
    Tower tw = gen_from_measure(FiniteMeasure{{mpz_class(1)}, {PadicElt(ctx, 1L)}}, e, 2);
    Distribution d = run_patch(tw).final;
    // A character reads only the component eps^{delta_power + j}; clear that one.
    d.comp[2] = TruncSeries::poly(ctx, {});
    CHECK(eval_at(d, 0, DirichletChar{5, 2, 2, 1}).is_zero());
  }
  SUBCASE("two masses, independent sides") {
    EigenData e = eigen(ctx, 2);
    FiniteMeasure mu{{mpz_class(7), mpz_class(18)}, {PadicElt(ctx, 1L), PadicElt(ctx, 2L)}};
    Tower tw = gen_from_measure(mu, e, 2);
    Distribution d = run_patch(tw).final;
    for (long dp = 0; dp < 4; ++dp)
      for (long j = 0; j <= 2; ++j) {
        DirichletChar th{5, 2, dp, 4};
        InterpReport ir = interpolation_check(d, tw, th, j);
        CHECK(ir.pass);
        CHECK(agree(ir.rhs, measure_integral(ctx, mu, j, th)));
      }
  }
  SUBCASE("trivial character uses the Euler factor") {
    EigenData e = eigen(ctx, 2);
    Gen g(49);
    FiniteMeasure mu = g.measure(ctx, 4, 4);
    Tower tw = gen_from_measure(mu, e, 2);
    REQUIRE(tw.has_x0);
    Distribution d = run_patch(tw).final;
    for (long j = 0; j <= 2; ++j) {
      InterpReport ir = interpolation_check(d, tw, DirichletChar{5, 0, 0, 0}, j);
      CHECK(ir.pass);
      // (1 - p^j / a) m_j^{-1} x0[j] against the direct integral.
      CycloElt direct = measure_integral(ctx, mu, j, DirichletChar{5, 0, 0, 0});
      CHECK(agree(ir.lhs, direct));
    }
  }
}

TEST_CASE("c-removal") {
  Ctx ctx = make_ctx(5, 30);
  EigenData e = eigen(ctx, 0);
  const long D = 20;
  SUBCASE("self-division gives 1") {
    Distribution d = zero_distribution(ctx, "patched");
    for (long i = 0; i < 4; ++i) d.comp[i] = c_factor(e, i, D);
    RemoveCResult res = remove_c_report(d, e, D);
    for (long i = 0; i < 4; ++i) {
      if (res.meromorphic[i]) continue;
      CHECK(agree(res.d.comp[i].coeff(0), PadicElt(ctx, 1L)));
      for (long n = 1; n <= D; ++n) CHECK(res.d.comp[i].coeff(n).is_zero());
    }
  }
  SUBCASE("remultiplication is the identity on unit factors") {
    Gen g(50);
    Distribution d = zero_distribution(ctx, "patched");
    for (auto& c : d.comp) c = g.poly(ctx, 12);
    RemoveCResult res = remove_c_report(d, e, D);
    long units = 0;
    for (long i = 0; i < 4; ++i) {
      TruncSeries F = c_factor(e, i, D);
      bool unit = F.coeff(0).val() == 0;
      CHECK(res.meromorphic[i] == !unit);
      if (!unit) continue;
      ++units;
      CHECK(is_zero((res.d.comp[i] * F).truncate(D) - d.comp[i].truncate(D)));
    }
    CHECK(units > 0);
  }
  SUBCASE("non-unit factors raise") {
    // c = 7, k = 2, odd delta: eps(7)^{2 delta} = -1 and the constant term is
    // 49 + 7^{-4} = 117650 / 2401, divisible by 25.
    EigenData e2 = eigen(ctx, 2);
    TruncSeries F = c_factor(e2, 1, D);
    CHECK(F.coeff(0).val() > 0);
    Distribution d = zero_distribution(ctx, "patched");
    for (auto& c : d.comp) c = TruncSeries::poly(ctx, {PadicElt(ctx, 1L)});
    CHECK_THROWS_AS(remove_c(d, e2, D), MeromorphicComponent);
    try {
      remove_c(d, e2, D);
    } catch (const MeromorphicComponent& m) {
      CHECK(m.delta == 1);
    }
  }
}

TEST_CASE("character values do not depend on the choice of u") {
  // A character is fixed by its values; under u' the wild exponent becomes w log_u(u').
  const long p = 5, R = 3, k = 1;
  Ctx c1 = make_ctx(p, 30), c2 = make_ctx(p, 30, 11);
  REQUIRE(c2->u == 11);
  Gen g(51);
  FiniteMeasure mu = g.measure(c1, 4, 4);
  FiniteMeasure mu2{mu.z, {}};
  for (const auto& w : mu.w) mu2.w.push_back(PadicElt(c2, w.lift()));
  Distribution d1 = run_patch(gen_from_measure(mu, eigen(c1, k), R)).final;
  Distribution d2 = run_patch(gen_from_measure(mu2, eigen(c2, k), R)).final;
  const long q = 25;
  const long lu = LogTable(c1, R).log(11) % q;
  for (long dp = 0; dp < p - 1; ++dp)
    for (long w : {1L, 7L})
      for (long j = 0; j <= k; ++j) {
        CycloElt a = eval_at(d1, j, DirichletChar{p, R, dp, w});
        CycloElt b = eval_at(d2, j, DirichletChar{p, R, dp, (w * lu) % q});
        REQUIRE(a.v.size() == b.v.size());
        for (size_t i = 0; i < a.v.size(); ++i) CHECK((a.v[i] - PadicElt(c1, b.v[i].lift())).val() >= 10);
      }
}
