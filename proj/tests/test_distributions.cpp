#include "asai/distribution.hpp"
#include "doctest.h"
#include "support.hpp"

using namespace asai;
using asai::testing::for_all;
using asai::testing::Gen;

static TruncSeries P(const Ctx& ctx, std::initializer_list<long> c) {
  std::vector<PadicElt> v;
  for (long x : c) v.emplace_back(ctx, x);
  return TruncSeries::poly(ctx, v);
}

static DirichletChar random_char(Gen& g, long p, long rmax) {
  DirichletChar th;
  th.p = p;
  th.r = g.range(1, rmax);
  th.delta_power = g.range(0, p - 2);
  long q = 1;
  for (long i = 1; i < th.r; ++i) q *= p;
  th.wild_exp = th.r == 1 ? 0 : g.range(0, q - 1);
  return th;
}

TEST_CASE("evaluation examples") {
  Ctx ctx = make_ctx(3, 20);
  CHECK(agree(eval_series_at(P(ctx, {1, 1}), 0, DirichletChar{3, 0, 0, 0}, ctx),
              CycloElt::scalar(CycloRing(ctx, 0), PadicElt(ctx, 1L))));
  SUBCASE("monomials in 1+T") {
    for (long m = 0; m <= 5; ++m)
      for (long j = 0; j <= 2; ++j) {
        DirichletChar th{3, 3, 1, 2};
        std::vector<PadicElt> b(m + 1);
        b[m] = PadicElt(ctx, 1L);
        CycloElt got = eval_series_at(from_one_plus_T(ctx, b), j, th, ctx);
        CycloRing R = th.ring(ctx);
        CycloElt want = CycloElt::zeta_pow(R, 2 * m) * PadicElt(ctx, ctx->u).pow(j * m);
        CHECK(agree(got, want));
      }
  }
  SUBCASE("omega_1 at zeta_9 - 1 and zeta_3 - 1") {
    TruncSeries w1 = omega(ctx, 1);
    DirichletChar z9{3, 3, 0, 1}, z3{3, 2, 0, 1};
    CycloElt at9 = eval_series_at(w1, 0, z9, ctx);
    CycloRing R9 = z9.ring(ctx);
    CHECK(agree(at9, CycloElt::zeta_pow(R9, 3) - CycloElt::scalar(R9, PadicElt(ctx, 1L))));
    CHECK_FALSE(at9.is_zero());
    CHECK(eval_series_at(w1, 0, z3, ctx).is_zero());
  }
}

TEST_CASE("character sums") {
  Ctx ctx = make_ctx(5, 20);
  SUBCASE("orthogonality") {
    for (long r = 1; r <= 3; ++r) {
      long m = ctx->ppow(r).get_si();
      std::vector<PadicElt> ones(m, PadicElt(ctx, 1L));
      for (long dp = 0; dp < 4; ++dp)
        for (long w : {0L, 1L}) {
          DirichletChar th{5, r, dp, r == 1 ? 0 : w};
          if (th.is_trivial()) continue;
          CHECK(char_sum(ctx, ones, th).is_zero());
        }
    }
  }
  SUBCASE("Dirac") {
    LogTable tab(ctx, 2);
    std::vector<PadicElt> v(25, PadicElt(ctx, 0L));
    v[13] = PadicElt(ctx, 1L);
    DirichletChar th{5, 2, 3, 2};
    CHECK(agree(char_sum(ctx, v, th), th.value(ctx, tab, 13)));
  }
  SUBCASE("sum of t eps(t)^2 at p = 5") {
    std::vector<PadicElt> v(5, PadicElt(ctx, 0L));
    PadicElt want(ctx, 0L);
    for (long t = 1; t < 5; ++t) {
      v[t] = PadicElt(ctx, t);
      want += PadicElt(ctx, t) * teichmuller(ctx, t, ctx->N).pow(2);
    }
    CycloElt got = char_sum(ctx, v, DirichletChar{5, 1, 2, 0});
    CHECK(agree(got, CycloElt::scalar(got.ring, want)));
  }
}

TEST_CASE("evaluation is a ring map") {
  for_all(40, 21, [](Gen& g) {
    long p = std::vector<long>{3, 5}[g.range(0, 1)];
    Ctx ctx = make_ctx(p, 20);
    TruncSeries f = g.poly(ctx, g.range(0, 8)), h = g.poly(ctx, g.range(0, 8));
    DirichletChar th = random_char(g, p, 3);
    long j = g.range(0, 3);
    CycloElt ef = eval_series_at(f, j, th, ctx), eh = eval_series_at(h, j, th, ctx);
    CHECK(agree(eval_series_at(f * h, j, th, ctx), ef * eh));
    CHECK(agree(eval_series_at(f + h, j, th, ctx), ef + eh));
  });
}

TEST_CASE("congruent polynomials have equal values") {
  for_all(40, 22, [](Gen& g) {
    long p = std::vector<long>{3, 5}[g.range(0, 1)];
    Ctx ctx = make_ctx(p, 20);
    long r = g.range(1, 3), j = g.range(0, 2);
    TruncSeries m = twist_sub(omega(ctx, r - 1), j);
    TruncSeries f = g.poly(ctx, 6);
    TruncSeries h = f + m * g.poly(ctx, 3);
    DirichletChar th = random_char(g, p, r);
    CHECK(agree(eval_series_at(f, j, th, ctx), eval_series_at(h, j, th, ctx)));
  });
}

TEST_CASE("growth scan examples") {
  Ctx ctx = make_ctx(3, 30);
  SUBCASE("integral coefficients are bounded") {
    Gen g(23);
    SeriesGrowth s = growth_scan(g.poly(ctx, 40), 0);
    CHECK_FALSE(s.violated);
    CHECK(s.h_inf >= 0);
  }
  SUBCASE("p^{-floor(log_p n)} is 1-admissible") {
    std::vector<PadicElt> c(1, PadicElt(ctx, 1L));
    for (long n = 1; n <= 80; ++n) {
      long e = 0;
      for (long x = n; x >= 3; x /= 3) ++e;
      c.push_back(PadicElt(ctx, 1L).mul_pow_p(-e));
    }
    SeriesGrowth s = growth_scan(TruncSeries::poly(ctx, c), 1);
    CHECK_FALSE(s.violated);
    CHECK(s.h_inf >= -1);
  }
  SUBCASE("p^{-n} is not admissible") {
    std::vector<PadicElt> c;
    for (long n = 0; n <= 40; ++n) c.push_back(PadicElt(ctx, 1L).mul_pow_p(-n));
    CHECK(growth_scan(TruncSeries::poly(ctx, c), 1).violated);
  }
}

TEST_CASE("Amice transform examples") {
  SUBCASE("Dirac at 1 is the constant 1") {
    Ctx ctx = make_ctx(5, 20);
    FiniteMeasure mu{{mpz_class(1)}, {PadicElt(ctx, 1L)}};
    Distribution d = amice_transform(ctx, mu, 0, 10);
    for (const auto& c : d.comp) {
      CHECK(agree(c.coeff(0), PadicElt(ctx, 1L)));
      for (long n = 1; n <= 10; ++n) CHECK(c.coeff(n).is_zero());
    }
  }
  SUBCASE("weighted Dirac") {
    Ctx ctx = make_ctx(5, 20);
    PadicElt w(ctx, 17L);
    FiniteMeasure mu{{mpz_class(26 * 3)}, {w}};
    Distribution d = amice_transform(ctx, mu, 0, 8);
    PadicElt eps = teichmuller(ctx, 3, ctx->N);
    for (long c = 0; c < 4; ++c) CHECK(agree(d.comp[c], d.comp[0] * eps.pow(c)));
    CHECK(agree(d.comp[0].coeff(0), w));
  }
  SUBCASE("Dirac at 11 reduces to (1+T)^2 mod 5 below degree 5") {
    Ctx ctx = make_ctx(5, 20);
    mpz_class lam = log_u_padic(ctx, 11, 6);
    CHECK(lam % 5 == 2);
    FiniteMeasure mu{{mpz_class(11)}, {PadicElt(ctx, 1L)}};
    Distribution d = amice_transform(ctx, mu, 0, 12);
    TruncSeries sq = P(ctx, {1, 2, 1});
    for (long n = 0; n < 5; ++n) CHECK((d.comp[0].coeff(n) - sq.coeff(n)).val() >= 1);
  }
}

TEST_CASE("Amice evaluation examples") {
  Ctx ctx = make_ctx(5, 20);
  SUBCASE("Dirac evaluates to theta(z)") {
    FiniteMeasure mu{{mpz_class(13)}, {PadicElt(ctx, 1L)}};
    Distribution d = amice_transform(ctx, mu, 0, 60);
    DirichletChar th{5, 2, 1, 1};
    LogTable tab(ctx, 2);
    CHECK(agree(eval_at(d, 0, th), th.value(ctx, tab, 13)));
  }
  SUBCASE("constant component") {
    Distribution d = zero_distribution(ctx, "oracle");
    d.comp[0] = P(ctx, {9});
    CHECK(agree(eval_at(d, 0, DirichletChar{5, 0, 0, 0}), CycloElt::scalar(CycloRing(ctx, 0), PadicElt(ctx, 9L))));
  }
}

TEST_CASE("Amice transform integrates characters") {
  for_all(30, 24, [](Gen& g) {
    long p = std::vector<long>{3, 5, 7}[g.range(0, 2)];
    Ctx ctx = make_ctx(p, 25);
    FiniteMeasure mu = g.measure(ctx, 4, 4);
    long j = g.range(0, 3);
    DirichletChar th = random_char(g, p, 2);
    Distribution dj = amice_transform(ctx, mu, j, 8 * p);
    CycloElt direct = measure_integral(ctx, mu, j, th);
    CycloElt via = eval_at(dj, 0, th);
    CHECK(agree(via, direct));
    CHECK(via.abs_prec() >= 3);
    // Twisting by z^j equals evaluating at u^j theta.
    Distribution d0 = amice_transform(ctx, mu, 0, 8 * p);
    CHECK(agree(eval_at(d0, j, th), direct));
  });
}

TEST_CASE("component projection round trip") {
  for_all(30, 25, [](Gen& g) {
    long p = std::vector<long>{3, 5, 7}[g.range(0, 2)];
    long r = g.range(1, 3);
    Ctx ctx = make_ctx(p, 20);
    LogTable tab(ctx, r);
    std::vector<PadicElt> v(tab.modulus(), PadicElt(ctx, 0L));
    for (long t : tab.units()) v[t] = g.integral(ctx);
    std::vector<PadicElt> back = to_group_ring(from_group_ring(ctx, v, r), r);
    for (long t : tab.units()) CHECK(agree(back[t], v[t]));
  });
}
