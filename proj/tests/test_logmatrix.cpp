#include "asai/logmatrix.hpp"
#include "doctest.h"
#include "support.hpp"

using namespace asai;

static bool is_zero(const TruncSeries& f) {
  for (const auto& c : f.c)
    if (!c.is_zero()) return false;
  return true;
}

static bool same(const TruncSeries& a, const TruncSeries& b) { return is_zero(a - b); }

static TruncSeries P(const Ctx& ctx, std::initializer_list<long> c) {
  std::vector<PadicElt> v;
  for (long x : c) v.emplace_back(ctx, x);
  return TruncSeries::poly(ctx, v);
}

static LogMatrixData data(long p, long k, long a, long v, int N = 40) {
  Ctx ctx = make_ctx(p, N);
  return LogMatrixData{ctx, k, PadicElt(ctx, a), PadicElt(ctx, v)};
}

TEST_CASE("companion matrix") {
  LogMatrixData d = data(3, 0, 3, 1);
  Mat2 A = build_A(d);
  const Ctx& ctx = d.ctx;
  CHECK(same(A.at(0, 0), P(ctx, {3})));
  CHECK(same(A.at(0, 1), P(ctx, {1})));
  CHECK(same(A.at(1, 0), P(ctx, {-3})));
  CHECK(same(A.at(1, 1), P(ctx, {})));
  CHECK(same(A.det(), P(ctx, {3})));
  Mat2 I = A * build_A_inverse(d);
  CHECK(same(I.at(0, 0), P(ctx, {1})));
  CHECK(is_zero(I.at(0, 1)));
  CHECK(is_zero(I.at(1, 0)));
  CHECK(same(I.at(1, 1), P(ctx, {1})));
  for (long p : {3L, 5L})
    for (long k = 0; k <= 3; ++k) {
      LogMatrixData e = data(p, k, p * p * 2, 3);
      CHECK(agree(build_A(e).det().coeff(0), PadicElt(e.ctx, 3L).mul_pow_p(k + 1)));
    }
}

TEST_CASE("validation") {
  CHECK_THROWS_AS(data(3, 0, 2, 1).validate(), ValidationError);
  CHECK_THROWS_AS(data(3, 2, 3, 1).validate(), ValidationError);  // v(a) must exceed floor(2/2) = 1
  CHECK_NOTHROW(data(3, 2, 9, 1).validate());
  CHECK_THROWS_AS(data(5, 0, 5, 0).validate(), ValidationError);
}

TEST_CASE("level factors") {
  LogMatrixData d = data(3, 0, 3, 1);
  const Ctx& ctx = d.ctx;
  Mat2 C = build_C(d, 1);
  CHECK(same(C.at(0, 0), P(ctx, {3})));
  CHECK(same(C.at(0, 1), P(ctx, {1})));
  CHECK(same(C.at(1, 0), P(ctx, {-3, -3, -1})));
  CHECK(same(C.det(), phi_n(ctx, 1)));
  for (long p : {3L, 5L})
    for (long k = 0; k <= 2; ++k) {
      LogMatrixData e = data(p, k, p * p, 1);
      long prev = -1;
      for (long m = 1; m <= 3; ++m) {
        Mat2 Cm = build_C(e, m);
        CHECK(Cm.det().coeff(0).val() == k + 1);
        // Closeness to A on the constant term never decreases with m.
        long close = (Cm.at(1, 0).coeff(0) - build_A(e).at(1, 0).coeff(0)).val();
        CHECK(close >= prev);
        prev = close;
      }
    }
}

TEST_CASE("the log matrix at level 0 and 1") {
  LogMatrixData d = data(3, 0, 3, 1);
  const Ctx& ctx = d.ctx;
  Mat2 M0 = build_M(d, 0);
  CHECK(is_zero(M0.at(0, 0)));
  CHECK(same(M0.at(0, 1), P(ctx, {-1})));
  CHECK(same(M0.at(1, 0), P(ctx, {1})));
  CHECK(same(M0.at(1, 1), P(ctx, {3})));
  TruncSeries want = phi_n(ctx, 1) * PadicElt(ctx, 3L).inv();
  CHECK(same(build_M(d, 1).det(), want));
}

TEST_CASE("determinant identity") {
  for (long p : {3L, 5L, 7L})
    for (long k = 0; k <= 2; ++k)
      for (long n = 0; n <= 3; ++n) {
        if (p == 7 && n == 3 && k > 0) continue;
        LogMatrixData d = data(p, k, p * p * 2, 1);
        CHECK(same(build_M(d, n).det(), n == 0 ? P(d.ctx, {1}) : log_product(d.ctx, k, n)));
      }
}

TEST_CASE("property report at k = 0") {
  for (long p : {3L, 5L}) {
    LogMatrixData d = data(p, 0, p, 1);
    LogMatrixRun run = run_logmatrix(d, 3);
    LogMatrixReport rep = check_properties(run);
    CHECK(rep.det_identity);
    CHECK(rep.det_unit);
    CHECK(rep.divisibility_pass);
    for (const auto& x : rep.divisibility) {
      CHECK(x[0] >= 2);
      CHECK(x[2] >= x[1] - x[0] - 1);
    }
    CHECK(rep.v_alpha == Valuation::of_twice(1));
    CHECK(rep.growth_pass);
    CHECK(std::abs(rep.growth_alpha.estimate - 0.5) <= 0.5);
    CHECK(rep.eigen_checked > 0);
    CHECK(rep.eigen_failed == 0);
    for (size_t i = 1; i < rep.cauchy.size(); ++i) CHECK(rep.cauchy[i] > rep.cauchy[i - 1]);
  }
}

TEST_CASE("property report with distinct slopes") {
  LogMatrixData d = data(5, 2, 5, 1, 60);
  LogMatrixReport rep = check_properties(run_logmatrix(d, 2));
  CHECK(rep.pass());
  CHECK(rep.v_alpha == Valuation::of_int(1));
  CHECK(rep.v_beta == Valuation::of_int(2));
  CHECK(std::abs(rep.growth_alpha.estimate - 1) <= 0.5);
  CHECK(std::abs(rep.growth_beta.estimate - 2) <= 0.5);
}

TEST_CASE("Q times its inverse") {
  for (long p : {3L, 5L})
    for (long k = 0; k <= 2; ++k) {
      LogMatrixData d = data(p, k, p * p, 2);
      QMatrix Q = build_Q(d);
      for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
          QuadElt s = Q.q[2 * i] * Q.qinv[j] + Q.q[2 * i + 1] * Q.qinv[2 + j];
          QuadElt want(Q.f, PadicElt(d.ctx, i == j ? 1L : 0L));
          CHECK((s - want).is_zero());
        }
    }
}
