#pragma once

#include <array>
#include <vector>

#include "asai/cyclo.hpp"
#include "asai/distribution.hpp"
#include "asai/quadratic.hpp"
#include "asai/series.hpp"

namespace asai {

// 2x2 matrix of series, row-major: e[0] e[1] / e[2] e[3].
struct Mat2 {
  std::array<TruncSeries, 4> e;

  const TruncSeries& at(int i, int j) const { return e[2 * i + j]; }
  TruncSeries& at(int i, int j) { return e[2 * i + j]; }

  static Mat2 constant(const Ctx& ctx, const PadicElt& a, const PadicElt& b, const PadicElt& c, const PadicElt& d);
  static Mat2 identity(const Ctx& ctx);
  Mat2 operator*(const Mat2& o) const;
  Mat2 operator-(const Mat2& o) const;
  Mat2 truncate(long D) const;
  TruncSeries det() const;
  long min_val() const;
};

// Quadratic-extension-valued series s0 + s1 X, X the generator of the field.
struct QuadSeries {
  QField f;
  TruncSeries s0, s1;

  static QuadSeries zero(const QField& f);
  QuadSeries operator+(const QuadSeries& o) const;
  QuadSeries operator-(const QuadSeries& o) const;
  QuadSeries operator*(const TruncSeries& g) const;
  QuadSeries truncate(long D) const;
  long size() const { return std::max(s0.size(), s1.size()); }
  Valuation coeff_valuation(long n) const;
  std::vector<Valuation> valuations() const;
  bool is_zero() const;
};

QuadSeries operator*(const QuadElt& x, const TruncSeries& g);
QuadSeries operator*(const QuadElt& x, const QuadSeries& g);

// X^2 - a X + v p^{k+1}.
struct LogMatrixData {
  Ctx ctx;
  long k = 0;
  PadicElt a, v;

  PadicElt det_A() const;  // v p^{k+1}
  // v_p(a) > floor(k/(p-1)), v nonzero.
  void validate() const;
};

Mat2 build_A(const LogMatrixData& d);
Mat2 build_A_inverse(const LogMatrixData& d);
// prod_{i=0}^{k} Phi_m(u^{-i}(1+T)-1).
TruncSeries twisted_phi_product(const Ctx& ctx, long k, long m);
// [[a, 1], [-v prod_i Phi_m(u^{-i}(1+T)-1), 0]].
Mat2 build_C(const LogMatrixData& d, long m);
// A^{-(n+1)} C_n ... C_1 diag(1, v p^{k+1}).
Mat2 build_M(const LogMatrixData& d, long n);

struct LogMatrixRun {
  LogMatrixData data;
  long levels = 0;
  std::vector<Mat2> M;                 // M[n], n = 0..levels
  std::vector<long> cauchy;            // min v(M[n] - M[n-1]) over degrees < (k+1)p, n >= 1 (index n-1)
};

LogMatrixRun run_logmatrix(const LogMatrixData& d, long levels);

// Q = [[alpha, -beta], [-v p^{k+1}, v p^{k+1}]] and its inverse over the root field.
struct QMatrix {
  QField f;
  std::array<QuadElt, 4> q, qinv;
};

QMatrix build_Q(const LogMatrixData& d);

// Row r of Qinv * M as a pair of quadratic series (one per column of M).
std::array<QuadSeries, 2> q_inverse_row(const QMatrix& Q, const Mat2& M, int r);

// Growth exponent from level blocks: block m holds the degrees in
// [p^{m-1}, (k+1) p^m) (block 0 is [0, k+1)); the estimate is minus the
// least-squares slope of the block minima against m.
struct GrowthEstimate {
  std::vector<double> block_min;
  double estimate = 0;
};

GrowthEstimate estimate_growth(const std::vector<Valuation>& vals, long p, long k, long levels);

struct LogMatrixReport {
  bool det_identity = true;            // det M^(n) == log_product(k, n), every n
  bool det_unit = true;                // det M^(n)(0) has valuation 0, every n
  std::vector<long> cauchy;            // from the run
  // Divisibility: (n, n') -> valuation of the second-row remainder of A^n M^(n')
  // modulo prod_i Phi_{n-1}(u^{-i}(1+T)-1); kInf when exact.
  std::vector<std::array<long, 3>> divisibility;
  bool divisibility_pass = true;
  Valuation v_alpha, v_beta;
  GrowthEstimate growth_alpha, growth_beta;
  bool growth_pass = true;
  double growth_tolerance = 0.5;
  // alpha^r row_alpha(u^j zeta - 1) vs beta^r row_beta(u^j zeta - 1), zeta of order
  // p^{r-1}, r >= 2. Entries: {r, j, column, digits of agreement beyond the smaller side}.
  std::vector<std::array<long, 4>> eigen;
  long eigen_checked = 0, eigen_failed = 0;  // failures counted only where exactness is expected (k = 0)
  bool pass() const { return det_identity && det_unit && divisibility_pass && growth_pass; }
};

LogMatrixReport check_properties(const LogMatrixRun& run, bool eigen_check = true);

// Quadratic value of a quadratic series at u^j zeta - 1, as two cyclotomic coordinates.
std::array<CycloElt, 2> eval_quad(const QuadSeries& s, long j, const DirichletChar& theta, const Ctx& ctx);
std::array<CycloElt, 2> quad_scale(const QuadElt& x, const std::array<CycloElt, 2>& e);

}  // namespace asai
