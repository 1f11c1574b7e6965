#pragma once

#include <vector>

#include "asai/series.hpp"

namespace asai {

// CRT data for the moduli m_j = omega_{r-1}(u^{-j}(1+T)-1), j < h.
// Each inverse g_j = (prod_{i != j} m_i)^{-1} mod m_j comes from a d x d
// linear solve (d = p^{r-1}) with minimal-valuation pivoting.
class CrtBasis {
 public:
  CrtBasis(const Ctx& ctx, long h, long r);

  long h() const { return h_; }
  long r() const { return r_; }
  long d() const { return d_; }
  const std::vector<TruncSeries>& moduli() const { return m_; }
  // prod_j m_j, made monic.
  const TruncSeries& product() const { return prod_; }

  // The polynomial Q of degree < h*d with Q = R_j mod m_j for every j.
  TruncSeries patch(const std::vector<TruncSeries>& residues) const;

 private:
  Ctx ctx_;
  long h_, r_, d_;
  std::vector<TruncSeries> m_;      // monic moduli
  std::vector<TruncSeries> cof_;    // prod_{i != j} m_i
  std::vector<TruncSeries> g_;      // cof_j^{-1} mod m_j
  TruncSeries prod_;
};

TruncSeries crt_patch(const Ctx& ctx, const std::vector<TruncSeries>& residues, long r, long h);

// Largest p-power denominator among the coefficients (0 when integral).
long max_denominator(const TruncSeries& f);

// Solve A x = b over Q_p (A given row-major, n x n).
std::vector<PadicElt> solve_linear(std::vector<std::vector<PadicElt>> A, std::vector<PadicElt> b);

}  // namespace asai
