#include "asai/crt.hpp"

#include <algorithm>

namespace asai {

std::vector<PadicElt> solve_linear(std::vector<std::vector<PadicElt>> A, std::vector<PadicElt> b) {
  const long n = (long)A.size();
  for (long col = 0; col < n; ++col) {
    long piv = -1;
    long best = kInf;
    for (long row = col; row < n; ++row) {
      if (A[row][col].is_zero()) continue;
      if (A[row][col].val() < best) {
        best = A[row][col].val();
        piv = row;
      }
    }
    if (piv < 0) throw PrecisionError("linear solve: singular to working precision");
    std::swap(A[piv], A[col]);
    std::swap(b[piv], b[col]);
    PadicElt inv = A[col][col].inv();
    for (long row = col + 1; row < n; ++row) {
      if (A[row][col].is_exact_zero()) continue;
      PadicElt f = A[row][col] * inv;
      for (long k = col; k < n; ++k)
        if (!A[col][k].is_exact_zero()) A[row][k] -= f * A[col][k];
      b[row] -= f * b[col];
    }
  }
  std::vector<PadicElt> x(n);
  for (long row = n - 1; row >= 0; --row) {
    PadicElt s = b[row];
    for (long k = row + 1; k < n; ++k)
      if (!A[row][k].is_exact_zero()) s -= A[row][k] * x[k];
    x[row] = s / A[row][row];
  }
  return x;
}

// (f * T) mod m for monic m of degree d, f of length d.
static std::vector<PadicElt> mul_T_mod(const std::vector<PadicElt>& f, const TruncSeries& m) {
  const long d = (long)f.size();
  std::vector<PadicElt> g(d);
  PadicElt top = f[d - 1];
  for (long i = d - 1; i >= 1; --i) g[i] = f[i - 1];
  if (!top.is_exact_zero())
    for (long i = 0; i < d; ++i)
      if (!m.c[i].is_exact_zero()) g[i] -= top * m.c[i];
  return g;
}

CrtBasis::CrtBasis(const Ctx& ctx, long h, long r) : ctx_(ctx), h_(h), r_(r) {
  if (h < 1 || r < 1) throw ValidationError("crt: need h >= 1 and r >= 1");
  d_ = ctx->ppow(r - 1).get_si();
  TruncSeries w = omega(ctx, r - 1);
  for (long j = 0; j < h; ++j) m_.push_back(make_monic(twist_sub(w, j)));
  prod_ = TruncSeries::constant(ctx, PadicElt(ctx, 1L));
  for (const auto& m : m_) prod_ = prod_ * m;
  for (long j = 0; j < h; ++j) {
    TruncSeries cof = TruncSeries::constant(ctx, PadicElt(ctx, 1L));
    for (long i = 0; i < h; ++i)
      if (i != j) cof = cof * m_[i];
    cof_.push_back(cof);
    TruncSeries nbar = rem(cof, m_[j]);
    std::vector<PadicElt> col(nbar.c.begin(), nbar.c.end());
    col.resize(d_);
    std::vector<std::vector<PadicElt>> A(d_, std::vector<PadicElt>(d_));
    for (long c = 0; c < d_; ++c) {
      for (long i = 0; i < d_; ++i) A[i][c] = col[i];
      if (c + 1 < d_) col = mul_T_mod(col, m_[j]);
    }
    std::vector<PadicElt> rhs(d_);
    rhs[0] = PadicElt(ctx, 1L);
    g_.push_back(TruncSeries::poly(ctx, solve_linear(std::move(A), std::move(rhs))));
  }
}

TruncSeries CrtBasis::patch(const std::vector<TruncSeries>& residues) const {
  if ((long)residues.size() != h_) throw ValidationError("crt: expected one residue per modulus");
  TruncSeries Q = TruncSeries::poly(ctx_, {});
  for (long j = 0; j < h_; ++j) {
    TruncSeries t = rem(rem(residues[j], m_[j]) * g_[j], m_[j]);
    Q = Q + cof_[j] * t;
  }
  if (Q.size() > h_ * d_) {
    // Only zeros can sit above the degree bound; keep the representation tight.
    for (long i = h_ * d_; i < Q.size(); ++i)
      if (!Q.c[i].is_zero()) throw std::logic_error("crt: degree bound violated");
    Q.c.resize(h_ * d_);
    Q.trim();
  }
  return Q;
}

TruncSeries crt_patch(const Ctx& ctx, const std::vector<TruncSeries>& residues, long r, long h) {
  return CrtBasis(ctx, h, r).patch(residues);
}

long max_denominator(const TruncSeries& f) {
  long m = 0;
  for (const auto& x : f.c)
    if (!x.is_zero()) m = std::max(m, -x.val());
  return m;
}

}  // namespace asai
