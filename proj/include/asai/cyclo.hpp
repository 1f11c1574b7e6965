#pragma once

#include <vector>

#include "asai/series.hpp"

namespace asai {

// Q_p[X]/Phi_{p^m}(X); X is a primitive p^m-th root of unity. Level 0 is Q_p.
class CycloRing {
 public:
  CycloRing() = default;
  CycloRing(const Ctx& ctx, long m);
  const Ctx& ctx() const { return ctx_; }
  long level() const { return m_; }
  long dim() const { return dim_; }
  long order() const { return order_; }  // p^m

  std::vector<PadicElt> reduce(std::vector<PadicElt> v) const;
  std::vector<PadicElt> mul(const std::vector<PadicElt>& a, const std::vector<PadicElt>& b) const;
  // a * X^e.
  std::vector<PadicElt> shift(const std::vector<PadicElt>& a, long e) const;

 private:
  Ctx ctx_;
  long m_ = 0, q_ = 0, dim_ = 1, order_ = 1;
};

struct CycloElt {
  CycloRing ring;
  std::vector<PadicElt> v;

  static CycloElt zero(const CycloRing& R);
  static CycloElt scalar(const CycloRing& R, const PadicElt& a);
  static CycloElt zeta_pow(const CycloRing& R, long e);

  CycloElt operator+(const CycloElt& o) const;
  CycloElt operator-(const CycloElt& o) const;
  CycloElt operator*(const CycloElt& o) const;
  CycloElt operator*(const PadicElt& s) const;
  bool is_zero() const;
  // Smallest absolute precision among coordinates.
  long abs_prec() const;
  std::string str() const;
};

bool agree(const CycloElt& a, const CycloElt& b);

// theta(t) = eps(t)^delta_power * zeta^{wild_exp * log_u t}, conductor dividing p^r,
// zeta a primitive p^{r-1}-th root of unity. r = 0 is the trivial character.
struct DirichletChar {
  long p = 3;
  long r = 0;
  long delta_power = 0;
  long wild_exp = 0;

  void validate(const Ctx& ctx) const;
  bool is_trivial() const { return delta_power == 0 && wild_exp == 0; }
  CycloRing ring(const Ctx& ctx) const;
  CycloElt value(const Ctx& ctx, const LogTable& tab, long t) const;
};

// Substitute T = u^j zeta^{wild} - 1 and reduce.
CycloElt eval_series_at(const TruncSeries& f, long j, const DirichletChar& theta, const Ctx& ctx);

// sum_t values[t] * theta(t) over units t mod p^r (values indexed by residue).
CycloElt char_sum(const Ctx& ctx, const std::vector<PadicElt>& values, const DirichletChar& theta);

}  // namespace asai
