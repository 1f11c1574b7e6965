#pragma once

#include <cstdint>
#include <map>
#include <random>
#include <utility>
#include <vector>

#include "asai/distribution.hpp"

namespace asai {

struct EigenData {
  Ctx ctx;
  long k = 0;
  PadicElt a_p;
  PadicElt sqrtD;      // a - a^sigma
  PadicElt eps_c_inv;  // nebentypus at c^{-1}
  long c = 2;

  long slope() const { return a_p.val(); }
  // 0 <= slope < k+1 (slope 0 is the ordinary test regime), sqrtD != 0, gcd(c, 6p) = 1.
  void validate() const;
};

// m_j = (a^sigma - a)^j j! C(k,j)^2 = (-sqrtD)^j j! C(k,j)^2.
PadicElt m_j(const EigenData& e, long j);

// Digits needed to build level R: R * slope plus a safety margin.
long required_precision(const EigenData& e, long R);

struct Tower {
  EigenData eigen;
  long R = 1;
  uint64_t seed = 0;
  // x[j][r][t], t a residue mod p^r (non-units hold exact zeros); x[j][0] unused.
  std::vector<std::vector<std::vector<PadicElt>>> x;
  bool has_x0 = false;
  std::vector<PadicElt> x0;

  const Ctx& ctx() const { return eigen.ctx; }
  long p() const { return eigen.ctx->p; }
};

Tower empty_tower(const EigenData& e, long R);

// x[j][r][t] = a_p^r m_j sum_{z_i = t mod p^r} w_i z_i^j, with the synthetic
// level-0 values x0[j] = sum_t x[j][1][t] / (a_p - p^j) when that is defined.
Tower gen_from_measure(const FiniteMeasure& mu, const EigenData& e, long R);

struct NormReport {
  bool pass = true;
  long worst_val = kInf;  // valuation of the worst nonzero deviation
  long worst_j = -1, worst_r = -1, worst_t = -1;
  long checked = 0;
};

// sum_{s = t mod p^r} x[j][r+1][s] = a_p x[j][r][t], and the level-0 relation
// sum_t x[j][1][t] = (a_p - p^j) x0[j] when x0 is present.
NormReport check_norm(const Tower& tw);

struct CongruenceReport {
  long C_patch3 = kInf;                       // infimum of all margins
  std::map<std::pair<long, long>, long> margins;  // (j, r) -> min over t
  bool pass = true;
  long floor = 0;
};

// v(sum_i (-1)^i C(j,i) t^{-i} y_i) - j r with y_i = x[i][r][t] / (m_i a_p^r).
CongruenceReport check_congruences(const Tower& tw, long floor = 0);

// Adds p^scale_val times the tower of nu to the j0 row only.
Tower inject_noise(const Tower& tw, const FiniteMeasure& nu, long j0, long scale_val);

// Adds p^M to one value (fault injection).
Tower perturb(const Tower& tw, long j, long r, long t, long M);

Tower add_towers(const Tower& a, const Tower& b);

// Seeded random Dirac comb with integral weights.
FiniteMeasure random_measure(const Ctx& ctx, std::mt19937_64& rng, long max_points, long digits);
PadicElt random_unit(const Ctx& ctx, std::mt19937_64& rng);
PadicElt random_integral(const Ctx& ctx, std::mt19937_64& rng);

}  // namespace asai
