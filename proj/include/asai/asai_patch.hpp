#pragma once

#include <map>
#include <memory>
#include <vector>

#include "asai/crt.hpp"
#include "asai/tower.hpp"

namespace asai {

struct PatchRun {
  const Tower* tower = nullptr;
  Ctx ctx;
  long k = 0, R = 1;
  std::vector<long> deltas;
  // P[delta][r][j] and Pr[delta][r], r = 1..R (index 0 unused).
  std::map<long, std::vector<std::vector<TruncSeries>>> P;
  std::map<long, std::vector<TruncSeries>> Pr;
  // Valuation of P_{r+1} - P_r modulo prod_i omega_{r-1}(u^{-i}(1+T)-1); kInf when it vanishes.
  std::map<long, std::vector<long>> coherence;
  std::map<long, std::vector<long>> denominators;
  std::vector<std::shared_ptr<CrtBasis>> crt;  // by level
  Distribution final;
  AdmissibilityReport admissibility;
};

// a_p^{-r} m_j^{-1} sum_t x[j][r][t] delta(t) eps(t)^{-j} (1+T)^{log_u t}.
TruncSeries build_P(const Tower& tw, long delta, long r, long j);
TruncSeries build_P(const Tower& tw, long delta, long r, long j, const LogTable& tab);

// CRT of twist_sub(P_{r,j}, j) over j = 0..k; asserts deg < (k+1) p^{r-1}.
TruncSeries patch_level(PatchRun& run, long delta, long r);

// Builds every P, patches every level and assembles the distribution.
PatchRun run_patch(const Tower& tw, std::vector<long> deltas = {});

Distribution assemble(PatchRun& run);

struct PolylemReport {
  long bounded_margin = kInf;    // min v(P_{r,j}) + n r
  long congruence_margin = kInf; // v of (P_{r+1,j} - P_{r,j}) mod omega_{r-1}; kInf if zero
  long alternating_margin = kInf;// min v(sum_i ...) + (n - j) r
  long fail_r = -1;              // first level where condition (2) fails
  bool pass = true;
};

PolylemReport check_polylem(const PatchRun& run, long floor = 0);

struct InterpReport {
  bool pass = false;
  long precision = 0;  // absolute precision at which both sides agree
  CycloElt lhs, rhs;
};

// eval_at(d, j, theta) against a_p^{-r} m_j^{-1} char_sum(x[j][r], theta); for the
// trivial character (r = 0) against (1 - p^j/a_p) m_j^{-1} x0[j].
InterpReport interpolation_check(const Distribution& d, const Tower& tw, const DirichletChar& theta, long j);

// c^2 - c^{-2k} eps_c_inv delta(c)^2 (1+T)^{2 lambda_c} through degree D.
TruncSeries c_factor(const EigenData& e, long delta, long D);

struct RemoveCResult {
  Distribution d;
  std::vector<bool> meromorphic;
};

// Divides each component by its c-factor; throws MeromorphicComponent on the first
// component whose factor has a non-unit constant term.
Distribution remove_c(const Distribution& d, const EigenData& e, long D);
RemoveCResult remove_c_report(const Distribution& d, const EigenData& e, long D);

}  // namespace asai
