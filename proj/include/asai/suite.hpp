#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "asai/asai_patch.hpp"
#include "asai/decompose.hpp"

namespace asai {

// The patched level-R polynomial of a Dirac comb, computed without CRT: each
// point z contributes w teich(z)^delta sum_m b_m (1+T)^{l0 + m p^{R-1}}, where
// l0 = log_u(z mod p^R) and b solves the Vandermonde system that matches
// <z>^i u^{-i l0} on the k+1 twists.
TruncSeries oracle_patched(const Ctx& ctx, const FiniteMeasure& mu, long delta, long k, long R);

// Eigen data used by the generated demos: slope 0 at k = 0, slope 1 otherwise.
EigenData demo_eigen(const Ctx& ctx, long k);

// Wild characters of conductor p^r, r = 1..R, every delta; wild exponents are
// all units below p^{r-1} when exhaustive, else {1, p^{r-1} - 1}.
std::vector<DirichletChar> character_grid(long p, long R, bool exhaustive);

struct PipelineConfig {
  long p = 5, k = 2, R = 3, N = 40;
  uint64_t seed = 0;
  long points = 5;
  bool zero_measure = false;
  bool exhaustive_chars = false;
  // Fault injection: add p^fault_M to x[fault_j][fault_r][fault_t].
  bool fault = false;
  long fault_j = 0, fault_r = 1, fault_t = 1, fault_M = 3;
};

struct StageResult {
  std::string stage;
  bool pass = true;
  std::string detail;
};

struct PipelineReport {
  std::vector<StageResult> stages;
  std::string failed_stage;  // empty when everything passed
  bool pass() const { return failed_stage.empty(); }
};

// gen -> norm -> congruences -> patch -> oracle -> interp. Throws PrecisionError
// when N is below the tower requirement and ValidationError on bad input.
PipelineReport run_pipeline(const PipelineConfig& cfg);

// Random integral polynomials of the given degree in every component.
Distribution random_bounded(const Ctx& ctx, std::mt19937_64& rng, long deg);

struct RoundTripConfig {
  long p = 5, k = 2, n = 2, N = 80;
  long a_p = 5, a_pbar = 2;
  long deg = 3;
  long pairs = 100;
  uint64_t seed = 0;
};

struct RoundTripReport {
  long pairs = 0, recovered = 0;
  long valid_flagged = 0;       // valid pairs reported as mismatched
  long faults = 0, faults_flagged = 0;
  bool det_unit = true;
  long min_precision = kInf;
  long D = 0;
  bool pass() const { return recovered == pairs && det_unit && faults_flagged == faults; }
};

// Synthesizes random bounded pairs, decomposes them back and compares; each
// pair also yields two faults (alpha part of one pair with the beta part of
// another, and a zeroed beta part) that must be flagged.
RoundTripReport run_roundtrip(const RoundTripConfig& cfg);

struct GridCase {
  std::string name;
  std::string status;  // ok | fail | precision-exhausted
  std::string detail;
};

// Pipeline over p in {3,5,7}, k <= 4, R <= 3 and log-matrix properties at k = 0.
// A non-empty filter keeps only cases whose name matches it exactly.
std::vector<GridCase> run_invariants(long N, uint64_t seed, const std::string& filter = "");

}  // namespace asai
