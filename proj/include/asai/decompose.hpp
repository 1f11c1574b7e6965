#pragma once

#include <vector>

#include "asai/logmatrix.hpp"

namespace asai {

// Eigen data at a split prime: p-bar ordinary, p non-ordinary. Both Hecke
// polynomials are X^2 - a_q X + eps p^{k+1}.
struct SplitEigenData {
  Ctx ctx;
  long k = 0;
  PadicElt a_p;     // non-ordinary prime
  PadicElt a_pbar;  // ordinary prime
  PadicElt eps;     // nebentypus value, a unit (1 when trivial)

  // v(a_pbar) = 0, v(a_p) > floor(k/(p-1)), alpha_p != beta_p.
  void validate() const;
  PadicElt alpha_pbar() const;  // the unit root
  // X^2 - alpha_pbar a_p X + alpha_pbar^2 eps p^{k+1}: roots alpha~, beta~.
  LogMatrixData product_data() const;
};

// A vector-valued distribution over the root field of the product polynomial.
struct QuadDistribution {
  QField f;
  std::vector<QuadSeries> comp;
};

// Body form [[alpha~, -beta~], [-alpha_pbar^2 p^{k+1}, alpha_pbar^2 p^{k+1}]] (times eps);
// the intro variant uses p^{k-1} and negates the last entry.
QMatrix build_Qtilde(const SplitEigenData& d, bool intro_variant = false);

struct SynthPair {
  QuadDistribution L_alpha, L_beta;
  Valuation v_alpha, v_beta;
  GrowthEstimate growth_alpha, growth_beta;
};

// (L_alpha, L_beta)^T = Qtilde^{-1} M^(n) (L_sharp, L_flat)^T per component, through degree D.
SynthPair synthesize(const Distribution& sharp, const Distribution& flat, const SplitEigenData& d, long n, long D);

struct DecomposeDiagnostics {
  bool rational = true;          // Qtilde (L_alpha, L_beta) has no X-part
  bool det_unit = true;          // det M^(n)(0) a unit
  long min_val = kInf;           // over both outputs, degrees <= D
  long precision = kInf;         // smallest absolute precision among output coefficients
  SeriesGrowth growth_sharp, growth_flat;
  bool mismatch = false;         // outputs fail to stabilize: flagged as not coming from one bounded pair
};

struct SignedPair {
  Distribution sharp, flat;
  DecomposeDiagnostics diag;
};

// (L_sharp, L_flat)^T = M^(n)^{-1} Qtilde (L_alpha, L_beta)^T via adjugate and series division.
SignedPair decompose(const QuadDistribution& L_alpha, const QuadDistribution& L_beta, const SplitEigenData& d,
                     long n, long D);

struct ConsistencyReport {
  long checked = 0, failed = 0, skipped = 0;
  // {r, wild_exp, delta_power, j, digits}: digits of agreement beyond the smaller side (kInf if equal).
  std::vector<std::array<long, 5>> points;
  long min_digits = kInf;
  bool pass() const { return failed == 0; }
};

// alpha~^r L_alpha(u^j theta) vs beta~^r L_beta(u^j theta) for wild theta (conductor p^r, r >= 2).
// At finite level the identity is exact for k = 0 and at r = n + 1; otherwise it holds up to a
// defect that shrinks with the level, and a point fails when it agrees to fewer than
// required_digits digits.
ConsistencyReport interpolation_consistency(const QuadDistribution& L_alpha, const QuadDistribution& L_beta,
                                            const SplitEigenData& d, const std::vector<DirichletChar>& thetas,
                                            long required_digits = 0);

}  // namespace asai
