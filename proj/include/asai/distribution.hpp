#pragma once

#include <string>
#include <vector>

#include "asai/cyclo.hpp"
#include "asai/series.hpp"

namespace asai {

// One series per delta = eps^i, i = 0..p-2.
struct Distribution {
  Ctx ctx;
  std::vector<TruncSeries> comp;
  double w = 0;
  std::string provenance;  // patched | oracle | decomposed

  Distribution operator+(const Distribution& o) const;
  Distribution operator-(const Distribution& o) const;
  Distribution operator*(const PadicElt& s) const;
};

Distribution zero_distribution(const Ctx& ctx, const std::string& provenance);

// Finite Dirac comb sum_i w_i delta_{z_i}; z_i are integer unit representatives.
struct FiniteMeasure {
  std::vector<mpz_class> z;
  std::vector<PadicElt> w;

  void validate(const Ctx& ctx) const;
  FiniteMeasure operator+(const FiniteMeasure& o) const;
};

struct SeriesGrowth {
  double h_inf = 1e300;
  double first_half_inf = 1e300;
  double last_half_inf = 1e300;
  bool violated = false;
  long samples = 0;
};

// h(n) = v(c_n) + w log_p n over known nonzero coefficients, n >= 1.
SeriesGrowth growth_scan(const std::vector<Valuation>& vals, double w, long p);
SeriesGrowth growth_scan(const TruncSeries& f, double w);

struct AdmissibilityReport {
  std::vector<SeriesGrowth> per_component;
  double h_inf = 1e300;
  bool violated = false;
};

AdmissibilityReport admissibility_report(const Distribution& d, double w);

// Component delta: sum_i w_i z_i^j delta(z_i) (1+T)^{lambda_i}, through degree Dmax.
Distribution amice_transform(const Ctx& ctx, const FiniteMeasure& mu, long j, long Dmax);

// Evaluation at u^j theta: reads the component eps^{j} * theta|_Delta.
CycloElt eval_at(const Distribution& d, long j, const DirichletChar& theta);

// sum_i w_i z_i^j theta(z_i), computed directly from the masses.
CycloElt measure_integral(const Ctx& ctx, const FiniteMeasure& mu, long j, const DirichletChar& theta);

// Group-ring element sum_t v_t [t] (level r) split into its delta components, and back.
Distribution from_group_ring(const Ctx& ctx, const std::vector<PadicElt>& values, long r);
std::vector<PadicElt> to_group_ring(const Distribution& d, long r);

}  // namespace asai
