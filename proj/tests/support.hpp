#pragma once

// Hand-rolled generators for the property tests. Every generator draws from a
// seeded std::mt19937_64, so a failing case is reproduced by its seed.

#include <cstdint>
#include <random>

#include "asai/tower.hpp"

namespace asai::testing {

struct Gen {
  std::mt19937_64 rng;
  explicit Gen(uint64_t seed) : rng(seed) {}

  long range(long lo, long hi) { return lo + (long)(rng() % (uint64_t)(hi - lo + 1)); }
  bool coin() { return rng() & 1; }

  PadicElt unit(const Ctx& ctx) { return random_unit(ctx, rng); }
  PadicElt integral(const Ctx& ctx) { return random_integral(ctx, rng); }
  // p^v * unit with v in [lo, hi].
  PadicElt elt(const Ctx& ctx, long lo, long hi) { return unit(ctx).mul_pow_p(range(lo, hi)); }

  // A residue prime to p in [1, p^r).
  long unit_residue(long p, long r) {
    long m = 1;
    for (long i = 0; i < r; ++i) m *= p;
    long t;
    do t = range(1, m - 1);
    while (t % p == 0);
    return t;
  }

  TruncSeries poly(const Ctx& ctx, long deg) {
    std::vector<PadicElt> c;
    for (long i = 0; i <= deg; ++i) c.push_back(integral(ctx));
    return TruncSeries::poly(ctx, c);
  }

  FiniteMeasure measure(const Ctx& ctx, long max_points, long digits) {
    return random_measure(ctx, rng, max_points, digits);
  }
};

template <class F>
void for_all(int cases, uint64_t seed, F&& body) {
  for (int i = 0; i < cases; ++i) {
    Gen g(seed * 1000003ULL + (uint64_t)i);
    body(g);
  }
}

}  // namespace asai::testing
