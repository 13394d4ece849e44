#pragma once

// Shared helpers for the test suites: seeded random polynomials and planted
// products with known factorization profiles.

#include <random>
#include <vector>

#include "pencils/polynomial.hpp"

namespace testutil {

using namespace pencils;

inline FieldElement random_scalar(const CoefficientField& k,
                                  std::mt19937_64& rng, int lo = -9,
                                  int hi = 9) {
  if (k.is_rationals()) {
    std::uniform_int_distribution<long> d(lo, hi);
    return FieldElement::integer(k, d(rng));
  }
  std::uniform_int_distribution<std::uint64_t> d(0, k.characteristic - 1);
  return FieldElement::residue(k, d(rng));
}

inline FieldElement random_nonzero_scalar(const CoefficientField& k,
                                          std::mt19937_64& rng) {
  for (;;) {
    FieldElement c = random_scalar(k, rng);
    if (!c.is_zero()) return c;
  }
}

inline BivariatePolynomial random_poly(const CoefficientField& k,
                                       std::mt19937_64& rng, int max_deg = 4,
                                       int max_terms = 5) {
  BivariatePolynomial p(k);
  std::uniform_int_distribution<int> nt(1, max_terms);
  std::uniform_int_distribution<int> dd(0, max_deg);
  int n = nt(rng);
  for (int t = 0; t < n; ++t) {
    int total = dd(rng);
    std::uniform_int_distribution<int> di(0, total);
    int i = di(rng);
    p.set_coeff({i, total - i}, random_scalar(k, rng));
  }
  return p;
}

inline BivariatePolynomial random_nonzero_poly(const CoefficientField& k,
                                               std::mt19937_64& rng,
                                               int max_deg = 4,
                                               int max_terms = 5) {
  for (;;) {
    BivariatePolynomial p = random_poly(k, rng, max_deg, max_terms);
    if (!p.is_zero()) return p;
  }
}

}  // namespace testutil
