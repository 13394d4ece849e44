#pragma once

// Library-internal helpers shared between the Spect machinery and the
// analysis pipeline. Not part of the public surface.

#include <cstdint>
#include <utility>
#include <vector>

#include "pencils/spectrum.hpp"

namespace pencils::detail {

// Root data extracted from a binary form: verified-exact finite roots with
// their multiplicities in the form, the multiplicity of (1:0), and the
// degree/multiplicity blocks left unextracted (products of non-rational
// irreducible factors, plus any rational factors beyond the reconstruction
// bound; either way they stay unclaimed and the report says so).
struct RootExtraction {
  std::vector<std::pair<FieldElement, int>> finite_roots;
  int infinity_multiplicity = 0;
  std::vector<std::pair<int, int>> nonrational_blocks;
};

RootExtraction extract_roots(const BinaryForm& form, std::uint64_t seed);

// All roots of a nonzero univariate polynomial over F_p (coefficients as
// residues, low to high), via X^p gcd splitting. Deterministic for a seed.
std::vector<std::uint64_t> roots_mod_p(const std::vector<std::uint64_t>& poly,
                                       std::uint64_t p, std::uint64_t seed);

}  // namespace pencils::detail
