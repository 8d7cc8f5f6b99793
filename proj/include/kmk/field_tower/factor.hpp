#pragma once

#include <string>
#include <utility>
#include <vector>

#include "kmk/field_tower/poly.hpp"

namespace kmk {

struct FactorLimits {
  unsigned degree_bound = 12;          // per-variable degree of a squarefree part
  std::size_t max_recombinations = 1u << 16;
  std::vector<std::string> names;      // for error messages only
};

using Factorization = std::vector<std::pair<Poly, int>>;

// Irreducible factorization over GF(2) of a nonzero polynomial.  Factors are
// sorted graded-lex and recombine to p.  Throws FactorizationBoundError when
// a squarefree part exceeds the limits; the error carries the cofactor.
Factorization factor_bounded(const Poly& p, const FactorLimits& limits = {});

// Factors of p that involve variable x (the places of GF(2)(others)(x)).
Factorization place_factors(const Poly& p, int x, const FactorLimits& limits = {});

bool is_irreducible(const Poly& p, const FactorLimits& limits = {});

}  // namespace kmk
