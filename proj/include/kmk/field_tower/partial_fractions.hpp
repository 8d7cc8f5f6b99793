#pragma once

#include <vector>

#include "kmk/field_tower/factor.hpp"
#include "kmk/field_tower/func_elem.hpp"

namespace kmk {

struct PartialFraction {
  Poly P;       // irreducible, primitive in x
  int e = 0;
  FuncElem h;   // deg_x h < e deg_x P, x-free denominator
};

struct PartialFractions {
  FuncElem poly_part;  // polynomial in x over the base field
  std::vector<PartialFraction> terms;
  FuncElem recombine(int x) const;
};

// f = poly_part + sum h / p^e where p is the monic associate of P.
PartialFractions partial_fractions(const FuncElem& f, int x, const FactorLimits& limits = {});
// h = sum_{i=1}^{e} h_i p^{e-i}, so h/p^e = sum_i h_i / p^i with deg_x h_i < deg p.
std::vector<FuncElem> split_by_powers(const FuncElem& h, const Poly& P, int e, int x);

}  // namespace kmk
