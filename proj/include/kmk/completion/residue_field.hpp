#pragma once

#include <climits>

#include "kmk/field_tower/place.hpp"
#include "kmk/field_tower/upoly.hpp"

namespace kmk {

constexpr int kInfiniteValuation = INT_MAX;

int valuation(const Place& place, const FuncElem& f);

// Canonical representative of f mod p (deg_x < deg p, x-free denominator;
// x-free at infinity).  Requires v(f) >= 0.
FuncElem reduce(const Place& place, const FuncElem& f);
FuncElem residue_inverse(const Place& place, const FuncElem& rep);
inline FuncElem residue_mul(const Place& place, const FuncElem& a, const FuncElem& b) {
  return reduce(place, a * b);
}

// Decomposition of a residue representative over the residue 2-basis, each
// component reduced.
Decomposition residue_decompose(const Place& place, const FuncElem& rep);
bool residue_is_square(const Place& place, const FuncElem& rep);

// p as a monic polynomial in x over the base field, and its powers.
UPoly uniformizer_upoly(const Place& place);
UPoly uniformizer_power(const Place& place, int k);
// f (p-integral) modulo p^k as a polynomial of degree < k deg p.
UPoly reduce_mod_power(const Place& place, const FuncElem& f, int k);

}  // namespace kmk
