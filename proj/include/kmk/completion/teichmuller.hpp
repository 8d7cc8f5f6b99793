#pragma once

#include "kmk/completion/series.hpp"

namespace kmk {

// How leaves of the inseparable recursion are lifted: any lift of the
// residue class is valid and only changes the result beyond pi^(2^depth).
enum class LeafPolicy { Canonical, Shifted };

// The lift alpha(a) of a residue representative, modulo pi^N.
PadicSeries teichmuller_lift(const FuncElem& rep, std::shared_ptr<const Place> place, int N,
                             LeafPolicy policy = LeafPolicy::Canonical);

// Generic 2-basis recursion (the inseparable algorithm), usable at any
// finite place; depth = ceil(log2 N) unless given.
PadicSeries teichmuller_lift_recursive(const FuncElem& rep, std::shared_ptr<const Place> place, int N,
                                       LeafPolicy policy, int depth = -1);

// Root of p congruent to x, modulo p^N (separable places).
UPoly newton_root(const Place& place, int N);

}  // namespace kmk
