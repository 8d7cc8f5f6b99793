#pragma once

#include <bit>
#include <random>
#include <string>
#include <vector>

#include "kmk/field_tower/func_elem.hpp"
#include "kmk/forms/diff_form.hpp"
#include "kmk/field_tower/poly.hpp"

namespace kmk::testing {

inline Poly random_poly(std::mt19937_64& rng, const std::vector<int>& vars, unsigned max_deg, int terms) {
  std::vector<Monomial> t;
  for (int i = 0; i < terms; ++i) {
    Monomial m;
    for (int v : vars) m.set_exp(v, static_cast<unsigned>(rng() % (max_deg + 1)));
    t.push_back(m);
  }
  return Poly::from_terms(std::move(t));
}

inline Poly random_nonzero(std::mt19937_64& rng, const std::vector<int>& vars, unsigned max_deg, int terms) {
  for (;;) {
    Poly p = random_poly(rng, vars, max_deg, terms);
    if (!p.is_zero()) return p;
  }
}

// Brute force: no polynomial inside the exponent box of f, other than 1 and
// f, divides f.
inline bool brute_irreducible(const Poly& f) {
  std::vector<int> vars;
  for (int v = 0; v < kMaxVars; ++v)
    if (f.has_var(v)) vars.push_back(v);
  std::vector<Monomial> box{Monomial{}};
  for (int v : vars) {
    std::vector<Monomial> next;
    for (const auto& m : box)
      for (unsigned e = 0; e <= f.degree(v); ++e) {
        Monomial n = m;
        n.set_exp(v, e);
        next.push_back(n);
      }
    box = std::move(next);
  }
  if (box.size() > 20) return true;  // outside the oracle's reach
  for (uint64_t mask = 2; mask < (uint64_t{1} << box.size()); ++mask) {
    std::vector<Monomial> t;
    for (std::size_t i = 0; i < box.size(); ++i)
      if ((mask >> i) & 1u) t.push_back(box[i]);
    Poly g = Poly::from_terms(t);
    if (g.is_one() || g == f) continue;
    if (exact_div(f, g)) return false;
  }
  return true;
}

inline FuncElem random_func(std::mt19937_64& rng, const std::vector<int>& vars, unsigned deg, int terms = 3) {
  Poly n = random_poly(rng, vars, deg, terms);
  Poly d = random_nonzero(rng, vars, deg, 2);
  return FuncElem(n, d);
}

// Random m-form over the standard basis of the tower.
inline DiffForm random_form(std::mt19937_64& rng, const Tower& tower, int m, unsigned deg, int nterms = 2) {
  const TwoBasis basis = standard_basis(tower);
  DiffForm w(m, basis);
  const uint32_t n = static_cast<uint32_t>(basis.size());
  std::vector<uint32_t> masks;
  for (uint32_t mask = 0; mask < (1u << n); ++mask)
    if (std::popcount(mask) == m) masks.push_back(mask);
  if (masks.empty()) return w;
  for (int i = 0; i < nterms; ++i) w.add_term(masks[rng() % masks.size()], random_func(rng, tower.order, deg));
  return w;
}

}  // namespace kmk::testing
