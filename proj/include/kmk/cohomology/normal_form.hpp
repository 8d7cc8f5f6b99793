#pragma once

#include <map>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "kmk/completion/series.hpp"
#include "kmk/forms/diff_form.hpp"

namespace kmk {

// A class of H_2^{m+1}(F): a representative over the standard basis of its
// tower.
struct CohClass {
  DiffForm rep;
  Tower tower;
};

// psi[(I, J)][l - 1] = u_{l,I,J}, masks over the completion basis C_p.
using PsiTable = std::map<std::pair<uint32_t, uint32_t>, std::vector<FuncElem>>;

struct LocalDecomposition {
  std::shared_ptr<const Place> place;
  int degree = 0;
  DiffForm phi1;  // degree m over the residue basis
  PsiTable psi;
  DiffForm phi2;  // degree m - 1 over the residue basis
};

struct W1NormalForm {
  std::shared_ptr<const Place> place;
  int degree = 0;
  PsiTable psi;
  DiffForm phi2;
  bool structurally_zero() const { return psi.empty() && phi2.is_zero(); }
  std::string to_string(const std::vector<std::string>& names = {}) const;
};

// Rewriting of t^J r^2 dt_I/t_I so that I' + J > I'.
// Returns {I} when already in shape and {} when the term is exact.
std::vector<uint32_t> rewrite_trailing(uint32_t I, uint32_t J);

LocalDecomposition local_normal_form(const DiffForm& w, const Tower& tower, std::shared_ptr<const Place> place,
                                     const PrecisionPolicy& policy = {});

W1NormalForm residue(const DiffForm& w, const Tower& tower, std::shared_ptr<const Place> place,
                     const PrecisionPolicy& policy = {});
// At infinity with the phi2 ^ dx/x part projected away.
W1NormalForm residue_infinity_mod(const DiffForm& w, const Tower& tower, const PrecisionPolicy& policy = {});

DiffForm zeta(const LocalDecomposition& dec);
DiffForm chi(const LocalDecomposition& dec);

// psi + (lift of phi2) ^ dp/p over the standard basis.
DiffForm milnor_split(const W1NormalForm& nf);

// Lift of a residue-basis form to a global form over the standard basis.
DiffForm lift_residue_form(const DiffForm& w, const Place& place);

std::shared_ptr<const Place> make_place(const Tower& tower, const Poly& P);
std::shared_ptr<const Place> make_infinity(const Tower& tower);

}  // namespace kmk
