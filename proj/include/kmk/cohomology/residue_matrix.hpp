#pragma once

#include <map>
#include <memory>
#include <vector>

#include "kmk/cohomology/normal_form.hpp"

namespace kmk {

// The matrix M (separable p) or M~ (inseparable p) over the residue field.
// Index masks are over base-variable positions of the tower.
struct ResidueMatrix {
  std::shared_ptr<const Place> place;
  bool inseparable = false;
  uint32_t support = 0;            // I_1 as a mask
  int pivot_var = -1;              // x, or t_{j_n} for inseparable p
  std::vector<uint32_t> index;     // T_1 (K_n = 0 when inseparable), increasing
  std::map<uint32_t, FuncElem> P;  // P_K or P~_K, reduced
  std::vector<std::vector<FuncElem>> entries;

  std::size_t size() const { return index.size(); }
  FuncElem sum_P() const;
  FuncElem determinant() const;
  bool is_symmetric() const;
};

ResidueMatrix build_residue_matrix(std::shared_ptr<const Place> place);

// Solution of M h = (g, 0, ..., 0)^T over the residue field.
std::vector<FuncElem> solve_residue_system(const ResidueMatrix& M, const FuncElem& g);

// Rewrites g/p^s A ^ dlog(pivot) as sum_K h_K/p^(s-1) A ^ dlog(t^K p).  The
// remainder input - rewritten has p-power-times-x-free denominators, and
// its pivot-label coefficients have pole order at most s - 1.  For p = x the
// input already has that shape and is returned as is.
struct DpConversion {
  std::vector<uint32_t> index;
  std::vector<FuncElem> h;
  DiffForm input, rewritten, remainder;
  bool remainder_ok = false;
};

DpConversion convert_dx_to_dp(const ResidueMatrix& M, const FuncElem& g, int s, const DiffForm& A);

}  // namespace kmk
