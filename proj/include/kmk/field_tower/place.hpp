#pragma once

#include <memory>
#include <string>

#include "kmk/field_tower/tower.hpp"

namespace kmk {

// A place of F = GF(2)(t)(x) trivial on GF(2)(t): an irreducible polynomial
// in x, or the place at infinity with uniformizer 1/x.  Carries the 2-basis
// C_p of the completion, which is also a 2-basis of F, together with the
// expression of the one eliminated standard variable over C_p.
class Place {
 public:
  enum class Kind { Finite, Infinity };

  // P must be irreducible over GF(2) and involve the tower's x.  It is stored
  // primitive; p() is the monic associate over the base field.
  static Place finite(const Tower& tower, const Poly& P);
  static Place infinity(const Tower& tower);

  Kind kind() const { return kind_; }
  bool is_infinity() const { return kind_ == Kind::Infinity; }
  const Tower& tower() const { return tower_; }
  int x() const { return tower_.x(); }
  const Poly& P() const { return P_; }
  const FuncElem& p() const { return p_; }
  const Poly& lc() const { return lc_; }
  const FuncElem& uniformizer() const { return completion_.back().value; }
  int degree() const { return d_; }
  bool separable() const { return drop_ < 0; }
  int drop_var() const { return drop_; }
  int eliminated_var() const { return eliminated_; }

  // C_p: separable/infinity = [t..., pi]; inseparable = [t (no t_l)..., x, p].
  const TwoBasis& completion_basis() const { return completion_; }
  // C_p without the uniformizer: a 2-basis of the residue field.
  const TwoBasis& residue_basis() const { return residue_; }
  uint32_t pi_bit() const { return 1u << (completion_.size() - 1); }
  // Expression of the eliminated variable over C_p.
  const Decomposition& certificate() const { return certificate_; }

  // Decomposition of f over C_p (a global 2-basis of F).
  Decomposition decompose(const FuncElem& f) const;
  // Standard-basis mask (positions in tower.order) -> mask over C_p.
  uint32_t map_mask(uint32_t standard_mask) const;

  std::string to_string() const;
  bool operator==(const Place& o) const { return kind_ == o.kind_ && tower_ == o.tower_ && P_ == o.P_; }

 private:
  Place() = default;
  void build_basis();
  Kind kind_ = Kind::Finite;
  Tower tower_;
  Poly P_;
  Poly lc_;
  FuncElem p_;
  int d_ = 0;
  int drop_ = -1;
  int eliminated_ = -1;
  TwoBasis completion_, residue_;
  Decomposition certificate_;
  std::vector<int> standard_to_c_;  // position in order -> position in C_p or -1
};

bool is_separable(const Poly& P, int x);
// Largest base label l (in tower order) with dP/dt_l != 0; throws for
// separable P.
int inseparable_drop_index(const Tower& tower, const Poly& P);

}  // namespace kmk
