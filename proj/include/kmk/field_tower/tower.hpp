#pragma once

#include <map>
#include <string>
#include <vector>

#include "kmk/field_tower/func_elem.hpp"

namespace kmk {

// F = GF(2)(vars); the last entry of `order` is the distinguished variable x
// and the others generate the base field.  Variable ids index `names`.
struct Tower {
  std::vector<std::string> names;
  std::vector<int> order;

  static Tower make(const std::vector<std::string>& base, const std::string& x);

  int x() const { return order.back(); }
  int size() const { return static_cast<int>(order.size()); }
  std::vector<int> base_vars() const { return {order.begin(), order.end() - 1}; }
  uint32_t var_mask() const;
  bool contains(int v) const;
  int position(int v) const;  // index of v in order, or -1
  int id_of(const std::string& name) const;  // -1 if unknown
  Tower base() const;                        // drop x; the previous variable becomes distinguished
  Tower without(int v) const;
  Tower reoriented(int new_x) const;          // move new_x to the end
  std::string to_string() const;
  bool operator==(const Tower&) const = default;
};

struct Label {
  enum class Kind { Var, Unif };
  Kind kind = Kind::Var;
  int var = -1;
  FuncElem value;
  std::string name;
  bool operator==(const Label& o) const {
    return kind == o.kind && var == o.var && value == o.value;
  }
};

// Ordered list of elements forming a 2-basis; subsets are bit masks over
// positions, and the integer order of masks is the order used for J + I > I.
using TwoBasis = std::vector<Label>;

TwoBasis standard_basis(const Tower& tower);
FuncElem basis_monomial(const TwoBasis& basis, uint32_t mask);
std::string mask_to_string(const TwoBasis& basis, uint32_t mask);

// f = sum_J b^J (f_J)^2.
using Decomposition = std::map<uint32_t, FuncElem>;

// Decomposition over the variables `vars` (positions give the mask bits).
Decomposition decompose_standard(const FuncElem& f, const std::vector<int>& vars);
FuncElem recombine(const Decomposition& d, const TwoBasis& basis);
Decomposition multiply(const Decomposition& a, const Decomposition& b, const TwoBasis& basis);
void add_into(Decomposition& a, const Decomposition& b);
Decomposition scale_components(const Decomposition& d, const FuncElem& c);  // f_J -> c f_J

}  // namespace kmk
