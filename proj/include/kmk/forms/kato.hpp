#pragma once

#include <string>
#include <vector>

#include "kmk/forms/diff_form.hpp"

namespace kmk {

// Symbolic sum of <<b_1, ..., b_m; a>>; never evaluated.
struct PfisterSymbol {
  std::vector<std::string> slots;
  std::string a;
};

struct PfisterExpr {
  std::vector<PfisterSymbol> symbols;
  bool empty() const { return symbols.empty(); }
  std::string to_string() const;
};

PfisterExpr kato_symbol(const DiffForm& w);

}  // namespace kmk
