#include "kmk/forms/kato.hpp"

namespace kmk {

std::string PfisterExpr::to_string() const {
  if (symbols.empty()) return "0";
  std::string out;
  for (const auto& s : symbols) {
    if (!out.empty()) out += " + ";
    out += "<<";
    for (std::size_t i = 0; i < s.slots.size(); ++i) out += (i ? ", " : "") + s.slots[i];
    out += (s.slots.empty() ? "" : "; ") + s.a + ">>";
  }
  return out;
}

PfisterExpr kato_symbol(const DiffForm& w) {
  std::vector<std::string> names;
  for (const auto& l : w.basis())
    if (l.kind == Label::Kind::Var) {
      if (names.size() <= static_cast<std::size_t>(l.var)) names.resize(static_cast<std::size_t>(l.var) + 1);
      names[static_cast<std::size_t>(l.var)] = l.name;
    }
  for (std::size_t v = 0; v < names.size(); ++v)
    if (names[v].empty()) names[v] = default_var_name(static_cast<int>(v));
  PfisterExpr e;
  for (const auto& [mask, a] : w.terms()) {
    PfisterSymbol s;
    for (std::size_t k = 0; k < w.basis().size(); ++k)
      if ((mask >> k) & 1u) {
        const Label& l = w.basis()[k];
        s.slots.push_back(l.kind == Label::Kind::Var ? l.name : l.value.to_string(names));
      }
    s.a = a.to_string(names);
    e.symbols.push_back(std::move(s));
  }
  return e;
}

}  // namespace kmk
