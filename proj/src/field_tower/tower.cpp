#include "kmk/field_tower/tower.hpp"

#include <algorithm>

#include "kmk/errors.hpp"

namespace kmk {

Tower Tower::make(const std::vector<std::string>& base, const std::string& x) {
  Tower t;
  for (const auto& b : base) t.names.push_back(b);
  t.names.push_back(x);
  if (t.names.size() > static_cast<std::size_t>(kMaxVars)) throw DomainError("too many variables");
  for (std::size_t i = 0; i < t.names.size(); ++i) {
    for (std::size_t j = 0; j < i; ++j)
      if (t.names[i] == t.names[j]) throw DomainError("duplicate variable " + t.names[i]);
    t.order.push_back(static_cast<int>(i));
  }
  return t;
}

uint32_t Tower::var_mask() const {
  uint32_t m = 0;
  for (int v : order) m |= 1u << v;
  return m;
}

bool Tower::contains(int v) const { return position(v) >= 0; }

int Tower::position(int v) const {
  for (std::size_t i = 0; i < order.size(); ++i)
    if (order[i] == v) return static_cast<int>(i);
  return -1;
}

int Tower::id_of(const std::string& name) const {
  for (std::size_t i = 0; i < names.size(); ++i)
    if (names[i] == name) return static_cast<int>(i);
  return -1;
}

Tower Tower::base() const {
  Tower t = *this;
  t.order.pop_back();
  return t;
}

Tower Tower::without(int v) const {
  Tower t = *this;
  t.order.erase(std::remove(t.order.begin(), t.order.end(), v), t.order.end());
  return t;
}

Tower Tower::reoriented(int new_x) const {
  Tower t = without(new_x);
  t.order.push_back(new_x);
  return t;
}

std::string Tower::to_string() const {
  std::string s;
  for (std::size_t i = 0; i + 1 < order.size(); ++i) {
    if (i) s += ",";
    s += names[static_cast<std::size_t>(order[i])];
  }
  if (order.empty()) return s;
  if (order.size() > 1) s += ";";
  s += names[static_cast<std::size_t>(order.back())];
  return s;
}

TwoBasis standard_basis(const Tower& tower) {
  TwoBasis b;
  for (int v : tower.order) b.push_back({Label::Kind::Var, v, FuncElem::var(v), tower.names[static_cast<std::size_t>(v)]});
  return b;
}

FuncElem basis_monomial(const TwoBasis& basis, uint32_t mask) {
  FuncElem r = FuncElem::one();
  for (std::size_t k = 0; k < basis.size(); ++k)
    if ((mask >> k) & 1u) r = r * basis[k].value;
  return r;
}

std::string mask_to_string(const TwoBasis& basis, uint32_t mask) {
  std::string s = "{";
  bool first = true;
  for (std::size_t k = 0; k < basis.size(); ++k)
    if ((mask >> k) & 1u) {
      if (!first) s += ",";
      s += basis[k].name;
      first = false;
    }
  return s + "}";
}

Decomposition decompose_standard(const FuncElem& f, const std::vector<int>& vars) {
  uint32_t allowed = 0;
  for (int v : vars) allowed |= 1u << v;
  if (f.var_mask() & ~allowed) throw DomainError("element involves variables outside the 2-basis");
  Decomposition out;
  if (f.is_zero()) return out;
  const Poly nd = f.den().is_one() ? f.num() : f.num() * f.den();
  std::map<uint32_t, std::vector<Monomial>> parts;
  for (const auto& m : nd.terms()) {
    uint32_t mask = 0;
    Monomial root;
    for (std::size_t k = 0; k < vars.size(); ++k) {
      const unsigned e = m.exp(vars[k]);
      if (e & 1u) mask |= 1u << k;
      root.set_exp(vars[k], e / 2);
    }
    parts[mask].push_back(root);
  }
  for (auto& [mask, terms] : parts) {
    Poly g = Poly::from_terms(std::move(terms));
    if (f.den().is_one())
      out.emplace(mask, FuncElem(std::move(g)));
    else
      out.emplace(mask, FuncElem(std::move(g), f.den()));
  }
  return out;
}

FuncElem recombine(const Decomposition& d, const TwoBasis& basis) {
  FuncElem r;
  for (const auto& [mask, c] : d) r += basis_monomial(basis, mask) * c.square();
  return r;
}

Decomposition multiply(const Decomposition& a, const Decomposition& b, const TwoBasis& basis) {
  Decomposition out;
  for (const auto& [ja, ca] : a)
    for (const auto& [jb, cb] : b) {
      const uint32_t both = ja & jb;
      FuncElem c = ca * cb;
      if (both) c = c * basis_monomial(basis, both);
      auto [it, fresh] = out.emplace(ja ^ jb, c);
      if (!fresh) it->second += c;
    }
  for (auto it = out.begin(); it != out.end();) it = it->second.is_zero() ? out.erase(it) : std::next(it);
  return out;
}

void add_into(Decomposition& a, const Decomposition& b) {
  for (const auto& [j, c] : b) {
    auto [it, fresh] = a.emplace(j, c);
    if (!fresh) {
      it->second += c;
      if (it->second.is_zero()) a.erase(it);
    }
  }
}

Decomposition scale_components(const Decomposition& d, const FuncElem& c) {
  Decomposition out;
  if (c.is_zero()) return out;
  for (const auto& [j, v] : d) out.emplace(j, v * c);
  return out;
}

}  // namespace kmk
