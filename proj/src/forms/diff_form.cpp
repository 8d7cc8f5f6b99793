#include "kmk/forms/diff_form.hpp"

#include <bit>

#include "kmk/errors.hpp"

namespace kmk {

DiffForm DiffForm::scalar(TwoBasis basis, const FuncElem& a) {
  DiffForm w(0, std::move(basis));
  w.add_term(0, a);
  return w;
}

FuncElem DiffForm::coeff(uint32_t mask) const {
  auto it = terms_.find(mask);
  return it == terms_.end() ? FuncElem() : it->second;
}

void DiffForm::add_term(uint32_t mask, const FuncElem& a) {
  if (a.is_zero()) return;
  if (std::popcount(mask) != degree_) throw InternalError("add_term: degree mismatch");
  if (mask >> basis_.size()) throw InternalError("add_term: index outside the basis");
  auto [it, fresh] = terms_.try_emplace(mask, a);
  if (fresh) return;
  it->second += a;
  if (it->second.is_zero()) terms_.erase(it);
}

DiffForm& DiffForm::operator+=(const DiffForm& o) {
  if (o.terms_.empty()) return *this;
  if (terms_.empty() && basis_.empty() && degree_ == 0 && o.degree_ != 0) *this = DiffForm(o.degree_, o.basis_);
  if (degree_ != o.degree_) throw DomainError("adding forms of different degrees");
  if (!(basis_ == o.basis_)) throw DomainError("adding forms over different bases");
  for (const auto& [m, a] : o.terms_) add_term(m, a);
  return *this;
}

DiffForm DiffForm::scaled(const FuncElem& c) const {
  DiffForm r(degree_, basis_);
  if (c.is_zero()) return r;
  for (const auto& [m, a] : terms_) r.terms_.emplace(m, a * c);
  return r;
}

DiffForm DiffForm::map_coefficients(const std::function<FuncElem(const FuncElem&)>& f) const {
  DiffForm r(degree_, basis_);
  for (const auto& [m, a] : terms_) r.add_term(m, f(a));
  return r;
}

DiffForm DiffForm::rebased(TwoBasis basis) const {
  if (basis.size() != basis_.size()) throw InternalError("rebased: basis size mismatch");
  DiffForm r(degree_, std::move(basis));
  r.terms_ = terms_;
  return r;
}

std::string DiffForm::to_string(const std::vector<std::string>& names0) const {
  if (terms_.empty()) return "0";
  std::vector<std::string> names = names0;
  for (const auto& l : basis_)
    if (l.kind == Label::Kind::Var && l.var >= 0) {
      if (names.size() <= static_cast<std::size_t>(l.var)) names.resize(static_cast<std::size_t>(l.var) + 1);
      if (names[static_cast<std::size_t>(l.var)].empty()) names[static_cast<std::size_t>(l.var)] = l.name;
    }
  for (std::size_t v = 0; v < names.size(); ++v)
    if (names[v].empty()) names[v] = default_var_name(static_cast<int>(v));
  std::string out;
  for (const auto& [mask, a] : terms_) {
    if (!out.empty()) out += " + ";
    std::string logs;
    for (std::size_t k = 0; k < basis_.size(); ++k)
      if ((mask >> k) & 1u) {
        if (!logs.empty()) logs += " ^ ";
        const Label& l = basis_[k];
        logs += "dlog(" + (l.kind == Label::Kind::Var ? names[static_cast<std::size_t>(l.var)] : l.value.to_string(names)) + ")";
      }
    std::string c = a.to_string(names);
    if (a.is_poly() && a.num().size() > 1 && !logs.empty()) c = "(" + c + ")";
    if (logs.empty())
      out += c;
    else if (a.is_one())
      out += logs;
    else
      out += c + " * " + logs;
  }
  return out;
}

DiffForm wedge(const DiffForm& a, const DiffForm& b) {
  if (!(a.basis() == b.basis())) throw DomainError("wedge: forms over different bases");
  DiffForm r(a.degree() + b.degree(), a.basis());
  for (const auto& [ma, ca] : a.terms())
    for (const auto& [mb, cb] : b.terms())
      if (!(ma & mb)) r.add_term(ma | mb, ca * cb);
  return r;
}

namespace {

FuncElem log_coordinate(const FuncElem& f, int v) {
  const FuncElem df = f.derivative(v);
  if (df.is_zero()) return df;
  return df * FuncElem::var(v);
}

void require_standard(const DiffForm& w, const Tower& tower) {
  const TwoBasis std_basis = standard_basis(tower);
  if (!(w.basis() == std_basis)) throw DomainError("form is not over the standard basis of the tower");
}

}  // namespace

DiffForm dlog(const Tower& tower, const FuncElem& f) {
  if (f.is_zero()) throw DomainError("dlog of zero");
  const TwoBasis basis = standard_basis(tower);
  DiffForm r(1, basis);
  const FuncElem inv = f.inverse();
  for (std::size_t k = 0; k < tower.order.size(); ++k) {
    const FuncElem c = log_coordinate(f, tower.order[k]);
    if (!c.is_zero()) r.add_term(1u << k, c * inv);
  }
  return r;
}

DiffForm exterior_d(const FuncElem& a, const Tower& tower) {
  DiffForm r(1, standard_basis(tower));
  for (std::size_t k = 0; k < tower.order.size(); ++k) r.add_term(1u << k, log_coordinate(a, tower.order[k]));
  return r;
}

DiffForm exterior_d(const DiffForm& w, const Tower& tower) {
  require_standard(w, tower);
  DiffForm r(w.degree() + 1, w.basis());
  if (w.basis().size() != tower.order.size()) throw InternalError("exterior_d: basis mismatch");
  for (const auto& [mask, a] : w.terms()) {
    if (a.var_mask() & ~tower.var_mask()) throw DomainError("exterior_d: coefficient outside the tower");
    for (std::size_t k = 0; k < tower.order.size(); ++k)
      if (!((mask >> k) & 1u)) r.add_term(mask | (1u << k), log_coordinate(a, tower.order[k]));
  }
  return r;
}

DiffForm make_form(const Tower& tower, const std::vector<FormTerm>& terms, int degree) {
  if (degree < 0) {
    if (terms.empty()) throw DomainError("make_form: degree of an empty sum is unknown");
    degree = static_cast<int>(terms.front().logs.size());
  }
  const TwoBasis basis = standard_basis(tower);
  DiffForm r(degree, basis);
  for (const auto& t : terms) {
    if (static_cast<int>(t.logs.size()) != degree) throw DomainError("make_form: mixed degrees");
    DiffForm w = DiffForm::scalar(basis, t.a);
    for (const auto& b : t.logs) {
      if (b.is_zero()) throw DomainError("make_form: zero log argument");
      w = wedge(w, dlog(tower, b));
    }
    r += w;
  }
  return r;
}

DiffForm frobenius(const DiffForm& w) {
  DiffForm r(w.degree(), w.basis());
  for (const auto& [m, a] : w.terms()) r.add_term(m, a.square());
  return r;
}

DiffForm artin_schreier_image(const DiffForm& w) { return frobenius(w) + w; }

BasisChange::BasisChange(const Tower& tower, TwoBasis basis)
    : tower_(tower), basis_(std::move(basis)), standard_(standard_basis(tower)) {
  const std::size_t n = standard_.size();
  if (basis_.size() != n) throw DomainError("basis change: sizes differ");
  std::vector<std::vector<FuncElem>> J(n, std::vector<FuncElem>(n));
  for (std::size_t k = 0; k < n; ++k) {
    to_std_.push_back(dlog(tower_, basis_[k].value));
    for (std::size_t j = 0; j < n; ++j) J[k][j] = to_std_[k].coeff(1u << j);
  }
  // dlog b = J dlog s, so dlog s = J^{-1} dlog b.
  std::vector<std::vector<FuncElem>> inv(n, std::vector<FuncElem>(n));
  for (std::size_t i = 0; i < n; ++i) inv[i][i] = FuncElem::one();
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    while (piv < n && J[piv][c].is_zero()) ++piv;
    if (piv == n) throw DomainError("basis change: elements are not a 2-basis");
    std::swap(J[piv], J[c]);
    std::swap(inv[piv], inv[c]);
    const FuncElem s = J[c][c].inverse();
    for (std::size_t j = 0; j < n; ++j) {
      if (!J[c][j].is_zero()) J[c][j] = J[c][j] * s;
      if (!inv[c][j].is_zero()) inv[c][j] = inv[c][j] * s;
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == c || J[r][c].is_zero()) continue;
      const FuncElem f = J[r][c];
      for (std::size_t j = 0; j < n; ++j) {
        if (!J[c][j].is_zero()) J[r][j] += f * J[c][j];
        if (!inv[c][j].is_zero()) inv[r][j] += f * inv[c][j];
      }
    }
  }
  // Row k of inv expresses ... J^{-1}: dlog s_j = sum_k inv[j][k] dlog b_k.
  for (std::size_t j = 0; j < n; ++j) {
    DiffForm w(1, basis_);
    for (std::size_t k = 0; k < n; ++k) w.add_term(1u << k, inv[j][k]);
    from_std_.push_back(std::move(w));
  }
}

namespace {

DiffForm transport(const DiffForm& w, const TwoBasis& source, const TwoBasis& target,
                   const std::vector<DiffForm>& images) {
  if (!(w.basis() == source)) throw DomainError("basis change: form over an unexpected basis");
  DiffForm r(w.degree(), target);
  for (const auto& [mask, a] : w.terms()) {
    DiffForm t = DiffForm::scalar(target, a);
    for (std::size_t k = 0; k < source.size() && !t.is_zero(); ++k)
      if ((mask >> k) & 1u) t = wedge(t, images[k]);
    r += t;
  }
  return r;
}

}  // namespace

DiffForm BasisChange::to_standard(const DiffForm& w) const { return transport(w, basis_, standard_, to_std_); }
DiffForm BasisChange::from_standard(const DiffForm& w) const { return transport(w, standard_, basis_, from_std_); }

FuncElem BasisChange::partial(const FuncElem& f, int k) const {
  const DiffForm df = from_standard(exterior_d(f, tower_));
  const FuncElem c = df.coeff(1u << k);
  return c.is_zero() ? c : c * basis_[static_cast<std::size_t>(k)].value.inverse();
}

}  // namespace kmk
