#include "kmk/field_tower/place.hpp"

#include "kmk/errors.hpp"

namespace kmk {

bool is_separable(const Poly& P, int x) { return !P.derivative(x).is_zero(); }

int inseparable_drop_index(const Tower& tower, const Poly& P) {
  if (is_separable(P, tower.x())) throw DomainError("inseparable_drop_index: place is separable");
  const auto base = tower.base_vars();
  for (std::size_t i = base.size(); i-- > 0;)
    if (!P.derivative(base[i]).is_zero()) return base[i];
  throw DomainError("inseparable_drop_index: polynomial is a square");
}

Place Place::finite(const Tower& tower, const Poly& P) {
  const int x = tower.x();
  if (!P.has_var(x)) throw DomainError("place polynomial must involve " + tower.names[static_cast<std::size_t>(x)]);
  if (P.var_mask() & ~tower.var_mask()) throw DomainError("place polynomial uses variables outside the tower");
  Place pl;
  pl.kind_ = Kind::Finite;
  pl.tower_ = tower;
  const Poly c = content(P, x);
  pl.P_ = c.is_one() ? P : divexact(P, c);
  pl.lc_ = pl.P_.lead_coeff(x);
  pl.p_ = FuncElem(pl.P_, pl.lc_);
  pl.d_ = static_cast<int>(pl.P_.degree(x));
  if (!is_separable(pl.P_, x)) pl.drop_ = inseparable_drop_index(tower, pl.P_);
  pl.build_basis();
  return pl;
}

Place Place::infinity(const Tower& tower) {
  Place pl;
  pl.kind_ = Kind::Infinity;
  pl.tower_ = tower;
  pl.d_ = 1;
  pl.build_basis();
  return pl;
}

void Place::build_basis() {
  const auto& names = tower_.names;
  const int x = tower_.x();
  completion_.clear();
  for (int v : tower_.base_vars())
    if (v != drop_) completion_.push_back({Label::Kind::Var, v, FuncElem::var(v), names[static_cast<std::size_t>(v)]});
  if (drop_ >= 0) completion_.push_back({Label::Kind::Var, x, FuncElem::var(x), names[static_cast<std::size_t>(x)]});
  residue_ = completion_;
  if (kind_ == Kind::Infinity) {
    completion_.push_back({Label::Kind::Unif, -1, FuncElem(Poly::one(), Poly::var(x)), "1/" + names[static_cast<std::size_t>(x)]});
    eliminated_ = x;
  } else {
    completion_.push_back({Label::Kind::Unif, -1, p_, "p"});
    eliminated_ = drop_ >= 0 ? drop_ : x;
  }
  standard_to_c_.assign(tower_.order.size(), -1);
  for (std::size_t i = 0; i < tower_.order.size(); ++i)
    for (std::size_t k = 0; k + 1 < completion_.size(); ++k)
      if (completion_[k].var == tower_.order[i]) standard_to_c_[i] = static_cast<int>(k);

  certificate_.clear();
  if (kind_ == Kind::Infinity) {
    certificate_.emplace(pi_bit(), FuncElem::var(x));
    return;
  }
  // p = alpha + y beta with alpha, beta in F^2(C_p \ p); then
  // y = (p + alpha) beta / beta^2.
  const int ypos = tower_.position(eliminated_);
  Decomposition alpha, beta;
  for (const auto& [mask, g] : decompose_standard(p_, tower_.order)) {
    const uint32_t m = map_mask(mask & ~(1u << ypos));
    if ((mask >> ypos) & 1u)
      beta.emplace(m, g);
    else
      alpha.emplace(m, g);
  }
  const FuncElem b = recombine(beta, completion_);
  if (b.is_zero()) throw InternalError("place certificate: vanishing derivative");
  alpha.emplace(pi_bit(), FuncElem::one());
  certificate_ = scale_components(multiply(alpha, beta, completion_), b.inverse());
}

uint32_t Place::map_mask(uint32_t standard_mask) const {
  uint32_t m = 0;
  for (std::size_t i = 0; i < standard_to_c_.size(); ++i)
    if ((standard_mask >> i) & 1u) {
      if (standard_to_c_[i] < 0) throw InternalError("map_mask: eliminated variable");
      m |= 1u << standard_to_c_[i];
    }
  return m;
}

Decomposition Place::decompose(const FuncElem& f) const {
  const int ypos = tower_.position(eliminated_);
  Decomposition plain, with_y;
  for (const auto& [mask, g] : decompose_standard(f, tower_.order)) {
    const uint32_t m = map_mask(mask & ~(1u << ypos));
    if ((mask >> ypos) & 1u)
      with_y.emplace(m, g);
    else
      plain.emplace(m, g);
  }
  if (!with_y.empty()) add_into(plain, multiply(with_y, certificate_, completion_));
  return plain;
}

std::string Place::to_string() const {
  if (kind_ == Kind::Infinity) return "inf";
  return p_.to_string(tower_.names);
}

}  // namespace kmk
