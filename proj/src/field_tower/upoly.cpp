#include "kmk/field_tower/upoly.hpp"

#include "kmk/errors.hpp"

namespace kmk {

void UPoly::trim() {
  while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

UPoly UPoly::monomial(unsigned e) {
  std::vector<FuncElem> c(e + 1);
  c[e] = FuncElem::one();
  return UPoly(std::move(c));
}

UPoly UPoly::from_func(const FuncElem& f, int x) {
  if (f.den().has_var(x)) throw DomainError("UPoly::from_func: denominator involves x");
  const auto parts = f.num().coeffs(x);
  std::vector<FuncElem> c;
  c.reserve(parts.size());
  for (const auto& p : parts) c.push_back(p.is_zero() ? FuncElem() : FuncElem(p, f.den()));
  return UPoly(std::move(c));
}

FuncElem UPoly::to_func(int x) const {
  if (c_.empty()) return {};
  // Common denominator, then a single numerator.
  Poly den = Poly::one();
  for (const auto& c : c_)
    if (!c.is_zero() && !c.den().is_one()) {
      const Poly g = gcd(den, c.den());
      den = den * divexact(c.den(), g);
    }
  std::vector<Poly> num(c_.size());
  for (std::size_t i = 0; i < c_.size(); ++i)
    if (!c_[i].is_zero()) num[i] = c_[i].num() * divexact(den, c_[i].den());
  return FuncElem(Poly::from_coeffs(x, num), den);
}

UPoly& UPoly::operator+=(const UPoly& o) {
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
  for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
  trim();
  return *this;
}

UPoly operator*(const UPoly& a, const UPoly& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<FuncElem> c(a.c_.size() + b.c_.size() - 1);
  for (std::size_t i = 0; i < a.c_.size(); ++i) {
    if (a.c_[i].is_zero()) continue;
    for (std::size_t j = 0; j < b.c_.size(); ++j)
      if (!b.c_[j].is_zero()) c[i + j] += a.c_[i] * b.c_[j];
  }
  return UPoly(std::move(c));
}

UPoly UPoly::scaled(const FuncElem& s) const {
  if (s.is_zero()) return {};
  std::vector<FuncElem> c(c_);
  for (auto& v : c) v = v * s;
  return UPoly(std::move(c));
}

UPoly UPoly::shifted(unsigned k) const {
  if (is_zero()) return {};
  std::vector<FuncElem> c(k);
  c.insert(c.end(), c_.begin(), c_.end());
  return UPoly(std::move(c));
}

void UPoly::divrem(const UPoly& a, const UPoly& b, UPoly& q, UPoly& r) {
  if (b.is_zero()) throw DomainError("UPoly division by zero");
  r = a;
  q = UPoly();
  if (r.deg() < b.deg()) return;
  std::vector<FuncElem> qc(static_cast<std::size_t>(r.deg() - b.deg() + 1));
  const FuncElem inv = b.lead().inverse();
  const bool monic = b.lead().is_one();
  while (!r.is_zero() && r.deg() >= b.deg()) {
    const int k = r.deg() - b.deg();
    const FuncElem f = monic ? r.lead() : r.lead() * inv;
    qc[static_cast<std::size_t>(k)] = f;
    for (int j = 0; j <= b.deg(); ++j)
      if (!b.c_[static_cast<std::size_t>(j)].is_zero())
        r.c_[static_cast<std::size_t>(j + k)] += f * b.c_[static_cast<std::size_t>(j)];
    r.c_.back() = FuncElem();
    r.trim();
  }
  q = UPoly(std::move(qc));
}

UPoly UPoly::mod(const UPoly& m) const {
  UPoly q, r;
  divrem(*this, m, q, r);
  return r;
}

UPoly UPoly::monic() const {
  if (is_zero()) return *this;
  return scaled(lead().inverse());
}

UPoly mulmod(const UPoly& a, const UPoly& b, const UPoly& m) { return (a * b).mod(m); }

UPoly inverse_mod(const UPoly& a, const UPoly& m) {
  UPoly r0 = m, r1 = a.mod(m), s0, s1 = UPoly::constant(FuncElem::one());
  while (!r1.is_zero()) {
    UPoly q, r;
    UPoly::divrem(r0, r1, q, r);
    UPoly s = s0 + q * s1;
    r0 = std::move(r1);
    r1 = std::move(r);
    s0 = std::move(s1);
    s1 = std::move(s);
  }
  if (r0.deg() != 0) throw DomainError("inverse_mod: not coprime");
  return s0.scaled(r0.lead().inverse()).mod(m);
}

}  // namespace kmk
