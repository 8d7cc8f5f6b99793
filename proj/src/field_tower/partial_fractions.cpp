#include "kmk/field_tower/partial_fractions.hpp"

#include "kmk/errors.hpp"
#include "kmk/field_tower/upoly.hpp"

namespace kmk {

namespace {

UPoly monic_power(const Poly& P, int e, int x) {
  const UPoly p = UPoly::from_func(FuncElem(P), x).monic();
  UPoly r = UPoly::constant(FuncElem::one());
  for (int i = 0; i < e; ++i) r = r * p;
  return r;
}

}  // namespace

FuncElem PartialFractions::recombine(int x) const {
  FuncElem r = poly_part;
  for (const auto& t : terms) {
    const FuncElem p = FuncElem(t.P, t.P.lead_coeff(x));
    r += t.h * p.pow(-t.e);
  }
  return r;
}

PartialFractions partial_fractions(const FuncElem& f, int x, const FactorLimits& limits) {
  PartialFractions out;
  if (f.is_zero()) return out;
  std::vector<std::pair<Poly, int>> places;
  if (f.den().has_var(x)) places = place_factors(f.den(), x, limits);
  // f = N / (c * prod Q_i) with Q_i monic powers and c free of x.
  const UPoly num = UPoly::from_func(FuncElem(f.num()), x);
  UPoly den = UPoly::from_func(FuncElem(f.den()), x);
  std::vector<UPoly> Q;
  UPoly prod = UPoly::constant(FuncElem::one());
  for (const auto& [P, e] : places) {
    Q.push_back(monic_power(P, e, x));
    prod = prod * Q.back();
  }
  UPoly c, rem;
  UPoly::divrem(den, prod, c, rem);
  if (!rem.is_zero() || c.deg() != 0) throw InternalError("partial_fractions: inconsistent factorization");
  const UPoly n = num.scaled(c.lead().inverse());
  UPoly acc = n;
  for (std::size_t i = 0; i < Q.size(); ++i) {
    UPoly others = UPoly::constant(FuncElem::one());
    for (std::size_t j = 0; j < Q.size(); ++j)
      if (j != i) others = others * Q[j];
    const UPoly h = mulmod(n.mod(Q[i]), inverse_mod(others.mod(Q[i]), Q[i]), Q[i]);
    out.terms.push_back({places[i].first, places[i].second, h.to_func(x)});
    acc = acc + h * others;
  }
  UPoly q, r;
  UPoly::divrem(acc, prod, q, r);
  if (!r.is_zero()) throw InternalError("partial_fractions: remainder");
  out.poly_part = q.to_func(x);
  return out;
}

std::vector<FuncElem> split_by_powers(const FuncElem& h, const Poly& P, int e, int x) {
  const UPoly p = UPoly::from_func(FuncElem(P), x).monic();
  UPoly a = UPoly::from_func(h, x);
  std::vector<FuncElem> low_first;
  for (int k = 0; k < e; ++k) {
    UPoly q, r;
    UPoly::divrem(a, p, q, r);
    low_first.push_back(r.to_func(x));
    a = std::move(q);
  }
  if (!a.is_zero()) throw DomainError("split_by_powers: degree too large");
  // low_first[k] multiplies p^k, i.e. contributes to h_{e-k}.
  std::vector<FuncElem> out(static_cast<std::size_t>(e));
  for (int k = 0; k < e; ++k) out[static_cast<std::size_t>(e - 1 - k)] = low_first[static_cast<std::size_t>(k)];
  return out;
}

}  // namespace kmk
