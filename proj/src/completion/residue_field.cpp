#include "kmk/completion/residue_field.hpp"

#include "kmk/errors.hpp"

namespace kmk {

namespace {

// lc^k a = q P + r with deg_x r < deg_x P; returns r and sets k.
Poly prem_count(const Poly& a, const Poly& P, int x, int& k) {
  auto A = a.coeffs(x);
  const auto B = P.coeffs(x);
  const std::size_t db = B.size() - 1;
  const Poly& lc = B[db];
  k = 0;
  while (!A.empty() && A.size() - 1 >= db) {
    const std::size_t top = A.size() - 1;
    const Poly c = A[top];
    if (!lc.is_one())
      for (std::size_t i = 0; i < top; ++i)
        if (!A[i].is_zero()) A[i] = A[i] * lc;
    for (std::size_t j = 0; j < db; ++j)
      if (!B[j].is_zero()) A[j + top - db] += c * B[j];
    A.pop_back();
    while (!A.empty() && A.back().is_zero()) A.pop_back();
    ++k;
  }
  return Poly::from_coeffs(x, A);
}

int poly_valuation(const Poly& a, const Poly& P) {
  int v = 0;
  Poly cur = a;
  for (;;) {
    auto q = exact_div(cur, P);
    if (!q) return v;
    cur = std::move(*q);
    ++v;
  }
}

FuncElem reduce_poly_over(const Place& place, const Poly& num, const Poly& den) {
  int k = 0;
  Poly r = prem_count(num, place.P(), place.x(), k);
  if (r.is_zero()) return {};
  Poly d = k ? den * place.lc().pow(static_cast<unsigned>(k)) : den;
  return FuncElem(std::move(r), std::move(d));
}

}  // namespace

int valuation(const Place& place, const FuncElem& f) {
  if (f.is_zero()) return kInfiniteValuation;
  const int x = place.x();
  if (place.is_infinity())
    return static_cast<int>(f.den().degree(x)) - static_cast<int>(f.num().degree(x));
  return poly_valuation(f.num(), place.P()) - poly_valuation(f.den(), place.P());
}

FuncElem reduce(const Place& place, const FuncElem& f) {
  if (f.is_zero()) return f;
  const int x = place.x();
  if (place.is_infinity()) {
    const unsigned dn = f.num().degree(x), dd = f.den().degree(x);
    if (dn > dd) throw DomainError("reduce: pole at infinity");
    if (dn < dd) return {};
    return FuncElem(f.num().lead_coeff(x), f.den().lead_coeff(x));
  }
  if (!f.den().has_var(x)) {
    if (f.num().degree(x) < static_cast<unsigned>(place.degree())) return f;
    return reduce_poly_over(place, f.num(), f.den());
  }
  const FuncElem dbar = reduce_poly_over(place, f.den(), Poly::one());
  if (dbar.is_zero()) throw DomainError("reduce: element has a pole at the place");
  const FuncElem nbar = reduce_poly_over(place, f.num(), Poly::one());
  return reduce(place, nbar * residue_inverse(place, dbar));
}

FuncElem residue_inverse(const Place& place, const FuncElem& rep) {
  if (rep.is_zero()) throw DomainError("residue_inverse of zero");
  if (place.is_infinity() || !rep.has_var(place.x())) return rep.inverse();
  const int x = place.x();
  const UPoly a = UPoly::from_func(rep, x);
  return inverse_mod(a, uniformizer_upoly(place)).to_func(x);
}

Decomposition residue_decompose(const Place& place, const FuncElem& rep) {
  Decomposition out;
  if (rep.is_zero()) return out;
  const uint32_t pi = place.pi_bit();
  for (const auto& [mask, g] : place.decompose(rep)) {
    if (mask & pi) continue;
    FuncElem r = reduce(place, g);
    if (!r.is_zero()) out.emplace(mask, std::move(r));
  }
  return out;
}

bool residue_is_square(const Place& place, const FuncElem& rep) {
  for (const auto& [mask, g] : residue_decompose(place, rep))
    if (mask != 0) return false;
  return true;
}

UPoly uniformizer_upoly(const Place& place) {
  if (place.is_infinity()) throw DomainError("uniformizer_upoly at infinity");
  return UPoly::from_func(place.p(), place.x());
}

UPoly uniformizer_power(const Place& place, int k) {
  UPoly r = UPoly::constant(FuncElem::one());
  const UPoly p = uniformizer_upoly(place);
  for (int i = 0; i < k; ++i) r = r * p;
  return r;
}

namespace {

UPoly inverse_mod_power(const Place& place, const UPoly& a, int k) {
  const UPoly p = uniformizer_upoly(place);
  UPoly inv = inverse_mod(a.mod(p), p);
  int prec = 1;
  while (prec < k) {
    prec = std::min(2 * prec, k);
    const UPoly m = uniformizer_power(place, prec);
    // Newton step for 1/a in characteristic 2: v <- a v^2.
    inv = mulmod(a.mod(m), mulmod(inv, inv, m), m);
  }
  return inv;
}

}  // namespace

UPoly reduce_mod_power(const Place& place, const FuncElem& f, int k) {
  const int x = place.x();
  const UPoly m = uniformizer_power(place, k);
  if (f.is_zero()) return {};
  if (!f.den().has_var(x)) return UPoly::from_func(f, x).mod(m);
  const UPoly num = UPoly::from_func(FuncElem(f.num()), x).mod(m);
  const UPoly den = UPoly::from_func(FuncElem(f.den()), x).mod(m);
  if (den.mod(uniformizer_upoly(place)).is_zero()) throw DomainError("reduce_mod_power: pole at the place");
  return mulmod(num, inverse_mod_power(place, den, k), m);
}

}  // namespace kmk
