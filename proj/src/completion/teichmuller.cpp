#include "kmk/completion/teichmuller.hpp"

#include "kmk/errors.hpp"

namespace kmk {

namespace {

UPoly eval_upoly(const UPoly& f, const UPoly& theta, const UPoly& m) {
  UPoly acc;
  for (int i = f.deg(); i >= 0; --i) acc = mulmod(acc, theta, m) + UPoly::constant(f.coeff(i));
  return acc;
}

PadicSeries from_upoly(std::shared_ptr<const Place> place, const UPoly& a, int N) {
  return expand_at(a.to_func(place->x()), place, N);
}

int ceil_log2(int n) {
  int d = 0;
  while ((1 << d) < n) ++d;
  return d;
}

UPoly lift_rec(const Place& pl, const FuncElem& rep, int depth, LeafPolicy policy, const UPoly& m) {
  const int x = pl.x();
  if (rep.is_zero()) return {};
  if (depth == 0) {
    UPoly a = UPoly::from_func(rep, x);
    if (policy == LeafPolicy::Shifted) a = (a + uniformizer_upoly(pl) * UPoly({FuncElem::one(), FuncElem::one()})).mod(m);
    return a;
  }
  UPoly acc;
  for (const auto& [mask, comp] : residue_decompose(pl, rep)) {
    const UPoly sub = lift_rec(pl, comp, depth - 1, policy, m);
    const UPoly mono = UPoly::from_func(basis_monomial(pl.residue_basis(), mask), x);
    acc += mulmod(mono, mulmod(sub, sub, m), m);
  }
  return acc;
}

}  // namespace

UPoly newton_root(const Place& place, int N) {
  if (place.is_infinity() || !place.separable()) throw DomainError("newton_root needs a separable finite place");
  const int x = place.x();
  const UPoly p = uniformizer_upoly(place);
  UPoly dp;
  {
    std::vector<FuncElem> c;
    for (int i = 1; i <= p.deg(); ++i) c.push_back(i % 2 ? p.coeff(i) : FuncElem());
    dp = UPoly(std::move(c));
  }
  const UPoly m = uniformizer_power(place, N);
  UPoly theta = UPoly::monomial(1).mod(m);
  for (int prec = 1; prec < 2 * N; prec *= 2) {
    const UPoly val = eval_upoly(p, theta, m);
    if (val.is_zero()) break;
    const FuncElem dval = eval_upoly(dp, theta, m).to_func(x);
    const UPoly inv = reduce_mod_power(place, dval.inverse(), N);
    theta = theta + mulmod(val, inv, m);
  }
  return theta;
}

PadicSeries teichmuller_lift_recursive(const FuncElem& rep, std::shared_ptr<const Place> place, int N,
                                       LeafPolicy policy, int depth) {
  if (place->is_infinity()) throw DomainError("recursive lift needs a finite place");
  if (depth < 0) depth = ceil_log2(N);
  const UPoly m = uniformizer_power(*place, N);
  return from_upoly(place, lift_rec(*place, rep, depth, policy, m), N);
}

PadicSeries teichmuller_lift(const FuncElem& rep, std::shared_ptr<const Place> place, int N, LeafPolicy policy) {
  if (place->is_infinity()) {
    PadicSeries s;
    s.place = place;
    s.v = 0;
    s.c.assign(static_cast<std::size_t>(N), FuncElem());
    s.c[0] = rep;
    return s;
  }
  if (!place->separable()) return teichmuller_lift_recursive(rep, place, N, policy);
  const UPoly m = uniformizer_power(*place, N);
  const UPoly theta = newton_root(*place, N);
  const UPoly a = UPoly::from_func(rep, place->x());
  return from_upoly(place, eval_upoly(a, theta, m), N);
}

}  // namespace kmk
