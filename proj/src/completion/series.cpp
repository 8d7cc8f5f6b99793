#include "kmk/completion/series.hpp"

#include <algorithm>

#include "kmk/errors.hpp"

namespace kmk {

namespace {

// Digits of a (deg < N d) in base p.
std::vector<FuncElem> digits_of(const Place& place, UPoly a, int N) {
  const UPoly p = uniformizer_upoly(place);
  std::vector<FuncElem> out;
  out.reserve(static_cast<std::size_t>(N));
  for (int k = 0; k < N; ++k) {
    UPoly q, r;
    UPoly::divrem(a, p, q, r);
    out.push_back(r.to_func(place.x()));
    a = std::move(q);
  }
  return out;
}

UPoly undigits(const Place& place, const std::vector<FuncElem>& c) {
  const UPoly p = uniformizer_upoly(place);
  UPoly a;
  for (std::size_t k = c.size(); k-- > 0;) a = a * p + UPoly::from_func(c[k], place.x());
  return a;
}

// Power series over the base field: coefficients of u^k, u = 1/x.
std::vector<FuncElem> ps_div(const std::vector<FuncElem>& num, const std::vector<FuncElem>& den, int N) {
  std::vector<FuncElem> out(static_cast<std::size_t>(N));
  const FuncElem inv0 = den[0].inverse();
  for (int k = 0; k < N; ++k) {
    FuncElem acc = static_cast<std::size_t>(k) < num.size() ? num[static_cast<std::size_t>(k)] : FuncElem();
    for (int j = 1; j <= k && static_cast<std::size_t>(j) < den.size(); ++j)
      acc += den[static_cast<std::size_t>(j)] * out[static_cast<std::size_t>(k - j)];
    out[static_cast<std::size_t>(k)] = acc * inv0;
  }
  return out;
}

std::vector<FuncElem> reversed_coeffs(const UPoly& a) {
  std::vector<FuncElem> r(a.coeffs().rbegin(), a.coeffs().rend());
  return r;
}

PadicSeries zero_series(std::shared_ptr<const Place> place, int v, int N) {
  PadicSeries s;
  s.place = std::move(place);
  s.v = v;
  s.c.assign(static_cast<std::size_t>(std::max(N, 0)), FuncElem());
  return s;
}

void normalize(PadicSeries& s) {
  std::size_t lead = 0;
  while (lead < s.c.size() && s.c[lead].is_zero()) ++lead;
  if (lead == s.c.size()) return;
  s.c.erase(s.c.begin(), s.c.begin() + static_cast<std::ptrdiff_t>(lead));
  s.v += static_cast<int>(lead);
}

}  // namespace

bool PadicSeries::is_zero() const {
  return std::all_of(c.begin(), c.end(), [](const FuncElem& f) { return f.is_zero(); });
}

FuncElem PadicSeries::coeff(int k) const {
  if (k < v || k >= end()) return {};
  return c[static_cast<std::size_t>(k - v)];
}

FuncElem PadicSeries::to_func() const {
  const FuncElem pi = place->uniformizer();
  FuncElem acc;
  for (std::size_t i = c.size(); i-- > 0;) acc = acc * pi + c[i];
  return acc * pi.pow(v);
}

std::string PadicSeries::to_string() const {
  const auto& names = place->tower().names;
  const std::string pi = place->is_infinity() ? "u" : "p";
  std::string s;
  for (int k = v; k < end(); ++k) {
    const FuncElem ck = coeff(k);
    if (ck.is_zero()) continue;
    if (!s.empty()) s += " + ";
    std::string term = ck.to_string(names);
    if (k != 0) {
      if (!ck.is_one()) term = "(" + term + ")*";
      else term.clear();
      term += pi;
      if (k != 1) term += "^" + std::to_string(k);
    }
    s += term;
  }
  if (s.empty()) s = "0";
  return s + " + O(" + pi + "^" + std::to_string(end()) + ")";
}

PadicSeries expand_at(const FuncElem& f, std::shared_ptr<const Place> place, int N) {
  if (N < 1) throw DomainError("expand_at: precision must be positive");
  if (f.is_zero()) return zero_series(place, 0, N);
  const int v = valuation(*place, f);
  PadicSeries s;
  s.place = place;
  s.v = v;
  const int x = place->x();
  if (place->is_infinity()) {
    // f = u^v * Nrev(u) / Drev(u).
    const UPoly num = UPoly::from_func(FuncElem(f.num()), x);
    const UPoly den = UPoly::from_func(FuncElem(f.den()), x);
    s.c = ps_div(reversed_coeffs(num), reversed_coeffs(den), N);
    return s;
  }
  const FuncElem unit = f * place->p().pow(-v);
  s.c = digits_of(*place, reduce_mod_power(*place, unit, N), N);
  return s;
}

PadicSeries series_add(const PadicSeries& a, const PadicSeries& b) {
  const int v = std::min(a.v, b.v);
  const int e = std::min(a.end(), b.end());
  PadicSeries s = zero_series(a.place, v, e - v);
  for (int k = v; k < e; ++k) s.c[static_cast<std::size_t>(k - v)] = a.coeff(k) + b.coeff(k);
  if (a.place->is_infinity()) {
    normalize(s);
    return s;
  }
  // Digit sums stay canonical (deg < d) so no carry is needed.
  normalize(s);
  return s;
}

PadicSeries series_mul(const PadicSeries& a, const PadicSeries& b) {
  const int N = std::min(a.precision(), b.precision());
  PadicSeries s = zero_series(a.place, a.v + b.v, N);
  if (a.place->is_infinity()) {
    for (int i = 0; i < N; ++i)
      for (int j = 0; i + j < N; ++j)
        s.c[static_cast<std::size_t>(i + j)] += a.c[static_cast<std::size_t>(i)] * b.c[static_cast<std::size_t>(j)];
  } else {
    const Place& pl = *a.place;
    const UPoly m = uniformizer_power(pl, N);
    std::vector<FuncElem> ac(a.c.begin(), a.c.begin() + N), bc(b.c.begin(), b.c.begin() + N);
    s.c = digits_of(pl, mulmod(undigits(pl, ac), undigits(pl, bc), m), N);
  }
  normalize(s);
  return s;
}

PadicSeries series_invert(const PadicSeries& s0) {
  PadicSeries s = s0;
  normalize(s);
  if (s.is_zero()) throw DomainError("series_invert of zero");
  const int N = s.precision();
  PadicSeries r = zero_series(s.place, -s.v, N);
  if (s.place->is_infinity()) {
    std::vector<FuncElem> one{FuncElem::one()};
    r.c = ps_div(one, s.c, N);
    return r;
  }
  const Place& pl = *s.place;
  const UPoly a = undigits(pl, s.c);
  const FuncElem af = a.to_func(pl.x());
  r.c = digits_of(pl, reduce_mod_power(pl, af.inverse(), N), N);
  return r;
}

PadicSeries solve_artin_schreier(const PadicSeries& s0) {
  PadicSeries s = s0;
  normalize(s);
  if (s.is_zero()) return s0;
  if (s.v <= 0) throw DomainError("solve_artin_schreier: valuation must be positive");
  PadicSeries y = s;
  for (int it = 0; it <= s.end(); ++it) {
    PadicSeries next = series_add(s, series_mul(y, y));
    // Truncate to the precision of s.
    if (next.end() > s.end()) next.c.resize(static_cast<std::size_t>(s.end() - next.v));
    bool same = next.v == y.v && next.c == y.c;
    y = std::move(next);
    if (same) break;
  }
  return y;
}

NonzeroCertificate nonzero_certificate(const PadicSeries& s0) {
  PadicSeries s = s0;
  normalize(s);
  if (s.is_zero() || s.v >= 0) throw DomainError("nonzero_certificate: valuation must be negative");
  if (s.v % 2 != 0) return NonzeroCertificate::OddValuation;
  if (!residue_is_square(*s.place, s.c[0])) return NonzeroCertificate::NonsquareLeading;
  return NonzeroCertificate::None;
}

std::string to_string(NonzeroCertificate c) {
  switch (c) {
    case NonzeroCertificate::OddValuation:
      return "odd-valuation";
    case NonzeroCertificate::NonsquareLeading:
      return "nonsquare-leading";
    case NonzeroCertificate::None:
      return "none";
  }
  return "none";
}

PolarSplit polar_split(const FuncElem& f, const Place& place, const PrecisionPolicy& policy) {
  PolarSplit out;
  if (f.is_zero()) return out;
  const int v = valuation(place, f);
  if (v > 0) return out;
  if (v == 0) {
    out.digit0 = reduce(place, f);
    return out;
  }
  const int need = 1 - v;
  int N = policy.initial;
  while (N < need) {
    N *= 2;
    if (N > policy.ceiling) throw PrecisionError("pole order " + std::to_string(-v) + " exceeds precision ceiling");
  }
  const int x = place.x();
  if (place.is_infinity()) {
    // Polynomial part of f in x, by Euclidean division.
    UPoly q, r;
    UPoly::divrem(UPoly::from_func(FuncElem(f.num()), x), UPoly::from_func(FuncElem(f.den()), x), q, r);
    out.digit0 = q.coeff(0);
    for (int l = 1; l <= -v; ++l) out.polar_digits.push_back(q.coeff(l));
    out.polar = (q + UPoly::constant(out.digit0)).to_func(x);
    return out;
  }
  // f = p^v * unit; digits of the unit up to p^{-v}.
  const FuncElem unit = f * place.p().pow(-v);
  const UPoly a = reduce_mod_power(place, unit, need);
  const auto dig = digits_of(place, a, need);
  out.digit0 = dig.back();
  UPoly low;  // sum_{k < -v} dig_k p^k
  const UPoly p = uniformizer_upoly(place);
  for (int k = need - 2; k >= 0; --k) low = low * p + UPoly::from_func(dig[static_cast<std::size_t>(k)], x);
  for (int l = 1; l <= -v; ++l) out.polar_digits.push_back(dig[static_cast<std::size_t>(-v - l)]);
  out.polar = low.to_func(x) * place.p().pow(v);
  return out;
}

}  // namespace kmk
