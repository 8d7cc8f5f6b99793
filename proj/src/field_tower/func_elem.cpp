#include "kmk/field_tower/func_elem.hpp"

#include "kmk/errors.hpp"

namespace kmk {

FuncElem::FuncElem(Poly n) : num_(std::move(n)), den_(Poly::one()) {}

FuncElem::FuncElem(Poly n, Poly d) {
  if (d.is_zero()) throw DomainError("rational function with zero denominator");
  if (n.is_zero()) {
    den_ = Poly::one();
    return;
  }
  if (d.is_one()) {
    num_ = std::move(n);
    den_ = std::move(d);
    return;
  }
  const Poly g = gcd(n, d);
  if (g.is_one()) {
    num_ = std::move(n);
    den_ = std::move(d);
  } else {
    num_ = divexact(n, g);
    den_ = divexact(d, g);
  }
}

FuncElem FuncElem::unreduced(Poly n, Poly d) {
  FuncElem r;
  if (n.is_zero()) return r;
  r.num_ = std::move(n);
  r.den_ = std::move(d);
  return r;
}

FuncElem& FuncElem::operator+=(const FuncElem& o) {
  if (o.is_zero()) return *this;
  if (is_zero()) return *this = o;
  if (den_ == o.den_) {
    if (den_.is_one()) {
      num_ += o.num_;
      return *this;
    }
    return *this = FuncElem(num_ + o.num_, den_);
  }
  if (den_.is_one()) {
    num_ = num_ * o.den_ + o.num_;
    den_ = o.den_;
    return *this;
  }
  if (o.den_.is_one()) {
    num_ += o.num_ * den_;
    return *this;
  }
  const Poly g = gcd(den_, o.den_);
  if (g.is_one()) {
    Poly n = num_ * o.den_ + o.num_ * den_;
    Poly d = den_ * o.den_;
    return *this = FuncElem::unreduced(std::move(n), std::move(d));
  }
  const Poly b1 = divexact(den_, g), d1 = divexact(o.den_, g);
  Poly n = num_ * d1 + o.num_ * b1;
  if (n.is_zero()) return *this = FuncElem();
  const Poly h = gcd(n, g);
  Poly d = b1 * o.den_;
  if (!h.is_one()) {
    n = divexact(n, h);
    d = divexact(d, h);
  }
  return *this = FuncElem::unreduced(std::move(n), std::move(d));
}

FuncElem operator*(const FuncElem& a, const FuncElem& b) {
  if (a.is_zero() || b.is_zero()) return FuncElem();
  if (a.is_one()) return b;
  if (b.is_one()) return a;
  Poly an = a.num_, ad = a.den_, bn = b.num_, bd = b.den_;
  if (!bd.is_one()) {
    const Poly g = gcd(an, bd);
    if (!g.is_one()) {
      an = divexact(an, g);
      bd = divexact(bd, g);
    }
  }
  if (!ad.is_one()) {
    const Poly g = gcd(bn, ad);
    if (!g.is_one()) {
      bn = divexact(bn, g);
      ad = divexact(ad, g);
    }
  }
  return FuncElem::unreduced(an * bn, ad * bd);
}

FuncElem FuncElem::inverse() const {
  if (is_zero()) throw DomainError("inverse of zero");
  return FuncElem::unreduced(den_, num_);
}

FuncElem operator/(const FuncElem& a, const FuncElem& b) { return a * b.inverse(); }

FuncElem FuncElem::pow(int e) const {
  if (e < 0) return inverse().pow(-e);
  return FuncElem::unreduced(num_.pow(static_cast<unsigned>(e)), den_.pow(static_cast<unsigned>(e)));
}

FuncElem FuncElem::derivative(int v) const {
  if (den_.is_one()) return FuncElem(num_.derivative(v));
  Poly n = num_.derivative(v) * den_ + num_ * den_.derivative(v);
  return FuncElem(std::move(n), den_.square());
}

FuncElem FuncElem::substitute(int v, const FuncElem& q) const {
  if (!has_var(v)) return *this;
  std::vector<std::optional<FuncElem>> vals(kMaxVars);
  vals[static_cast<std::size_t>(v)] = q;
  return evaluate(num_, vals) / evaluate(den_, vals);
}

std::string FuncElem::to_string(const std::vector<std::string>& names) const {
  auto wrap = [&](const Poly& p) {
    std::string s = p.to_string(names);
    return p.size() > 1 ? "(" + s + ")" : s;
  };
  if (den_.is_one()) return num_.to_string(names);
  return wrap(num_) + "/" + wrap(den_);
}

FuncElem evaluate(const Poly& p, const std::vector<std::optional<FuncElem>>& values) {
  // Substitute one variable at a time via Horner in that variable.
  int target = -1;
  for (int v = 0; v < kMaxVars; ++v)
    if (static_cast<std::size_t>(v) < values.size() && values[static_cast<std::size_t>(v)] && p.has_var(v)) {
      target = v;
      break;
    }
  if (target < 0) return FuncElem(p);
  const auto c = p.coeffs(target);
  const FuncElem& q = *values[static_cast<std::size_t>(target)];
  FuncElem r = evaluate(c.back(), values);
  for (std::size_t e = c.size() - 1; e-- > 0;) r = r * q + evaluate(c[e], values);
  return r;
}

}  // namespace kmk
