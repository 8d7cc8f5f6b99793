#pragma once

#include <string>
#include <vector>

#include "kmk/field_tower/poly.hpp"

namespace kmk {

// Element of GF(2)(v_0, ..., v_7) kept as a reduced fraction num/den.
class FuncElem {
 public:
  FuncElem() : den_(Poly::one()) {}
  FuncElem(Poly n);  // NOLINT(google-explicit-constructor)
  FuncElem(Poly n, Poly d);
  static FuncElem one() { return FuncElem(Poly::one()); }
  static FuncElem var(int v) { return FuncElem(Poly::var(v)); }
  static FuncElem unreduced(Poly n, Poly d);  // caller guarantees gcd(n, d) = 1

  const Poly& num() const { return num_; }
  const Poly& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }
  bool is_one() const { return num_.is_one() && den_.is_one(); }
  bool is_poly() const { return den_.is_one(); }
  uint32_t var_mask() const { return num_.var_mask() | den_.var_mask(); }
  bool has_var(int v) const { return (var_mask() >> v) & 1u; }

  FuncElem& operator+=(const FuncElem& o);
  friend FuncElem operator+(FuncElem a, const FuncElem& b) { return a += b; }
  friend FuncElem operator-(FuncElem a, const FuncElem& b) { return a += b; }
  friend FuncElem operator*(const FuncElem& a, const FuncElem& b);
  friend FuncElem operator/(const FuncElem& a, const FuncElem& b);
  FuncElem& operator*=(const FuncElem& o) { return *this = *this * o; }
  FuncElem inverse() const;
  FuncElem square() const { return FuncElem::unreduced(num_.square(), den_.square()); }
  FuncElem pow(int e) const;
  FuncElem derivative(int v) const;
  FuncElem substitute(int v, const FuncElem& q) const;

  bool operator==(const FuncElem&) const = default;
  bool operator<(const FuncElem& o) const {
    return num_ == o.num_ ? den_ < o.den_ : num_ < o.num_;
  }
  std::size_t hash() const { return num_.hash() * 31u + den_.hash(); }
  std::string to_string(const std::vector<std::string>& names) const;

 private:
  Poly num_, den_;
};

// Evaluates p with each variable v replaced by values[v] (identity when
// values[v] is empty).
FuncElem evaluate(const Poly& p, const std::vector<std::optional<FuncElem>>& values);

}  // namespace kmk

namespace kmk {
inline FuncElem partial_derivative(const FuncElem& f, int var) { return f.derivative(var); }
}  // namespace kmk
