#pragma once

#include <vector>

#include "kmk/field_tower/func_elem.hpp"

namespace kmk {

// Polynomial in one variable x with coefficients in GF(2)(other variables).
class UPoly {
 public:
  UPoly() = default;
  explicit UPoly(std::vector<FuncElem> c) : c_(std::move(c)) { trim(); }
  static UPoly constant(const FuncElem& c) { return UPoly({c}); }
  static UPoly monomial(unsigned e);
  // f must have an x-free denominator.
  static UPoly from_func(const FuncElem& f, int x);
  FuncElem to_func(int x) const;

  int deg() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  const FuncElem& lead() const { return c_.back(); }
  const std::vector<FuncElem>& coeffs() const { return c_; }
  FuncElem coeff(int i) const { return i >= 0 && i <= deg() ? c_[static_cast<std::size_t>(i)] : FuncElem(); }

  UPoly& operator+=(const UPoly& o);
  friend UPoly operator+(UPoly a, const UPoly& b) { return a += b; }
  friend UPoly operator*(const UPoly& a, const UPoly& b);
  UPoly scaled(const FuncElem& s) const;
  UPoly shifted(unsigned k) const;
  static void divrem(const UPoly& a, const UPoly& b, UPoly& q, UPoly& r);
  UPoly mod(const UPoly& m) const;
  UPoly monic() const;
  bool operator==(const UPoly&) const = default;

 private:
  void trim();
  std::vector<FuncElem> c_;
};

UPoly mulmod(const UPoly& a, const UPoly& b, const UPoly& m);
// Inverse of a modulo m (m monic); throws DomainError if not coprime.
UPoly inverse_mod(const UPoly& a, const UPoly& m);

}  // namespace kmk
