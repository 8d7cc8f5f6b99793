#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace kmk {

// Dense univariate polynomial over GF(2), one bit per coefficient.
class GF2X {
 public:
  GF2X() = default;
  static GF2X one() { return monomial(0); }
  static GF2X monomial(unsigned e);

  int degree() const;
  bool is_zero() const { return w_.empty(); }
  bool is_one() const { return w_.size() == 1 && w_[0] == 1; }
  bool coeff(unsigned i) const {
    return i / 64 < w_.size() && ((w_[i / 64] >> (i % 64)) & 1u);
  }
  void flip(unsigned i);

  GF2X& operator+=(const GF2X& o);
  friend GF2X operator+(GF2X a, const GF2X& b) { return a += b; }
  friend GF2X operator*(const GF2X& a, const GF2X& b);
  static void divrem(const GF2X& a, const GF2X& b, GF2X& q, GF2X& r);
  friend GF2X operator%(const GF2X& a, const GF2X& b);
  friend GF2X operator/(const GF2X& a, const GF2X& b);
  GF2X square() const;
  GF2X derivative() const;
  GF2X sqrt() const;  // exact only for squares
  GF2X shifted(unsigned k) const;

  bool operator==(const GF2X&) const = default;
  bool operator<(const GF2X& o) const;
  std::vector<uint64_t>& words() { return w_; }
  const std::vector<uint64_t>& words() const { return w_; }
  void normalize();
  std::string to_string(const std::string& var = "z") const;

 private:
  std::vector<uint64_t> w_;
};

GF2X gcd(GF2X a, GF2X b);
GF2X mulmod(const GF2X& a, const GF2X& b, const GF2X& m);
// Extended gcd: returns g and s with s*a = g (mod b).
GF2X xgcd_inverse(const GF2X& a, const GF2X& m);

// Complete factorization into irreducibles with multiplicities, sorted by
// degree then value.  Deterministic.
std::vector<std::pair<GF2X, int>> factor(const GF2X& f);

// Absolute trace GF(2)[z]/(m) -> GF(2) of a; m irreducible.
bool trace_gf2(const GF2X& a, const GF2X& m);

}  // namespace kmk
