#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace kmk {

constexpr int kMaxVars = 8;

// Exponent vector packed into two words, 16 bits per variable.  Variables
// 0..3 live in `lo`, 4..7 in `hi`; comparing (hi, lo) gives lex order with
// the highest variable index most significant.  Exponents must stay below
// 2^15 for divides() to be exact.
struct Monomial {
  uint64_t hi = 0;
  uint64_t lo = 0;

  static Monomial var(int v, unsigned e = 1) {
    Monomial m;
    m.set_exp(v, e);
    return m;
  }
  unsigned exp(int v) const {
    const uint64_t w = v < 4 ? lo : hi;
    return static_cast<unsigned>((w >> (16 * (v & 3))) & 0xffffu);
  }
  void set_exp(int v, unsigned e) {
    uint64_t& w = v < 4 ? lo : hi;
    const int sh = 16 * (v & 3);
    w = (w & ~(uint64_t{0xffff} << sh)) | (uint64_t{e} << sh);
  }
  unsigned total_degree() const {
    unsigned s = 0;
    for (int v = 0; v < kMaxVars; ++v) s += exp(v);
    return s;
  }
  bool is_one() const { return hi == 0 && lo == 0; }
  bool divides(const Monomial& o) const {
    constexpr uint64_t H = 0x8000800080008000ull;
    return (((o.hi | H) - hi) & H) == H && (((o.lo | H) - lo) & H) == H;
  }
  Monomial operator*(const Monomial& o) const { return {hi + o.hi, lo + o.lo}; }
  Monomial operator/(const Monomial& o) const { return {hi - o.hi, lo - o.lo}; }
  bool operator==(const Monomial&) const = default;
  std::strong_ordering operator<=>(const Monomial& o) const {
    if (hi != o.hi) return hi <=> o.hi;
    return lo <=> o.lo;
  }
};

Monomial monomial_gcd(const Monomial& a, const Monomial& b);

// Polynomial over GF(2) in up to kMaxVars variables.  Terms are kept strictly
// decreasing, so terms().front() is the lex-leading monomial.
class Poly {
 public:
  Poly() = default;
  explicit Poly(Monomial m) : t_{m} {}
  static Poly one() { return Poly(Monomial{}); }
  static Poly var(int v, unsigned e = 1) { return Poly(Monomial::var(v, e)); }
  // Any order; repeated monomials cancel in pairs.
  static Poly from_terms(std::vector<Monomial> terms);

  const std::vector<Monomial>& terms() const { return t_; }
  std::size_t size() const { return t_.size(); }
  bool is_zero() const { return t_.empty(); }
  bool is_one() const { return t_.size() == 1 && t_[0].is_one(); }
  bool is_monomial() const { return t_.size() == 1; }
  const Monomial& lead() const { return t_.front(); }
  unsigned degree(int v) const;
  unsigned total_degree() const;
  uint32_t var_mask() const;
  bool has_var(int v) const { return (var_mask() >> v) & 1u; }
  Monomial min_exponents() const;

  Poly& operator+=(const Poly& o);
  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a += b; }
  friend Poly operator*(const Poly& a, const Poly& b);
  Poly& operator*=(const Poly& o) { return *this = *this * o; }
  Poly operator*(const Monomial& m) const;
  Poly div_monomial(const Monomial& m) const;
  Poly square() const;
  Poly pow(unsigned e) const;
  Poly derivative(int v) const;
  bool is_square() const;
  Poly sqrt() const;

  std::vector<Poly> coeffs(int v) const;
  static Poly from_coeffs(int v, const std::vector<Poly>& c);
  Poly lead_coeff(int v) const;
  Poly substitute(int v, const Poly& q) const;

  bool operator==(const Poly&) const = default;
  // Graded by total degree, then by term lists.
  bool graded_less(const Poly& o) const;
  bool operator<(const Poly& o) const { return t_ < o.t_; }
  std::size_t hash() const;
  std::string to_string(const std::vector<std::string>& names) const;

 private:
  explicit Poly(std::vector<Monomial> sorted, int) : t_(std::move(sorted)) {}
  std::vector<Monomial> t_;
};

struct PolyHash {
  std::size_t operator()(const Poly& p) const { return p.hash(); }
};

std::optional<Poly> exact_div(const Poly& a, const Poly& b);
// Throws InternalError when b does not divide a.
Poly divexact(const Poly& a, const Poly& b);
// Pseudo-remainder of a by b as polynomials in v.
Poly prem(const Poly& a, const Poly& b, int v);
Poly content(const Poly& a, int v);
Poly gcd(const Poly& a, const Poly& b);

std::string default_var_name(int v);

}  // namespace kmk
