#pragma once

#include <memory>
#include <string>
#include <vector>

#include "kmk/completion/residue_field.hpp"

namespace kmk {

// Truncated expansion sum_{k=v}^{v+N-1} c_k pi^k with canonical residue
// representatives as digits.  The zero series has all digits zero.
struct PadicSeries {
  std::shared_ptr<const Place> place;
  int v = 0;
  std::vector<FuncElem> c;  // c[i] is the coefficient of pi^(v+i)

  int precision() const { return static_cast<int>(c.size()); }
  int end() const { return v + precision(); }  // exclusive
  bool is_zero() const;
  FuncElem coeff(int k) const;  // coefficient of pi^k, zero outside the window
  FuncElem to_func() const;     // recombined global element
  std::string to_string() const;
};

struct PrecisionPolicy {
  int initial = 8;
  int ceiling = 256;
};

PadicSeries expand_at(const FuncElem& f, std::shared_ptr<const Place> place, int N);
PadicSeries series_add(const PadicSeries& a, const PadicSeries& b);
PadicSeries series_mul(const PadicSeries& a, const PadicSeries& b);
PadicSeries series_invert(const PadicSeries& s);
PadicSeries solve_artin_schreier(const PadicSeries& s);

enum class NonzeroCertificate { OddValuation, NonsquareLeading, None };
NonzeroCertificate nonzero_certificate(const PadicSeries& s);
std::string to_string(NonzeroCertificate c);

// Digits of f from pi^v through pi^0 inclusive, where v = min(v_p(f), 0);
// uses the precision policy and throws PrecisionError past the ceiling.
struct PolarSplit {
  FuncElem polar;                 // sum_{k<0} c_k pi^k as a global element
  FuncElem digit0;                // c_0
  std::vector<FuncElem> polar_digits;  // polar_digits[l-1] = c_{-l}
};
PolarSplit polar_split(const FuncElem& f, const Place& place, const PrecisionPolicy& policy = {});

}  // namespace kmk
