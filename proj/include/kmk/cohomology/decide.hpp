#pragma once

#include <optional>
#include <string>
#include <vector>

#include "kmk/cohomology/normal_form.hpp"
#include "kmk/field_tower/factor.hpp"

namespace kmk {

struct DecideOptions {
  PrecisionPolicy precision;
  FactorLimits factor;
};

struct ZeroVerdict {
  bool zero = false;
  // zero-representative | base-field | nonzero-residue | nonzero-infinity
  std::string reason;
  std::string place;  // where the certificate lives
  std::optional<W1NormalForm> certificate;
  std::vector<std::string> trace;
};

// Decides whether [w] = 0 in H_2^{m+1} of the tower's field, recursing on the
// last variable.  Retries other orientations when a residue field has no
// rational parametrization; throws UnsupportedError if none works.
ZeroVerdict decide_zero(const DiffForm& w, const Tower& tower, const DecideOptions& opts = {});
inline ZeroVerdict decide_zero(const CohClass& c, const DecideOptions& opts = {}) {
  return decide_zero(c.rep, c.tower, opts);
}
bool classes_equal(const CohClass& a, const CohClass& b, const DecideOptions& opts = {});

// Whether a residue-basis form is zero in the cohomology of the residue field.
bool decide_residue_zero(const DiffForm& w, const Place& place, const DecideOptions& opts = {});
// Searches eta, xi over the residue field with polynomial coefficients of
// exponents <= bound and P(eta) + d(xi) = w.  Only certifies zero.
bool residue_witness(const DiffForm& w, const Place& place, unsigned bound);
bool w1_equal(const W1NormalForm& a, const W1NormalForm& b, const DecideOptions& opts = {});

// GF(2)(vars)/(P) ~ GF(2)(vars \ {var}) through var -> image.
struct Parametrization {
  int var = -1;
  FuncElem image;
  Tower target;
};
// Prefers the tower's x, then base variables from the last.
std::optional<Parametrization> find_parametrization(const Poly& P, const Tower& tower);
// Applies the substitution to coefficients and log arguments (labels carry
// their values); the result is over the standard basis of param.target.
DiffForm substitute_form(const DiffForm& w, const Parametrization& param);
// Same form over the standard basis of a reordering of its tower.
DiffForm transfer(const DiffForm& w, const Tower& to);

bool is_norm(const DiffForm& w, const Poly& p, const Tower& tower, const DecideOptions& opts = {});
// Throws UnsupportedError("unsupported-quotient ...") without a parametrization.
bool hyperbolic_over_quotient(const DiffForm& w, const Poly& p, const Tower& tower,
                              const DecideOptions& opts = {});

}  // namespace kmk
