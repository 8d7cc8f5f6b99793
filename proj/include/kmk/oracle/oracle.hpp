#pragma once

#include <optional>
#include <string>
#include <vector>

#include "kmk/cohomology/decide.hpp"

namespace kmk {

// Span of M / D_e with every variable degree of M at most `degree` and
// 0 <= e <= denominator_exponent.  D_e = u^e, unless `caps` lists the
// factors f of u with a cap c_f, in which case D_e = prod f^min(e, c_f).
struct MonomialWindow {
  Poly u;
  unsigned degree = 2;
  unsigned denominator_exponent = 2;
  std::vector<std::pair<Poly, unsigned>> caps;
  Poly denominator(unsigned e) const;
  std::string to_string(const std::vector<std::string>& names) const;
};

// u = product of the irreducible factors of all denominators of w, times x.
Poly window_denominator(const DiffForm& w, const Tower& tower, const FactorLimits& limits = {});
// The factors of window_denominator, each capped at its largest multiplicity
// in a denominator of w (at least 1).
std::vector<std::pair<Poly, unsigned>> window_caps(const DiffForm& w, const Tower& tower,
                                                   const FactorLimits& limits = {});
std::vector<MonomialWindow> default_schedule(const DiffForm& w, const Tower& tower,
                                             const std::vector<unsigned>& degrees = {2, 4, 8},
                                             const FactorLimits& limits = {});
std::vector<unsigned> parse_schedule(const std::string& text);  // "2,4,8"

struct Witness {
  DiffForm eta;  // degree m
  DiffForm xi;   // degree m - 1
};

// Searches eta, xi in the window with P(eta) + d(xi) = w.  A returned witness
// has been checked by direct arithmetic.
std::optional<Witness> witness_search(const DiffForm& w, const Tower& tower, const MonomialWindow& window);

enum class CrossVerdict { AgreeZero, AgreeNonzero, ZeroUnwitnessed, Conflict };
std::string to_string(CrossVerdict v);

struct CrossReport {
  CrossVerdict verdict = CrossVerdict::Conflict;
  ZeroVerdict decision;
  std::optional<Witness> witness;
  int window = -1;  // index of the window that produced the witness
  std::string note;
};

CrossReport cross_check(const DiffForm& w, const Tower& tower, const std::vector<MonomialWindow>& schedule,
                        const DecideOptions& opts = {});

}  // namespace kmk
