#include "kmk/cohomology/decide.hpp"

#include <set>

#include "kmk/errors.hpp"
#include "kmk/field_tower/gf2x.hpp"

namespace kmk {

namespace {

GF2X to_gf2x(const Poly& p, int x) {
  GF2X g;
  for (const auto& m : p.terms()) g.flip(m.exp(x));
  g.normalize();
  return g;
}

std::string indent(int depth) { return std::string(static_cast<std::size_t>(2 * depth), ' '); }

ZeroVerdict decide_oriented(const DiffForm& w, const Tower& tower, const DecideOptions& opts, int depth);

ZeroVerdict decide_any(const DiffForm& w, const Tower& tower, const DecideOptions& opts, int depth) {
  try {
    return decide_oriented(w, tower, opts, depth);
  } catch (const UnsupportedError&) {
    for (int i = tower.size() - 2; i >= 0; --i) {
      const Tower t = tower.reoriented(tower.order[static_cast<std::size_t>(i)]);
      try {
        ZeroVerdict v = decide_oriented(transfer(w, t), t, opts, depth);
        v.trace.insert(v.trace.begin(), indent(depth) + "reoriented to " + t.to_string());
        return v;
      } catch (const UnsupportedError&) {
      }
    }
    throw;
  }
}

constexpr unsigned kResidueWitnessBound = 3;

bool residue_zero(const DiffForm& w, const Place& place, const DecideOptions& opts, int depth) {
  if (w.is_zero()) return true;
  const Tower& tower = place.tower();
  if (place.is_infinity()) {
    const Tower base = tower.base();
    return decide_any(w.rebased(standard_basis(base)), base, opts, depth).zero;
  }
  if (tower.size() == 1) {
    // GF(2)[x]/(P) is finite: H^1 is detected by the trace, higher groups vanish.
    if (w.degree() != 0) return true;
    const int x = tower.x();
    const FuncElem c = w.coeff(0);
    if (!c.is_poly()) throw InternalError("residue over a finite field with a denominator");
    return !trace_gf2(to_gf2x(c.num(), x), to_gf2x(place.P(), x));
  }
  auto param = find_parametrization(place.P(), tower);
  if (!param) {
    // No rational model: zero can still be certified by a bounded witness.
    for (unsigned bound = 1; bound <= kResidueWitnessBound; ++bound)
      if (residue_witness(w, place, bound)) return true;
    throw UnsupportedError("unsupported residue field at " + place.to_string());
  }
  return decide_any(substitute_form(w, *param), param->target, opts, depth).zero;
}

ZeroVerdict decide_oriented(const DiffForm& w, const Tower& tower, const DecideOptions& opts, int depth) {
  ZeroVerdict out;
  const std::string pad = indent(depth);
  if (w.is_zero()) {
    out.zero = true;
    out.reason = "zero-representative";
    out.trace.push_back(pad + "zero representative over (" + tower.to_string() + ")");
    return out;
  }
  if (tower.size() == 0) {
    // Only m = 0 survives over GF(2), and GF(2)/P(GF(2)) = GF(2).
    out.zero = false;
    out.reason = "base-field";
    out.trace.push_back(pad + "nonzero constant over GF(2)");
    return out;
  }
  const int x = tower.x();
  const uint32_t xbit = 1u << (tower.size() - 1);
  std::set<Poly> candidates;
  bool has_x_label = false;
  for (const auto& [mask, c] : w.terms()) {
    if (mask & xbit) has_x_label = true;
    if (!c.den().has_var(x)) continue;
    for (const auto& [f, e] : place_factors(c.den(), x, opts.factor)) candidates.insert(f);
  }
  if (has_x_label) candidates.insert(Poly::var(x));

  for (const Poly& P : candidates) {
    auto place = make_place(tower, P);
    W1NormalForm nf = residue(w, tower, place, opts.precision);
    const std::string name = place->to_string();
    bool nonzero = !nf.psi.empty();
    if (!nonzero && !nf.phi2.is_zero()) nonzero = !residue_zero(nf.phi2, *place, opts, depth + 1);
    out.trace.push_back(pad + "residue at " + name + (nonzero ? ": nonzero" : ": zero"));
    if (nonzero) {
      out.zero = false;
      out.reason = "nonzero-residue";
      out.place = name;
      out.certificate = std::move(nf);
      return out;
    }
  }

  auto inf = make_infinity(tower);
  LocalDecomposition dec = local_normal_form(w, tower, inf, opts.precision);
  if (!dec.psi.empty()) {
    out.trace.push_back(pad + "residue at infinity: nonzero");
    out.zero = false;
    out.reason = "nonzero-infinity";
    out.place = inf->to_string();
    out.certificate = W1NormalForm{inf, dec.degree, dec.psi, DiffForm(dec.phi2.degree(), dec.phi2.basis())};
    return out;
  }
  const Tower base = tower.base();
  const DiffForm alpha = chi(dec).rebased(standard_basis(base));
  out.trace.push_back(pad + "all residues vanish; recursing on " + alpha.to_string(tower.names) + " over (" +
                      base.to_string() + ")");
  ZeroVerdict sub = decide_any(alpha, base, opts, depth + 1);
  out.zero = sub.zero;
  out.reason = sub.reason;
  out.place = sub.place;
  out.certificate = std::move(sub.certificate);
  out.trace.insert(out.trace.end(), sub.trace.begin(), sub.trace.end());
  return out;
}

}  // namespace

ZeroVerdict decide_zero(const DiffForm& w, const Tower& tower, const DecideOptions& opts) {
  if (!w.is_zero() && w.basis() != standard_basis(tower))
    throw DomainError("decide_zero: form must be over the standard basis of the tower");
  return decide_any(w, tower, opts, 0);
}

bool classes_equal(const CohClass& a, const CohClass& b, const DecideOptions& opts) {
  if (!(a.tower == b.tower)) throw DomainError("classes_equal: different towers");
  if (a.rep == b.rep) return true;
  return decide_zero(a.rep - b.rep, a.tower, opts).zero;
}

bool decide_residue_zero(const DiffForm& w, const Place& place, const DecideOptions& opts) {
  return residue_zero(w, place, opts, 0);
}

bool w1_equal(const W1NormalForm& a, const W1NormalForm& b, const DecideOptions& opts) {
  if (!(*a.place == *b.place) || a.degree != b.degree || a.psi != b.psi) return false;
  if (a.phi2 == b.phi2) return true;
  return decide_residue_zero(a.phi2 - b.phi2, *a.place, opts);
}

std::optional<Parametrization> find_parametrization(const Poly& P, const Tower& tower) {
  std::vector<int> order(tower.order.rbegin(), tower.order.rend());
  for (int y : order) {
    if (P.degree(y) != 1) continue;
    const auto c = P.coeffs(y);
    Parametrization out;
    out.var = y;
    out.image = FuncElem(c[0], c[1]);
    out.target = tower.without(y);
    return out;
  }
  return std::nullopt;
}

DiffForm substitute_form(const DiffForm& w, const Parametrization& param) {
  std::vector<FormTerm> terms;
  for (const auto& [mask, c] : w.terms()) {
    FormTerm t{c.substitute(param.var, param.image), {}};
    for (std::size_t k = 0; k < w.basis().size(); ++k)
      if ((mask >> k) & 1u) {
        FuncElem v = w.basis()[k].value.substitute(param.var, param.image);
        if (v.is_zero()) throw InternalError("substitute_form: log argument maps to zero");
        t.logs.push_back(std::move(v));
      }
    terms.push_back(std::move(t));
  }
  if (terms.empty()) return DiffForm(w.degree(), standard_basis(param.target));
  return make_form(param.target, terms, w.degree());
}

DiffForm transfer(const DiffForm& w, const Tower& to) {
  DiffForm out(w.degree(), standard_basis(to));
  for (const auto& [mask, c] : w.terms()) {
    uint32_t m = 0;
    for (std::size_t k = 0; k < w.basis().size(); ++k)
      if ((mask >> k) & 1u) {
        const int pos = to.position(w.basis()[k].var);
        if (pos < 0) throw DomainError("transfer: variable missing from the target tower");
        m |= 1u << pos;
      }
    out.add_term(m, c);
  }
  return out;
}

bool is_norm(const DiffForm& w, const Poly& p, const Tower& tower, const DecideOptions& opts) {
  if (p.is_zero() || !is_irreducible(p, opts.factor)) throw DomainError("is_norm: p must be irreducible");
  const DiffForm W = transfer(w, tower);
  const int x = tower.x();
  const uint32_t xbit = 1u << (tower.size() - 1);
  for (const auto& [mask, c] : W.terms())
    if ((mask & xbit) || c.has_var(x)) throw DomainError("is_norm: w must not involve x");
  return decide_zero(wedge(W, dlog(tower, FuncElem(p))), tower, opts).zero;
}

bool hyperbolic_over_quotient(const DiffForm& w, const Poly& p, const Tower& tower, const DecideOptions& opts) {
  if (p.is_zero() || !is_irreducible(p, opts.factor))
    throw DomainError("hyperbolic_over_quotient: p must be irreducible");
  auto param = find_parametrization(p, tower);
  if (!param) throw UnsupportedError("unsupported-quotient: no variable occurs linearly in the polynomial");
  return decide_zero(substitute_form(transfer(w, tower), *param), param->target, opts).zero;
}

}  // namespace kmk
