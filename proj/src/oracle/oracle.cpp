#include "kmk/oracle/oracle.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <set>
#include <sstream>
#include <unordered_map>

#include "kmk/errors.hpp"
#include "kmk/field_tower/gf2_linear.hpp"

namespace kmk {

namespace {

struct RowKey {
  uint32_t mask;
  Monomial m;
  bool operator==(const RowKey&) const = default;
};
struct RowKeyHash {
  std::size_t operator()(const RowKey& k) const {
    return std::hash<uint64_t>()(k.m.lo * 0x9E3779B97F4A7C15ull ^ k.m.hi) ^ (std::size_t{k.mask} << 1);
  }
};

// Monomials with every exponent at most `bound`.
void monomials_upto(const std::vector<int>& vars, std::size_t i, unsigned bound, Monomial cur,
                    std::vector<Monomial>& out) {
  if (i == vars.size()) {
    out.push_back(cur);
    return;
  }
  for (unsigned e = 0; e <= bound; ++e) {
    Monomial m = cur;
    m.set_exp(vars[i], e);
    monomials_upto(vars, i + 1, bound, m, out);
  }
}

// v * d/dv of a polynomial.
Poly log_derivative(const Poly& p, int v) {
  std::vector<Monomial> t;
  for (const auto& m : p.terms())
    if (m.exp(v) & 1u) t.push_back(m);
  return Poly::from_terms(std::move(t));
}

struct Column {
  bool is_eta;
  uint32_t mask;
  Monomial m;
  unsigned e;
};

}  // namespace

Poly MonomialWindow::denominator(unsigned e) const {
  if (caps.empty()) return u.pow(e);
  Poly d = Poly::one();
  for (const auto& [f, c] : caps) d *= f.pow(std::min(e, c));
  return d;
}

std::string MonomialWindow::to_string(const std::vector<std::string>& names) const {
  std::ostringstream os;
  os << "degs<=" << degree << " over (" << u.to_string(names) << ")^" << denominator_exponent;
  if (!caps.empty()) {
    os << " capped";
    for (const auto& [f, c] : caps) os << " [" << f.to_string(names) << "]^" << c;
  }
  return os.str();
}

Poly window_denominator(const DiffForm& w, const Tower& tower, const FactorLimits& limits) {
  std::set<Poly> factors;
  for (const auto& [mask, c] : w.terms())
    if (!c.den().is_one())
      for (const auto& [f, e] : factor_bounded(c.den(), limits)) factors.insert(f);
  factors.insert(Poly::var(tower.x()));
  Poly u = Poly::one();
  for (const Poly& f : factors) u *= f;
  return u;
}

std::vector<std::pair<Poly, unsigned>> window_caps(const DiffForm& w, const Tower& tower,
                                                   const FactorLimits& limits) {
  std::map<Poly, unsigned> caps;
  caps[Poly::var(tower.x())] = 1;
  for (const auto& [mask, c] : w.terms())
    if (!c.den().is_one())
      for (const auto& [f, e] : factor_bounded(c.den(), limits)) {
        unsigned& cap = caps[f];
        cap = std::max({cap, 1u, static_cast<unsigned>(e)});
      }
  return {caps.begin(), caps.end()};
}

std::vector<MonomialWindow> default_schedule(const DiffForm& w, const Tower& tower,
                                             const std::vector<unsigned>& degrees, const FactorLimits& limits) {
  const auto caps = window_caps(w, tower, limits);
  Poly u = Poly::one();
  for (const auto& [f, c] : caps) u *= f;
  std::vector<MonomialWindow> out;
  for (unsigned k : degrees) out.push_back({u, k, k, caps});
  return out;
}

std::vector<unsigned> parse_schedule(const std::string& text) {
  std::vector<unsigned> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t pos = 0;
    unsigned long v = 0;
    try {
      v = std::stoul(item, &pos);
    } catch (const std::exception&) {
      throw DomainError("bad window schedule: " + text);
    }
    if (pos != item.size() || v == 0 || v > 64) throw DomainError("bad window schedule: " + text);
    out.push_back(static_cast<unsigned>(v));
  }
  if (out.empty()) throw DomainError("empty window schedule");
  return out;
}

std::optional<Witness> witness_search(const DiffForm& w, const Tower& tower, const MonomialWindow& win) {
  const int m = w.degree();
  const TwoBasis basis = standard_basis(tower);
  const int n = tower.size();
  Witness zero{DiffForm(m, basis), DiffForm(m - 1, basis)};
  if (w.is_zero()) return zero;
  if (w.basis() != basis) throw DomainError("witness_search: form must be over the standard basis");

  // Every image is written over Q = D_C^2.
  const unsigned C = win.denominator_exponent;
  std::vector<Poly> den(C + 1), cof(C + 1);
  for (unsigned e = 0; e <= C; ++e) den[e] = win.denominator(e);
  const Poly Q = den[C].square();
  for (unsigned e = 0; e <= C; ++e) cof[e] = *exact_div(den[C], den[e]);

  // Target numerators over Q.
  std::unordered_map<RowKey, std::size_t, RowKeyHash> rows;
  auto row_of = [&](uint32_t mask, const Monomial& mon) {
    auto [it, fresh] = rows.try_emplace(RowKey{mask, mon}, rows.size());
    return it->second;
  };
  std::vector<std::size_t> target;
  for (const auto& [mask, c] : w.terms()) {
    auto q = exact_div(c.num() * Q, c.den());
    if (!q) return std::nullopt;
    for (const auto& mon : q->terms()) target.push_back(row_of(mask, mon));
  }

  std::vector<Monomial> mons;
  monomials_upto(tower.order, 0, win.degree, Monomial{}, mons);
  std::vector<Column> cols;
  std::vector<std::vector<std::size_t>> images;
  const uint32_t full = (1u << n) - 1;
  for (uint32_t mask = 0; mask <= full; ++mask) {
    const int pc = std::popcount(mask);
    if (pc != m && pc != m - 1) continue;
    for (unsigned e = 0; e <= C; ++e)
      for (const auto& mon : mons) {
        const Poly M(mon);
        std::vector<std::size_t> img;
        if (pc == m) {
          // (a^2 + a) for a = M / D_e
          const Poly num = (M.square() + M * den[e]) * cof[e].square();
          for (const auto& t : num.terms()) img.push_back(row_of(mask, t));
          cols.push_back({true, mask, mon, e});
        } else {
          for (int k = 0; k < n; ++k) {
            if ((mask >> k) & 1u) continue;
            const int v = tower.order[static_cast<std::size_t>(k)];
            const Poly num =
                (log_derivative(M, v) * den[e] + M * log_derivative(den[e], v)) * cof[e].square();
            for (const auto& t : num.terms()) img.push_back(row_of(mask | (1u << k), t));
          }
          cols.push_back({false, mask, mon, e});
        }
        images.push_back(std::move(img));
      }
  }

  const auto chosen = gf2_solve(images, target, rows.size());
  if (!chosen) return std::nullopt;

  Witness out = zero;
  for (std::size_t j : *chosen) {
    const FuncElem a(Poly(cols[j].m), den[cols[j].e]);
    (cols[j].is_eta ? out.eta : out.xi).add_term(cols[j].mask, a);
  }
  DiffForm check = artin_schreier_image(out.eta);
  if (m >= 1) check += exterior_d(out.xi, tower);
  if (!(check == w)) throw InternalError("witness_search: solution fails exact verification");
  return out;
}

std::string to_string(CrossVerdict v) {
  switch (v) {
    case CrossVerdict::AgreeZero:
      return "AGREE-ZERO";
    case CrossVerdict::AgreeNonzero:
      return "AGREE-NONZERO";
    case CrossVerdict::ZeroUnwitnessed:
      return "ZERO-UNWITNESSED";
    case CrossVerdict::Conflict:
      return "CONFLICT";
  }
  return "CONFLICT";
}

CrossReport cross_check(const DiffForm& w, const Tower& tower, const std::vector<MonomialWindow>& schedule,
                        const DecideOptions& opts) {
  CrossReport rep;
  rep.decision = decide_zero(w, tower, opts);
  for (std::size_t i = 0; i < schedule.size() && !rep.witness; ++i) {
    try {
      rep.witness = witness_search(w, tower, schedule[i]);
    } catch (const InternalError& e) {
      rep.verdict = CrossVerdict::Conflict;
      rep.note = e.what();
      return rep;
    }
    if (rep.witness) rep.window = static_cast<int>(i);
  }
  if (rep.decision.zero) {
    rep.verdict = rep.witness ? CrossVerdict::AgreeZero : CrossVerdict::ZeroUnwitnessed;
    if (!rep.witness) rep.note = "no witness inside the scheduled windows";
  } else if (rep.witness) {
    rep.verdict = CrossVerdict::Conflict;
    rep.note = "decided nonzero but a witness exists";
  } else {
    rep.verdict = CrossVerdict::AgreeNonzero;
    rep.note = "semi-confirmation: the oracle cannot prove nonzeroness";
  }
  return rep;
}

}  // namespace kmk
