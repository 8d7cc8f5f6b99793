#include <map>
#include <set>
#include <unordered_map>

#include "kmk/cohomology/decide.hpp"
#include "kmk/completion/residue_field.hpp"
#include "kmk/errors.hpp"
#include "kmk/field_tower/factor.hpp"
#include "kmk/field_tower/gf2_linear.hpp"

namespace kmk {

namespace {

using Image = std::map<uint32_t, FuncElem>;

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

void add_to(Image& img, uint32_t mask, const FuncElem& a) {
  if (a.is_zero()) return;
  auto [it, fresh] = img.try_emplace(mask, a);
  if (fresh) return;
  it->second += a;
  if (it->second.is_zero()) img.erase(it);
}

}  // namespace

bool residue_witness(const DiffForm& w, const Place& place, unsigned bound) {
  if (w.is_zero()) return true;
  if (place.is_infinity()) throw DomainError("residue_witness: finite places only");
  const TwoBasis& R = place.residue_basis();
  const int m = w.degree();
  const int n = static_cast<int>(R.size());
  const Tower& tower = place.tower();
  const int e = place.eliminated_var();
  const FuncElem P(place.P());

  // Derivation along b_k on the residue field, in log form:
  // b_k (d/dv_k + (dP/dv_k / dP/de) d/de).
  const FuncElem inv_pe = residue_inverse(place, reduce(place, P.derivative(e)));
  std::vector<FuncElem> ratio(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) {
    const Label& l = R[static_cast<std::size_t>(k)];
    if (l.kind != Label::Kind::Var) throw InternalError("residue_witness: residue basis label is not a variable");
    ratio[static_cast<std::size_t>(k)] = reduce(place, P.derivative(l.var) * inv_pe);
  }
  auto log_partial = [&](const FuncElem& g, int k) {
    const Label& l = R[static_cast<std::size_t>(k)];
    return reduce(place, l.value * (g.derivative(l.var) + ratio[static_cast<std::size_t>(k)] * g.derivative(e)));
  };

  std::vector<Monomial> mons;
  monomials_upto(tower.order, 0, bound, Monomial{}, mons);
  // Denominators: powers of the radical of the target's denominators.
  Poly g = Poly::one();
  {
    std::set<Poly> fs;
    for (const auto& [mask, c] : w.terms()) {
      const FuncElem r = reduce(place, c);
      if (!r.den().is_one())
        for (const auto& [f, mult] : factor_bounded(r.den())) fs.insert(f);
    }
    for (const Poly& f : fs) g *= f;
  }
  std::vector<FuncElem> dens{FuncElem::one()};
  if (!g.is_one())
    for (unsigned k = 1; k <= bound; ++k) dens.push_back(dens.back() / FuncElem(g));
  std::vector<Image> images;
  std::vector<std::pair<uint32_t, FuncElem>> cols;  // mask, coefficient; eta iff popcount == m
  for (uint32_t mask = 0; mask < (1u << n); ++mask) {
    const int pc = std::popcount(mask);
    if (pc != m && pc != m - 1) continue;
    for (const auto& den : dens)
      for (const auto& mon : mons) {
        const FuncElem a = reduce(place, FuncElem(Poly(mon)) * den);
        if (a.is_zero()) continue;
        Image img;
        if (pc == m) {
          add_to(img, mask, reduce(place, a * a) + a);
        } else {
          for (int k = 0; k < n; ++k)
            if (!((mask >> k) & 1u)) add_to(img, mask | (1u << k), log_partial(a, k));
        }
        if (img.empty()) continue;
        images.push_back(std::move(img));
        cols.emplace_back(mask, a);
      }
  }

  // Common denominator, then one row per (mask, numerator monomial).
  Poly D = Poly::one();
  auto absorb = [&](const FuncElem& f) {
    if (!f.den().is_one()) D = D * exact_div(f.den(), gcd(D, f.den())).value();
  };
  for (const auto& [mask, c] : w.terms()) absorb(reduce(place, c));
  for (const auto& img : images)
    for (const auto& [mask, c] : img) absorb(c);
  struct Key {
    uint32_t mask;
    Monomial mon;
    bool operator<(const Key& o) const { return mask != o.mask ? mask < o.mask : mon < o.mon; }
  };
  std::map<Key, std::size_t> rows;
  auto rows_of = [&](const Image& img) {
    std::vector<std::size_t> out;
    for (const auto& [mask, c] : img) {
      const Poly num = c.num() * exact_div(D, c.den()).value();
      for (const auto& mon : num.terms()) out.push_back(rows.try_emplace(Key{mask, mon}, rows.size()).first->second);
    }
    return out;
  };
  std::vector<std::vector<std::size_t>> columns;
  for (const auto& img : images) columns.push_back(rows_of(img));
  Image target;
  for (const auto& [mask, c] : w.terms()) add_to(target, mask, reduce(place, c));
  const auto target_rows = rows_of(target);
  const auto chosen = gf2_solve(columns, target_rows, rows.size());
  if (!chosen) return false;

  Image check;
  for (std::size_t j : *chosen)
    for (const auto& [mask, c] : images[j]) add_to(check, mask, c);
  if (check != target) throw InternalError("residue_witness: solution fails exact verification");
  return true;
}

}  // namespace kmk
