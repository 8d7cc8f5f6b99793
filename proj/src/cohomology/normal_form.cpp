#include "kmk/cohomology/normal_form.hpp"

#include <bit>
#include <deque>

#include "kmk/errors.hpp"

namespace kmk {

std::shared_ptr<const Place> make_place(const Tower& tower, const Poly& P) {
  return std::make_shared<const Place>(Place::finite(tower, P));
}

std::shared_ptr<const Place> make_infinity(const Tower& tower) {
  return std::make_shared<const Place>(Place::infinity(tower));
}

std::vector<uint32_t> rewrite_trailing(uint32_t I, uint32_t J) {
  if (J == 0 || (J ^ I) > I) return {I};
  if ((J & ~I) == 0) return {};
  const uint32_t top = std::bit_floor(J & I);
  std::vector<uint32_t> out;
  for (uint32_t rest = J & ~I; rest; rest &= rest - 1) {
    const uint32_t k = rest & (~rest + 1);
    const uint32_t Ip = (I & ~top) | k;
    if ((Ip ^ J) <= Ip) throw InternalError("rewrite_trailing: output not in shape");
    out.push_back(Ip);
  }
  return out;
}

namespace {

void add_digits(std::vector<FuncElem>& acc, const std::vector<FuncElem>& d) {
  if (acc.size() < d.size()) acc.resize(d.size());
  for (std::size_t i = 0; i < d.size(); ++i) acc[i] += d[i];
}

void trim(PsiTable& psi) {
  for (auto it = psi.begin(); it != psi.end();) {
    auto& v = it->second;
    while (!v.empty() && v.back().is_zero()) v.pop_back();
    if (v.empty())
      it = psi.erase(it);
    else
      ++it;
  }
}

}  // namespace

LocalDecomposition local_normal_form(const DiffForm& w, const Tower& tower, std::shared_ptr<const Place> place,
                                     const PrecisionPolicy& policy) {
  const Place& pl = *place;
  if (!(pl.tower() == tower)) throw DomainError("local_normal_form: place belongs to another tower");
  const int m = w.degree();
  const TwoBasis& C = pl.completion_basis();
  const uint32_t pi = pl.pi_bit();
  LocalDecomposition out;
  out.place = place;
  out.degree = m;
  out.phi1 = DiffForm(m, pl.residue_basis());
  out.phi2 = DiffForm(m - 1, pl.residue_basis());

  const BasisChange bc(tower, C);
  const DiffForm local = bc.from_standard(w);

  auto contribute = [&](uint32_t I, const FuncElem& c) {
    if (c.is_zero()) return;
    if (I & pi)
      out.phi2.add_term(I & ~pi, c);
    else
      out.phi1.add_term(I, c);
  };

  std::deque<std::pair<uint32_t, FuncElem>> work;
  for (const auto& [I, a] : local.terms()) work.emplace_back(I, a);
  while (!work.empty()) {
    auto [I, s] = std::move(work.front());
    work.pop_front();
    if (s.is_zero()) continue;
    const int v = valuation(pl, s);
    if (v > 0) continue;
    if (v == 0) {
      contribute(I, reduce(pl, s));
      continue;
    }
    for (const auto& [J, sJ] : pl.decompose(s)) {
      if (sJ.is_zero()) continue;
      if (J == 0) {
        // s_0^2 dt_I/t_I and s_0 dt_I/t_I differ by an Artin-Schreier image.
        work.emplace_back(I, sJ);
        continue;
      }
      const PolarSplit ps = polar_split(sJ, pl, policy);
      if (!(J & pi) && !ps.digit0.is_zero())
        contribute(I, reduce(pl, basis_monomial(C, J) * ps.digit0.square()));
      if (ps.polar_digits.empty()) continue;
      for (uint32_t Ip : rewrite_trailing(I, J)) add_digits(out.psi[{Ip, J}], ps.polar_digits);
    }
  }
  trim(out.psi);
  return out;
}

W1NormalForm residue(const DiffForm& w, const Tower& tower, std::shared_ptr<const Place> place,
                     const PrecisionPolicy& policy) {
  LocalDecomposition dec = local_normal_form(w, tower, place, policy);
  W1NormalForm nf;
  nf.place = std::move(dec.place);
  nf.degree = dec.degree;
  nf.psi = std::move(dec.psi);
  nf.phi2 = std::move(dec.phi2);
  return nf;
}

W1NormalForm residue_infinity_mod(const DiffForm& w, const Tower& tower, const PrecisionPolicy& policy) {
  W1NormalForm nf = residue(w, tower, make_infinity(tower), policy);
  nf.phi2 = DiffForm(nf.phi2.degree(), nf.phi2.basis());
  return nf;
}

DiffForm zeta(const LocalDecomposition& dec) {
  if (!dec.psi.empty()) throw DomainError("zeta: class has a nonzero psi part");
  return dec.phi2;
}

DiffForm chi(const LocalDecomposition& dec) {
  if (!dec.psi.empty()) throw DomainError("chi: class has a nonzero psi part");
  return dec.phi1;
}

DiffForm lift_residue_form(const DiffForm& w, const Place& place) {
  const TwoBasis& C = place.completion_basis();
  DiffForm local(w.degree(), C);
  for (const auto& [mask, c] : w.terms()) local.add_term(mask, c);
  return BasisChange(place.tower(), C).to_standard(local);
}

DiffForm milnor_split(const W1NormalForm& nf) {
  const Place& pl = *nf.place;
  if (pl.is_infinity()) throw DomainError("milnor_split: place at infinity");
  const TwoBasis& C = pl.completion_basis();
  DiffForm local(nf.degree, C);
  const FuncElem pinv = pl.uniformizer().inverse();
  for (const auto& [key, digits] : nf.psi) {
    FuncElem u, pk = FuncElem::one();
    for (const auto& d : digits) {
      pk *= pinv;
      if (!d.is_zero()) u += d * pk;
    }
    if (!u.is_zero()) local.add_term(key.first, basis_monomial(C, key.second) * u.square());
  }
  for (const auto& [mask, c] : nf.phi2.terms()) local.add_term(mask | pl.pi_bit(), c);
  return BasisChange(pl.tower(), C).to_standard(local);
}

std::string W1NormalForm::to_string(const std::vector<std::string>& names) const {
  if (structurally_zero()) return "0";
  const TwoBasis& C = place->completion_basis();
  std::string out;
  for (const auto& [key, digits] : psi)
    for (std::size_t l = 0; l < digits.size(); ++l) {
      if (digits[l].is_zero()) continue;
      out += "psi I=" + mask_to_string(C, key.first) + " J=" + mask_to_string(C, key.second) +
             " l=" + std::to_string(l + 1) + " u=" + digits[l].to_string(names) + "\n";
    }
  out += "phi2 = " + phi2.to_string(names);
  return out;
}

}  // namespace kmk
