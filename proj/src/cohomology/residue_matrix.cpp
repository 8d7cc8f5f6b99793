#include "kmk/cohomology/residue_matrix.hpp"

#include <bit>

#include "kmk/errors.hpp"

namespace kmk {

namespace {

FuncElem monomial_over(const Tower& tower, uint32_t mask) {
  FuncElem r = FuncElem::one();
  for (int k = 0; mask; ++k, mask >>= 1)
    if (mask & 1u) r *= FuncElem::var(tower.order[static_cast<std::size_t>(k)]);
  return r;
}

// Gauss-Jordan over the residue field; returns the determinant (zero when
// singular) and applies the same row operations to `rhs` when given.
FuncElem eliminate(const Place& pl, std::vector<std::vector<FuncElem>> a, std::vector<FuncElem>* rhs) {
  const std::size_t n = a.size();
  FuncElem det = FuncElem::one();
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    while (piv < n && a[piv][c].is_zero()) ++piv;
    if (piv == n) return {};
    if (piv != c) {
      std::swap(a[piv], a[c]);
      if (rhs) std::swap((*rhs)[piv], (*rhs)[c]);
    }
    det = reduce(pl, det * a[c][c]);
    const FuncElem inv = residue_inverse(pl, a[c][c]);
    for (std::size_t j = c; j < n; ++j) a[c][j] = reduce(pl, a[c][j] * inv);
    if (rhs) (*rhs)[c] = reduce(pl, (*rhs)[c] * inv);
    for (std::size_t r = 0; r < n; ++r) {
      if (r == c || a[r][c].is_zero()) continue;
      const FuncElem f = a[r][c];
      for (std::size_t j = c; j < n; ++j)
        if (!a[c][j].is_zero()) a[r][j] = reduce(pl, a[r][j] + f * a[c][j]);
      if (rhs && !(*rhs)[c].is_zero()) (*rhs)[r] = reduce(pl, (*rhs)[r] + f * (*rhs)[c]);
    }
  }
  return det;
}

int strip_place(Poly& den, const Poly& P) {
  int k = 0;
  while (auto q = exact_div(den, P)) {
    den = std::move(*q);
    ++k;
  }
  return k;
}

}  // namespace

FuncElem ResidueMatrix::sum_P() const {
  FuncElem s;
  for (const auto& [K, v] : P) s += v;
  return reduce(*place, s);
}

FuncElem ResidueMatrix::determinant() const { return eliminate(*place, entries, nullptr); }

bool ResidueMatrix::is_symmetric() const {
  for (std::size_t i = 0; i < size(); ++i)
    for (std::size_t j = 0; j < i; ++j)
      if (!(entries[i][j] == entries[j][i])) return false;
  return true;
}

ResidueMatrix build_residue_matrix(std::shared_ptr<const Place> place) {
  const Place& pl = *place;
  if (pl.is_infinity()) throw DomainError("build_residue_matrix: place at infinity");
  const Tower& tower = pl.tower();
  const int x = tower.x();
  const int d = pl.degree();
  const UPoly p = UPoly::from_func(pl.p(), x);
  const std::vector<int> base = tower.base_vars();

  // p_j is the coefficient of x^{d-j}.
  std::vector<Decomposition> comp(static_cast<std::size_t>(d) + 1);
  ResidueMatrix M;
  M.place = place;
  for (int j = 0; j <= d; ++j) {
    const FuncElem pj = p.coeff(d - j);
    if (pj.is_zero()) continue;
    comp[static_cast<std::size_t>(j)] = decompose_standard(pj, base);
    for (const auto& [K, c] : comp[static_cast<std::size_t>(j)])
      if (!c.is_zero()) M.support |= K;
  }
  auto component = [&](int j, uint32_t K) {
    const auto& c = comp[static_cast<std::size_t>(j)];
    auto it = c.find(K);
    return it == c.end() ? FuncElem() : it->second;
  };

  M.inseparable = !pl.separable();
  uint32_t free = M.support;
  uint32_t jn_bit = 0;
  if (M.inseparable) {
    if (M.support == 0) throw InternalError("build_residue_matrix: inseparable p with constant coefficients");
    jn_bit = std::bit_floor(M.support);
    M.pivot_var = tower.order[static_cast<std::size_t>(std::countr_zero(jn_bit))];
    if (M.pivot_var != pl.drop_var()) throw InternalError("build_residue_matrix: pivot differs from the dropped label");
    free &= ~jn_bit;
  } else {
    M.pivot_var = x;
  }
  // Submasks of `free` in increasing order.
  for (uint32_t K = 0;; K = ((K | ~free) + 1) & free) {
    M.index.push_back(K);
    if (K == free) break;
  }
  const FuncElem X = FuncElem::var(x);
  for (uint32_t K : M.index) {
    FuncElem s;
    for (int j = 0; j <= d; ++j) {
      if (!M.inseparable && (d - j) % 2 == 0) continue;
      const FuncElem c = component(j, M.inseparable ? (K | jn_bit) : K);
      if (!c.is_zero()) s += c.square() * X.pow(d - j);
    }
    M.P[K] = reduce(pl, monomial_over(tower, K) * s);
  }
  const FuncElem tjn = M.inseparable ? FuncElem::var(M.pivot_var) : FuncElem::one();
  M.entries.assign(M.size(), std::vector<FuncElem>(M.size()));
  for (std::size_t a = 0; a < M.size(); ++a)
    for (std::size_t b = 0; b < M.size(); ++b) {
      const FuncElem& v = M.P.at(M.index[a] ^ M.index[b]);
      M.entries[a][b] = M.inseparable ? reduce(pl, v * tjn) : v;
    }
  return M;
}

std::vector<FuncElem> solve_residue_system(const ResidueMatrix& M, const FuncElem& g) {
  std::vector<FuncElem> rhs(M.size());
  if (!rhs.empty()) rhs[0] = reduce(*M.place, g);
  if (eliminate(*M.place, M.entries, &rhs).is_zero()) throw InternalError("residue matrix is singular");
  return rhs;
}

DpConversion convert_dx_to_dp(const ResidueMatrix& M, const FuncElem& g, int s, const DiffForm& A) {
  const Place& pl = *M.place;
  const Tower& tower = pl.tower();
  const TwoBasis basis = standard_basis(tower);
  const int pivot_pos = tower.position(M.pivot_var);
  if (A.degree() > 0 && A.basis() != basis) throw DomainError("convert_dx_to_dp: A must be over the standard basis");
  for (const auto& [mask, c] : A.terms())
    if ((mask >> pivot_pos) & 1u) throw DomainError("convert_dx_to_dp: A contains the pivot label");
  DpConversion out;
  out.index = M.index;
  const DiffForm Aform = A.is_zero() && A.basis().empty() ? DiffForm(A.degree(), basis) : A;
  const FuncElem pfun = pl.p();
  out.input = wedge(Aform.scaled(g / pfun.pow(s)), dlog(tower, FuncElem::var(M.pivot_var)));
  out.rewritten = DiffForm(out.input.degree(), basis);
  if (!M.inseparable && pl.P() == Poly::var(tower.x())) {
    // dx/x = dp/p already.
    out.rewritten = out.input;
  } else if (s > 0) {
    out.h = solve_residue_system(M, g);
    for (std::size_t k = 0; k < M.size(); ++k) {
      if (out.h[k].is_zero()) continue;
      const FuncElem arg = monomial_over(tower, M.index[k]) * pfun;
      out.rewritten += wedge(Aform.scaled(out.h[k] / pfun.pow(s - 1)), dlog(tower, arg));
    }
  }
  out.remainder = out.input - out.rewritten;
  out.remainder_ok = true;
  for (const auto& [mask, c] : out.remainder.terms()) {
    Poly den = c.den();
    const int k = strip_place(den, pl.P());
    if (den.has_var(tower.x())) out.remainder_ok = false;
    if (((mask >> pivot_pos) & 1u) && k > std::max(s - 1, 0)) out.remainder_ok = false;
  }
  return out;
}

}  // namespace kmk
