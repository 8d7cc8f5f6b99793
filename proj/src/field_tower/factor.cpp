#include "kmk/field_tower/factor.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <mutex>
#include <unordered_map>

#include "kmk/errors.hpp"
#include "kmk/field_tower/gf2x.hpp"

namespace kmk {

namespace {

void merge(Factorization& into, const Poly& f, int e) {
  for (auto& [g, k] : into)
    if (g == f) {
      k += e;
      return;
    }
  into.emplace_back(f, e);
}

struct Kronecker {
  std::vector<int> vars;
  std::vector<unsigned> bound;   // max allowed exponent per var
  std::vector<uint64_t> stride;

  explicit Kronecker(const Poly& h) {
    uint64_t s = 1;
    for (int v = 0; v < kMaxVars; ++v) {
      if (!h.has_var(v)) continue;
      vars.push_back(v);
      bound.push_back(h.degree(v));
      stride.push_back(s);
      s *= h.degree(v) + 1;
    }
  }
  GF2X image(const Poly& p) const {
    GF2X r;
    for (const auto& m : p.terms()) {
      uint64_t e = 0;
      for (std::size_t i = 0; i < vars.size(); ++i) e += m.exp(vars[i]) * stride[i];
      r.flip(static_cast<unsigned>(e));
    }
    return r;
  }
  std::optional<Poly> preimage(const GF2X& g) const {
    std::vector<Monomial> t;
    for (int e = g.degree(); e >= 0; --e) {
      if (!g.coeff(static_cast<unsigned>(e))) continue;
      Monomial m;
      uint64_t rest = static_cast<uint64_t>(e);
      for (std::size_t i = vars.size(); i-- > 0;) {
        const uint64_t d = rest / stride[i];
        rest %= stride[i];
        if (d > bound[i]) return std::nullopt;
        m.set_exp(vars[i], static_cast<unsigned>(d));
      }
      t.push_back(m);
    }
    return Poly::from_terms(std::move(t));
  }
};

void factor_image(const Poly& h, std::vector<GF2X> pieces, const FactorLimits& lim,
                  const std::vector<std::string>& names, Factorization& out);

// Squarefree, monomial-content-free, nonconstant h.
void factor_squarefree(const Poly& h, const FactorLimits& lim, const std::vector<std::string>& names,
                       Factorization& out) {
  if (h.is_one()) return;
  const uint32_t vm = h.var_mask();
  if (std::popcount(vm) == 1) {
    const int v = std::countr_zero(vm);
    GF2X g;
    for (const auto& m : h.terms()) g.flip(m.exp(v));
    for (auto& [f, e] : factor(g)) {
      std::vector<Monomial> t;
      for (int i = f.degree(); i >= 0; --i)
        if (f.coeff(static_cast<unsigned>(i))) t.push_back(Monomial::var(v, static_cast<unsigned>(i)));
      merge(out, Poly::from_terms(std::move(t)), e);
    }
    return;
  }
  for (int v = 0; v < kMaxVars; ++v)
    if (h.degree(v) > lim.degree_bound)
      throw FactorizationBoundError("factorization-bound: degree exceeds bound", h.to_string(names));

  // Shifting variables by 1 is an automorphism; the Kronecker image with the
  // fewest modular pieces keeps the recombination small.
  std::vector<int> vars;
  for (int v = 0; v < kMaxVars; ++v)
    if (h.has_var(v)) vars.push_back(v);
  const std::size_t nshift = vars.size() > 4 ? 4 : vars.size();
  auto shifted = [&](const Poly& p, uint32_t shift) {
    Poly r = p;
    for (std::size_t i = 0; i < nshift; ++i)
      if ((shift >> i) & 1u) r = r.substitute(vars[i], Poly::var(vars[i]) + Poly::one());
    return r;
  };
  uint32_t best_shift = 0;
  std::vector<GF2X> pieces;
  for (uint32_t shift = 0; shift < (1u << nshift); ++shift) {
    const Poly g = shifted(h, shift);
    std::vector<GF2X> cur;
    for (auto& [f, e] : factor(Kronecker(g).image(g)))
      for (int i = 0; i < e; ++i) cur.push_back(f);
    if (shift == 0 || cur.size() < pieces.size()) {
      pieces = std::move(cur);
      best_shift = shift;
    }
    if (pieces.size() <= 2) break;
  }
  Factorization found;
  factor_image(shifted(h, best_shift), std::move(pieces), lim, names, found);
  for (auto& [f, e] : found) merge(out, shifted(f, best_shift), e);
}

// Recombination of the modular pieces of the Kronecker image of h.
void factor_image(const Poly& h, std::vector<GF2X> pieces, const FactorLimits& lim,
                  const std::vector<std::string>& names, Factorization& out) {
  const Kronecker kr(h);
  Poly rest = h;
  std::size_t tried = 0;
  while (!rest.is_one()) {
    const int total = [&] {
      int s = 0;
      for (const auto& p : pieces) s += p.degree();
      return s;
    }();
    // Enumerate sub-multisets in increasing image degree; the first one that
    // divides is irreducible.
    const std::size_t n = pieces.size();
    if (n > 24) throw FactorizationBoundError("factorization-bound: too many modular pieces", rest.to_string(names));
    std::vector<std::pair<int, uint32_t>> subsets;
    for (uint32_t mask = 1; mask < (1u << n); ++mask) {
      int deg = 0;
      for (std::size_t i = 0; i < n; ++i)
        if ((mask >> i) & 1u) deg += pieces[i].degree();
      if (2 * deg > total) continue;
      subsets.emplace_back(deg, mask);
      if (subsets.size() > lim.max_recombinations)
        throw FactorizationBoundError("factorization-bound: recombination limit", rest.to_string(names));
    }
    std::sort(subsets.begin(), subsets.end());
    bool found = false;
    for (const auto& [deg, mask] : subsets) {
      // Skip masks that pick an equal piece at a later index before an earlier one.
      bool canonical = true;
      for (std::size_t i = 1; i < n && canonical; ++i)
        if (((mask >> i) & 1u) && !((mask >> (i - 1)) & 1u) && pieces[i] == pieces[i - 1]) canonical = false;
      if (!canonical) continue;
      if (++tried > lim.max_recombinations)
        throw FactorizationBoundError("factorization-bound: recombination limit", rest.to_string(names));
      GF2X g = GF2X::one();
      for (std::size_t i = 0; i < n; ++i)
        if ((mask >> i) & 1u) g = g * pieces[i];
      auto cand = kr.preimage(g);
      if (!cand || cand->is_one()) continue;
      auto q = exact_div(rest, *cand);
      if (!q) continue;
      merge(out, *cand, 1);
      rest = *q;
      std::vector<GF2X> left;
      for (std::size_t i = 0; i < n; ++i)
        if (!((mask >> i) & 1u)) left.push_back(pieces[i]);
      pieces = std::move(left);
      found = true;
      break;
    }
    if (!found) {
      merge(out, rest, 1);
      break;
    }
  }
}

void factor_rec(const Poly& f, const FactorLimits& lim, const std::vector<std::string>& names, int mult,
                Factorization& out) {
  if (f.is_one()) return;
  // f = h * s^2 with h the product of the odd-multiplicity factors.
  Poly g = f;
  bool any = false;
  for (int v = 0; v < kMaxVars; ++v) {
    if (!f.has_var(v)) continue;
    Poly d = f.derivative(v);
    if (d.is_zero()) continue;
    g = any ? gcd(g, d) : gcd(f, d);
    any = true;
  }
  if (!any) {
    factor_rec(f.sqrt(), lim, names, 2 * mult, out);
    return;
  }
  const Poly h = divexact(f, g);
  Factorization part;
  factor_squarefree(h, lim, names, part);
  for (auto& [q, e] : part) merge(out, q, e * mult);
  if (!g.is_one()) factor_rec(g.sqrt(), lim, names, 2 * mult, out);
}

std::vector<std::string> var_names() {
  std::vector<std::string> n;
  for (int v = 0; v < kMaxVars; ++v) n.push_back(default_var_name(v));
  return n;
}

struct CacheKey {
  Poly p;
  unsigned bound;
  std::size_t rec;
  bool operator==(const CacheKey&) const = default;
};
struct CacheKeyHash {
  std::size_t operator()(const CacheKey& k) const { return k.p.hash() ^ (k.bound * 0x9E37u) ^ k.rec; }
};

std::mutex cache_mutex;
std::unordered_map<CacheKey, Factorization, CacheKeyHash> cache;

}  // namespace

Factorization factor_bounded(const Poly& p, const FactorLimits& limits) {
  if (p.is_zero()) throw DomainError("factor of zero");
  const CacheKey key{p, limits.degree_bound, limits.max_recombinations};
  {
    std::lock_guard<std::mutex> lock(cache_mutex);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
  }
  Factorization out;
  const Monomial mc = p.min_exponents();
  for (int v = 0; v < kMaxVars; ++v)
    if (mc.exp(v)) out.emplace_back(Poly::var(v), static_cast<int>(mc.exp(v)));
  factor_rec(p.div_monomial(mc), limits, limits.names.empty() ? var_names() : limits.names, 1, out);
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    if (a.first == b.first) return a.second < b.second;
    return a.first.graded_less(b.first);
  });
  {
    std::lock_guard<std::mutex> lock(cache_mutex);
    if (cache.size() > 100000) cache.clear();
    cache.emplace(key, out);
  }
  return out;
}

Factorization place_factors(const Poly& p, int x, const FactorLimits& limits) {
  Factorization out;
  for (auto& [f, e] : factor_bounded(p, limits))
    if (f.has_var(x)) out.emplace_back(f, e);
  return out;
}

bool is_irreducible(const Poly& p, const FactorLimits& limits) {
  if (p.is_zero() || p.is_one()) return false;
  auto f = factor_bounded(p, limits);
  return f.size() == 1 && f[0].second == 1;
}

}  // namespace kmk
