// Dense modular gcd (Brown) over GF(2^64), used by gcd() for polynomials in
// two or more variables.  Inner levels stop at the degree bound; the top
// level checks the candidate by exact division over GF(2).
#include "gcd_brown.hpp"

#include <algorithm>
#include <map>
#include <random>

#if defined(__x86_64__)
#include <immintrin.h>
#endif

namespace kmk::detail {

namespace {

using Q = uint64_t;
using u128 = unsigned __int128;

u128 clmul_soft(uint64_t a, uint64_t b) {
  u128 tab[16];
  tab[0] = 0;
  tab[1] = a;
  for (int k = 2; k < 16; ++k) tab[k] = (k & 1) ? (tab[k ^ 1] ^ a) : (tab[k >> 1] << 1);
  u128 r = 0;
  for (int i = 60; i >= 0; i -= 4) r = (r << 4) ^ tab[(b >> i) & 15];
  return r;
}

#if defined(__x86_64__)
__attribute__((target("pclmul,sse2"))) u128 clmul_fast(uint64_t a, uint64_t b) {
  __m128i x = _mm_clmulepi64_si128(_mm_set_epi64x(0, static_cast<long long>(a)),
                                   _mm_set_epi64x(0, static_cast<long long>(b)), 0);
  u128 r;
  __builtin_memcpy(&r, &x, sizeof r);
  return r;
}
#endif

u128 (*const clmul)(uint64_t, uint64_t) = [] {
#if defined(__x86_64__)
  if (__builtin_cpu_supports("pclmul")) return &clmul_fast;
#endif
  return &clmul_soft;
}();

// Reduction modulo z^64 + z^4 + z^3 + z + 1.
inline Q qmul(Q a, Q b) {
  const u128 p = clmul(a, b);
  uint64_t lo = static_cast<uint64_t>(p), hi = static_cast<uint64_t>(p >> 64);
  // hi * (z^4 + z^3 + z + 1), folded twice.
  u128 f = static_cast<u128>(hi) ^ (static_cast<u128>(hi) << 1) ^ (static_cast<u128>(hi) << 3) ^
           (static_cast<u128>(hi) << 4);
  lo ^= static_cast<uint64_t>(f);
  const uint64_t h2 = static_cast<uint64_t>(f >> 64);
  lo ^= h2 ^ (h2 << 1) ^ (h2 << 3) ^ (h2 << 4);
  return lo;
}

Q qinv(Q a) {
  // a^(2^64 - 2)
  Q r = 1, s = a;
  for (int i = 1; i < 64; ++i) {
    s = qmul(s, s);
    r = qmul(r, s);
  }
  return r;
}

// ---- univariate over GF(q), index = degree
using UQ = std::vector<Q>;

void trim(UQ& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

Q ueval(const UQ& a, Q x) {
  Q r = 0;
  for (std::size_t i = a.size(); i-- > 0;) r = qmul(r, x) ^ a[i];
  return r;
}

UQ umonic(UQ a) {
  trim(a);
  if (a.empty()) return a;
  const Q inv = qinv(a.back());
  for (auto& c : a) c = qmul(c, inv);
  return a;
}

void udivrem(const UQ& a, const UQ& b, UQ& q, UQ& r) {
  r = a;
  trim(r);
  q.clear();
  if (r.size() < b.size()) return;
  q.assign(r.size() - b.size() + 1, 0);
  const Q inv = qinv(b.back());
  while (!r.empty() && r.size() >= b.size()) {
    const std::size_t k = r.size() - b.size();
    const Q f = qmul(r.back(), inv);
    q[k] = f;
    for (std::size_t j = 0; j < b.size(); ++j) r[j + k] ^= qmul(f, b[j]);
    trim(r);
  }
}

UQ ugcd(UQ a, UQ b) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    UQ q, r;
    udivrem(a, b, q, r);
    a = std::move(b);
    b = std::move(r);
  }
  return umonic(a);
}

UQ umul(const UQ& a, const UQ& b) {
  if (a.empty() || b.empty()) return {};
  UQ r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] ^= qmul(a[i], b[j]);
  trim(r);
  return r;
}

// ---- sparse multivariate over GF(q), terms sorted by decreasing monomial
struct QTerm {
  Monomial m;
  Q c;
};
using QPoly = std::vector<QTerm>;

QPoly qnormalize(std::vector<QTerm> v) {
  std::sort(v.begin(), v.end(), [](const QTerm& a, const QTerm& b) { return a.m > b.m; });
  QPoly out;
  for (const auto& t : v) {
    if (!out.empty() && out.back().m == t.m)
      out.back().c ^= t.c;
    else
      out.push_back(t);
    if (!out.empty() && out.back().c == 0) out.pop_back();
  }
  return out;
}

QPoly from_poly(const Poly& p) {
  QPoly q;
  q.reserve(p.size());
  for (const auto& m : p.terms()) q.push_back({m, 1});
  return q;
}

uint32_t qvars(const QPoly& a) {
  uint32_t mask = 0;
  for (const auto& t : a)
    for (int v = 0; v < kMaxVars; ++v)
      if (t.m.exp(v)) mask |= 1u << v;
  return mask;
}

unsigned qdeg(const QPoly& a, int v) {
  unsigned d = 0;
  for (const auto& t : a) d = std::max(d, t.m.exp(v));
  return d;
}

QPoly qeval(const QPoly& a, int y, Q beta) {
  unsigned maxe = qdeg(a, y);
  std::vector<Q> pw(maxe + 1);
  pw[0] = 1;
  for (unsigned i = 1; i <= maxe; ++i) pw[i] = qmul(pw[i - 1], beta);
  std::vector<QTerm> v;
  v.reserve(a.size());
  for (const auto& t : a) {
    Monomial m = t.m;
    const unsigned e = m.exp(y);
    m.set_exp(y, 0);
    v.push_back({m, qmul(t.c, pw[e])});
  }
  return qnormalize(std::move(v));
}

// Coefficients as univariate polynomials in y, keyed by the y-free monomial.
std::map<Monomial, UQ> split_y(const QPoly& a, int y) {
  std::map<Monomial, UQ> out;
  for (const auto& t : a) {
    Monomial m = t.m;
    const unsigned e = m.exp(y);
    m.set_exp(y, 0);
    UQ& u = out[m];
    if (u.size() <= e) u.resize(e + 1, 0);
    u[e] ^= t.c;
  }
  return out;
}

QPoly join_y(const std::map<Monomial, UQ>& parts, int y) {
  std::vector<QTerm> v;
  for (const auto& [m, u] : parts)
    for (std::size_t e = 0; e < u.size(); ++e)
      if (u[e]) {
        Monomial n = m;
        n.set_exp(y, static_cast<unsigned>(e));
        v.push_back({n, u[e]});
      }
  return qnormalize(std::move(v));
}

UQ content_y(const QPoly& a, int y) {
  UQ g;
  for (const auto& [m, u] : split_y(a, y)) {
    g = ugcd(g, u);
    if (g.size() == 1) break;
  }
  return g;
}

QPoly divide_content(const QPoly& a, int y, const UQ& c) {
  if (c.size() <= 1) return a;
  auto parts = split_y(a, y);
  for (auto& [m, u] : parts) {
    UQ q, r;
    udivrem(u, c, q, r);
    u = q;
  }
  return join_y(parts, y);
}

QPoly mul_uq(const QPoly& a, const UQ& u, int y) {
  std::vector<QTerm> v;
  for (const auto& t : a)
    for (std::size_t e = 0; e < u.size(); ++e)
      if (u[e]) v.push_back({t.m * Monomial::var(y, static_cast<unsigned>(e)), qmul(t.c, u[e])});
  return qnormalize(std::move(v));
}

QPoly qadd(const QPoly& a, const QPoly& b) {
  std::vector<QTerm> v(a);
  v.insert(v.end(), b.begin(), b.end());
  return qnormalize(std::move(v));
}

QPoly qscale(QPoly a, Q s) {
  for (auto& t : a) t.c = qmul(t.c, s);
  return a;
}

QPoly qmonic(const QPoly& a) {
  if (a.empty()) return a;
  return qscale(a, qinv(a.front().c));
}

// Leading coefficient in y with respect to the remaining variables.
UQ lead_y(const QPoly& a, int y) {
  auto parts = split_y(a, y);
  return parts.rbegin()->second;
}

QPoly univariate_gcd(const QPoly& a, const QPoly& b, int x) {
  UQ ua, ub;
  for (const auto& t : a) {
    const unsigned e = t.m.exp(x);
    if (ua.size() <= e) ua.resize(e + 1, 0);
    ua[e] ^= t.c;
  }
  for (const auto& t : b) {
    const unsigned e = t.m.exp(x);
    if (ub.size() <= e) ub.resize(e + 1, 0);
    ub[e] ^= t.c;
  }
  UQ g = ugcd(ua, ub);
  std::vector<QTerm> v;
  for (std::size_t e = 0; e < g.size(); ++e)
    if (g[e]) v.push_back({Monomial::var(x, static_cast<unsigned>(e)), g[e]});
  return qnormalize(std::move(v));
}

struct Ctx {
  std::mt19937_64 rng{0x5eedULL};
  int budget = 0;
};

Q random_point(Ctx& ctx) {
  Q b = 0;
  while (b == 0) b = ctx.rng();
  return b;
}

bool is_constant(const QPoly& a) { return a.size() == 1 && a[0].m.is_one(); }

QPoly brown(const QPoly& A, const QPoly& B, Ctx& ctx) {
  if (A.empty()) return qmonic(B);
  if (B.empty()) return qmonic(A);
  const uint32_t vm = qvars(A) | qvars(B);
  if (vm == 0) return {{Monomial{}, 1}};
  const int x = 31 - __builtin_clz(vm);
  if ((vm & (vm - 1)) == 0) return univariate_gcd(A, B, x);
  const int y = __builtin_ctz(vm);
  const UQ cA = content_y(A, y), cB = content_y(B, y);
  const UQ c = ugcd(cA, cB);
  const QPoly A1 = divide_content(A, y, cA), B1 = divide_content(B, y, cB);
  const UQ lA = lead_y(A1, y), lB = lead_y(B1, y);
  const UQ gamma = ugcd(lA, lB);
  const unsigned bound = static_cast<unsigned>(gamma.size() - 1) + std::min(qdeg(A1, y), qdeg(B1, y));
  QPoly H;
  UQ M{1};
  Monomial lead;
  bool have = false;
  unsigned points = 0;
  const QPoly cpoly = [&] {
    std::vector<QTerm> v;
    for (std::size_t e = 0; e < c.size(); ++e)
      if (c[e]) v.push_back({Monomial::var(y, static_cast<unsigned>(e)), c[e]});
    return qnormalize(std::move(v));
  }();
  for (int guard = 0; guard < 4 * static_cast<int>(bound) + 64; ++guard) {
    const Q beta = random_point(ctx);
    const Q gb = ueval(gamma, beta);
    if (gb == 0 || ueval(lA, beta) == 0 || ueval(lB, beta) == 0) continue;
    const QPoly a = qeval(A1, y, beta), b = qeval(B1, y, beta);
    const QPoly g = brown(a, b, ctx);
    if (is_constant(g)) return cpoly;
    const Monomial lm = g.front().m;
    if (have && lm > lead) continue;
    const QPoly gs = qscale(g, gb);
    if (!have || lm < lead) {
      H = gs;
      M = {beta, 1};
      lead = lm;
      have = true;
      points = 1;
    } else {
      const QPoly diff = qadd(gs, qeval(H, y, beta));
      if (!diff.empty()) {
        const Q s = qinv(ueval(M, beta));
        H = qadd(H, mul_uq(qscale(diff, s), M, y));
      }
      M = umul(M, UQ{beta, 1});
      ++points;
    }
    if (points > bound) {
      const UQ ch = content_y(H, y);
      const QPoly G = divide_content(H, y, ch);
      std::vector<QTerm> prod;
      for (const auto& t : G)
        for (const auto& u : cpoly) prod.push_back({t.m * u.m, qmul(t.c, u.c)});
      return qmonic(qnormalize(std::move(prod)));
    }
  }
  return {};  // failure
}

}  // namespace

std::optional<Poly> brown_gcd(const Poly& a, const Poly& b) {
  Ctx ctx;
  for (int attempt = 0; attempt < 3; ++attempt) {
    const QPoly g = brown(from_poly(a), from_poly(b), ctx);
    if (g.empty()) continue;
    std::vector<Monomial> terms;
    bool ok = true;
    for (const auto& t : g) {
      if (t.c != 1) {
        ok = false;
        break;
      }
      terms.push_back(t.m);
    }
    if (!ok) continue;
    Poly cand = Poly::from_terms(std::move(terms));
    if (cand.is_one()) return cand;
    if (exact_div(a, cand) && exact_div(b, cand)) return cand;
  }
  return std::nullopt;
}

}  // namespace kmk::detail
