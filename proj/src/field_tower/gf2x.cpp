#include "kmk/field_tower/gf2x.hpp"

#include <algorithm>
#include <cstring>
#include <random>

#if defined(__x86_64__)
#include <immintrin.h>
#endif

namespace kmk {

namespace {

using u128 = unsigned __int128;

u128 clmul_sw(uint64_t a, uint64_t b) {
  u128 tab[16];
  tab[0] = 0;
  tab[1] = a;
  for (int k = 2; k < 16; ++k) tab[k] = (k & 1) ? (tab[k ^ 1] ^ a) : (tab[k >> 1] << 1);
  u128 r = 0;
  for (int i = 60; i >= 0; i -= 4) r = (r << 4) ^ tab[(b >> i) & 15];
  return r;
}

#if defined(__x86_64__)
__attribute__((target("pclmul,sse2"))) u128 clmul_hw(uint64_t a, uint64_t b) {
  __m128i x = _mm_clmulepi64_si128(_mm_set_epi64x(0, static_cast<long long>(a)),
                                   _mm_set_epi64x(0, static_cast<long long>(b)), 0);
  u128 r;
  std::memcpy(&r, &x, sizeof r);
  return r;
}
#endif

using ClmulFn = u128 (*)(uint64_t, uint64_t);

ClmulFn pick_clmul() {
#if defined(__x86_64__)
  if (__builtin_cpu_supports("pclmul")) return clmul_hw;
#endif
  return clmul_sw;
}

const ClmulFn clmul = pick_clmul();

uint64_t spread32(uint32_t x) {
  uint64_t v = x;
  v = (v | (v << 16)) & 0x0000FFFF0000FFFFull;
  v = (v | (v << 8)) & 0x00FF00FF00FF00FFull;
  v = (v | (v << 4)) & 0x0F0F0F0F0F0F0F0Full;
  v = (v | (v << 2)) & 0x3333333333333333ull;
  v = (v | (v << 1)) & 0x5555555555555555ull;
  return v;
}

uint32_t gather_even(uint64_t v) {
  v &= 0x5555555555555555ull;
  v = (v | (v >> 1)) & 0x3333333333333333ull;
  v = (v | (v >> 2)) & 0x0F0F0F0F0F0F0F0Full;
  v = (v | (v >> 4)) & 0x00FF00FF00FF00FFull;
  v = (v | (v >> 8)) & 0x0000FFFF0000FFFFull;
  v = (v | (v >> 16)) & 0x00000000FFFFFFFFull;
  return static_cast<uint32_t>(v);
}

}  // namespace

GF2X GF2X::monomial(unsigned e) {
  GF2X r;
  r.w_.assign(e / 64 + 1, 0);
  r.w_[e / 64] = uint64_t{1} << (e % 64);
  return r;
}

void GF2X::normalize() {
  while (!w_.empty() && w_.back() == 0) w_.pop_back();
}

int GF2X::degree() const {
  if (w_.empty()) return -1;
  return static_cast<int>(64 * (w_.size() - 1)) + 63 - __builtin_clzll(w_.back());
}

void GF2X::flip(unsigned i) {
  if (i / 64 >= w_.size()) w_.resize(i / 64 + 1, 0);
  w_[i / 64] ^= uint64_t{1} << (i % 64);
  normalize();
}

GF2X& GF2X::operator+=(const GF2X& o) {
  if (o.w_.size() > w_.size()) w_.resize(o.w_.size(), 0);
  for (std::size_t i = 0; i < o.w_.size(); ++i) w_[i] ^= o.w_[i];
  normalize();
  return *this;
}

GF2X operator*(const GF2X& a, const GF2X& b) {
  GF2X r;
  if (a.is_zero() || b.is_zero()) return r;
  r.w_.assign(a.w_.size() + b.w_.size(), 0);
  for (std::size_t i = 0; i < a.w_.size(); ++i) {
    if (a.w_[i] == 0) continue;
    for (std::size_t j = 0; j < b.w_.size(); ++j) {
      const u128 p = clmul(a.w_[i], b.w_[j]);
      r.w_[i + j] ^= static_cast<uint64_t>(p);
      r.w_[i + j + 1] ^= static_cast<uint64_t>(p >> 64);
    }
  }
  r.normalize();
  return r;
}

GF2X GF2X::shifted(unsigned k) const {
  GF2X r;
  if (is_zero()) return r;
  const unsigned ws = k / 64, bs = k % 64;
  r.w_.assign(w_.size() + ws + 1, 0);
  for (std::size_t i = 0; i < w_.size(); ++i) {
    r.w_[i + ws] ^= w_[i] << bs;
    if (bs) r.w_[i + ws + 1] ^= w_[i] >> (64 - bs);
  }
  r.normalize();
  return r;
}

void GF2X::divrem(const GF2X& a, const GF2X& b, GF2X& q, GF2X& r) {
  const int db = b.degree();
  if (db < 0) throw std::domain_error("GF2X division by zero");
  r = a;
  q = GF2X();
  int dr = r.degree();
  if (dr < db) return;
  q.w_.assign((dr - db) / 64 + 1, 0);
  // Precompute the 64 bit-shifts of b so each step is a word-aligned xor.
  std::vector<std::vector<uint64_t>> sh(64);
  for (unsigned s = 0; s < 64; ++s) {
    GF2X t = b.shifted(s);
    sh[s] = t.w_;
  }
  while (dr >= db) {
    const unsigned k = static_cast<unsigned>(dr - db);
    q.w_[k / 64] ^= uint64_t{1} << (k % 64);
    const auto& bw = sh[k % 64];
    const std::size_t off = k / 64;
    for (std::size_t i = 0; i < bw.size(); ++i) r.w_[i + off] ^= bw[i];
    while (!r.w_.empty() && r.w_.back() == 0) r.w_.pop_back();
    dr = r.degree();
  }
  q.normalize();
}

GF2X operator%(const GF2X& a, const GF2X& b) {
  GF2X q, r;
  GF2X::divrem(a, b, q, r);
  return r;
}

GF2X operator/(const GF2X& a, const GF2X& b) {
  GF2X q, r;
  GF2X::divrem(a, b, q, r);
  return q;
}

GF2X GF2X::square() const {
  GF2X r;
  r.w_.assign(2 * w_.size(), 0);
  for (std::size_t i = 0; i < w_.size(); ++i) {
    r.w_[2 * i] = spread32(static_cast<uint32_t>(w_[i]));
    r.w_[2 * i + 1] = spread32(static_cast<uint32_t>(w_[i] >> 32));
  }
  r.normalize();
  return r;
}

GF2X GF2X::derivative() const {
  GF2X r;
  r.w_.resize(w_.size());
  for (std::size_t i = 0; i < w_.size(); ++i) {
    // Odd coefficient 64k+j moves to 64k+j-1, which stays inside word k.
    r.w_[i] = (w_[i] & 0xAAAAAAAAAAAAAAAAull) >> 1;
  }
  r.normalize();
  return r;
}

GF2X GF2X::sqrt() const {
  GF2X r;
  r.w_.assign((w_.size() + 1) / 2, 0);
  for (std::size_t i = 0; i < w_.size(); ++i) {
    const uint64_t g = gather_even(w_[i]);
    r.w_[i / 2] |= (i % 2) ? (g << 32) : g;
  }
  r.normalize();
  return r;
}

bool GF2X::operator<(const GF2X& o) const {
  if (degree() != o.degree()) return degree() < o.degree();
  for (std::size_t i = w_.size(); i-- > 0;)
    if (w_[i] != o.w_[i]) return w_[i] < o.w_[i];
  return false;
}

std::string GF2X::to_string(const std::string& var) const {
  if (is_zero()) return "0";
  std::string s;
  for (int i = degree(); i >= 0; --i) {
    if (!coeff(static_cast<unsigned>(i))) continue;
    if (!s.empty()) s += " + ";
    if (i == 0)
      s += "1";
    else if (i == 1)
      s += var;
    else
      s += var + "^" + std::to_string(i);
  }
  return s;
}

GF2X gcd(GF2X a, GF2X b) {
  while (!b.is_zero()) {
    GF2X r = a % b;
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

GF2X mulmod(const GF2X& a, const GF2X& b, const GF2X& m) { return (a * b) % m; }

GF2X xgcd_inverse(const GF2X& a, const GF2X& m) {
  GF2X r0 = m, r1 = a % m, s0, s1 = GF2X::one();
  while (!r1.is_zero()) {
    GF2X q, r;
    GF2X::divrem(r0, r1, q, r);
    GF2X s = s0 + q * s1;
    r0 = std::move(r1);
    r1 = std::move(r);
    s0 = std::move(s1);
    s1 = std::move(s);
  }
  if (!r0.is_one()) throw std::domain_error("GF2X element not invertible");
  return s0 % m;
}

namespace {

void add_factor(std::vector<std::pair<GF2X, int>>& out, const GF2X& f, int e) {
  for (auto& [g, k] : out)
    if (g == f) {
      k += e;
      return;
    }
  out.emplace_back(f, e);
}

std::vector<std::pair<GF2X, int>> squarefree(const GF2X& f) {
  std::vector<std::pair<GF2X, int>> out;
  if (f.degree() <= 0) return out;
  GF2X c = gcd(f, f.derivative());
  GF2X w = f / c;
  int i = 1;
  while (!w.is_one()) {
    GF2X y = gcd(w, c);
    GF2X fac = w / y;
    if (!fac.is_one()) out.emplace_back(fac, i);
    w = y;
    c = c / y;
    ++i;
  }
  if (!c.is_one()) {
    for (auto& [g, k] : squarefree(c.sqrt())) add_factor(out, g, 2 * k);
  }
  return out;
}

void equal_degree(const GF2X& f, int d, std::mt19937_64& rng, std::vector<GF2X>& out) {
  if (f.degree() == d) {
    out.push_back(f);
    return;
  }
  const int n = f.degree();
  for (;;) {
    GF2X a;
    a.words().assign(static_cast<std::size_t>(n) / 64 + 1, 0);
    for (auto& w : a.words()) w = rng();
    a = a % f;
    if (a.degree() <= 0) continue;
    GF2X t = a, acc = a;
    for (int j = 1; j < d; ++j) {
      t = mulmod(t, t, f);
      acc += t;
    }
    GF2X g = gcd(f, acc);
    if (g.degree() > 0 && g.degree() < n) {
      equal_degree(g, d, rng, out);
      equal_degree(f / g, d, rng, out);
      return;
    }
  }
}

}  // namespace

std::vector<std::pair<GF2X, int>> factor(const GF2X& f) {
  std::vector<std::pair<GF2X, int>> out;
  std::mt19937_64 rng(0x6b6d6bULL);
  for (auto& [sf, mult] : squarefree(f)) {
    GF2X rest = sf;
    GF2X h = GF2X::monomial(1) % rest;
    const GF2X z = GF2X::monomial(1);
    int i = 1;
    while (rest.degree() >= 2 * i) {
      h = mulmod(h, h, rest);
      GF2X g = gcd(h + z, rest);
      if (!g.is_one()) {
        std::vector<GF2X> parts;
        equal_degree(g, i, rng, parts);
        for (auto& p : parts) add_factor(out, p, mult);
        rest = rest / g;
        h = h % rest;
      }
      ++i;
    }
    if (rest.degree() > 0) add_factor(out, rest, mult);
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  return out;
}

bool trace_gf2(const GF2X& a, const GF2X& m) {
  const int d = m.degree();
  GF2X t = a % m, acc = t;
  for (int j = 1; j < d; ++j) {
    t = mulmod(t, t, m);
    acc += t;
  }
  if (acc.degree() > 0) throw std::domain_error("trace_gf2: modulus not irreducible");
  return acc.is_one();
}

}  // namespace kmk
