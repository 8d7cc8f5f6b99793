#include "kmk/field_tower/poly.hpp"

#include "gcd_brown.hpp"

#include <algorithm>
#include <bit>

#include "kmk/errors.hpp"
#include "kmk/field_tower/gf2x.hpp"

namespace kmk {

namespace {

inline uint64_t mix(uint64_t x) {
  x ^= x >> 31;
  x *= 0x7fb5d329728ea185ull;
  x ^= x >> 27;
  x *= 0x81dadef4bc2dd44dull;
  x ^= x >> 33;
  return x;
}

inline uint64_t mono_hash(const Monomial& m) { return mix(m.hi * 0x9E3779B97F4A7C15ull ^ m.lo); }

// Open-addressing set where inserting twice removes (addition over GF(2)).
class ToggleSet {
 public:
  explicit ToggleSet(std::size_t expected) {
    std::size_t cap = 16;
    while (cap < 2 * expected) cap <<= 1;
    keys_.resize(cap);
    state_.assign(cap, 0);
    mask_ = cap - 1;
  }
  void toggle(const Monomial& m) {
    std::size_t h = mono_hash(m) & mask_;
    while (state_[h] != 0 && !(keys_[h] == m)) h = (h + 1) & mask_;
    if (state_[h] == 0) {
      keys_[h] = m;
      state_[h] = 1;
    } else {
      state_[h] ^= 3;
    }
  }
  std::vector<Monomial> extract() const {
    std::vector<Monomial> out;
    for (std::size_t i = 0; i < keys_.size(); ++i)
      if (state_[i] == 1) out.push_back(keys_[i]);
    return out;
  }

 private:
  std::vector<Monomial> keys_;
  std::vector<uint8_t> state_;
  std::size_t mask_;
};

std::vector<Monomial> sort_cancel(std::vector<Monomial> v) {
  std::sort(v.begin(), v.end(), [](const Monomial& a, const Monomial& b) { return a > b; });
  std::vector<Monomial> out;
  out.reserve(v.size());
  for (std::size_t i = 0; i < v.size();) {
    std::size_t j = i;
    while (j < v.size() && v[j] == v[i]) ++j;
    if ((j - i) & 1u) out.push_back(v[i]);
    i = j;
  }
  return out;
}

GF2X to_gf2x(const Poly& p, int v) {
  GF2X r;
  for (const auto& m : p.terms()) r.flip(m.exp(v));
  return r;
}

Poly from_gf2x(const GF2X& g, int v) {
  std::vector<Monomial> t;
  for (int i = g.degree(); i >= 0; --i)
    if (g.coeff(static_cast<unsigned>(i))) t.push_back(Monomial::var(v, static_cast<unsigned>(i)));
  return Poly::from_terms(std::move(t));
}

}  // namespace

Monomial monomial_gcd(const Monomial& a, const Monomial& b) {
  Monomial r;
  for (int v = 0; v < kMaxVars; ++v) r.set_exp(v, std::min(a.exp(v), b.exp(v)));
  return r;
}

std::string default_var_name(int v) { return "v" + std::to_string(v); }

Poly Poly::from_terms(std::vector<Monomial> terms) { return Poly(sort_cancel(std::move(terms)), 0); }

unsigned Poly::degree(int v) const {
  unsigned d = 0;
  for (const auto& m : t_) d = std::max(d, m.exp(v));
  return d;
}

unsigned Poly::total_degree() const {
  unsigned d = 0;
  for (const auto& m : t_) d = std::max(d, m.total_degree());
  return d;
}

uint32_t Poly::var_mask() const {
  uint64_t hi = 0, lo = 0;
  for (const auto& m : t_) {
    hi |= m.hi;
    lo |= m.lo;
  }
  uint32_t mask = 0;
  for (int v = 0; v < 4; ++v) {
    if ((lo >> (16 * v)) & 0xffffu) mask |= 1u << v;
    if ((hi >> (16 * v)) & 0xffffu) mask |= 1u << (v + 4);
  }
  return mask;
}

Monomial Poly::min_exponents() const {
  if (t_.empty()) return {};
  Monomial r = t_[0];
  for (std::size_t i = 1; i < t_.size() && !r.is_one(); ++i) r = monomial_gcd(r, t_[i]);
  return r;
}

Poly& Poly::operator+=(const Poly& o) {
  if (o.t_.empty()) return *this;
  if (t_.empty()) return *this = o;
  std::vector<Monomial> out;
  out.reserve(t_.size() + o.t_.size());
  std::size_t i = 0, j = 0;
  while (i < t_.size() && j < o.t_.size()) {
    if (t_[i] == o.t_[j]) {
      ++i;
      ++j;
    } else if (t_[i] > o.t_[j]) {
      out.push_back(t_[i++]);
    } else {
      out.push_back(o.t_[j++]);
    }
  }
  out.insert(out.end(), t_.begin() + static_cast<std::ptrdiff_t>(i), t_.end());
  out.insert(out.end(), o.t_.begin() + static_cast<std::ptrdiff_t>(j), o.t_.end());
  t_ = std::move(out);
  return *this;
}

Poly operator*(const Poly& a, const Poly& b) {
  if (a.is_zero() || b.is_zero()) return Poly();
  if (a.is_monomial()) return b * a.lead();
  if (b.is_monomial()) return a * b.lead();
  const std::size_t n = a.size() * b.size();
  if (n <= 256) {
    std::vector<Monomial> prod;
    prod.reserve(n);
    for (const auto& x : a.t_)
      for (const auto& y : b.t_) prod.push_back(x * y);
    return Poly(sort_cancel(std::move(prod)), 0);
  }
  ToggleSet set(n);
  for (const auto& x : a.t_)
    for (const auto& y : b.t_) set.toggle(x * y);
  auto out = set.extract();
  std::sort(out.begin(), out.end(), [](const Monomial& p, const Monomial& q) { return p > q; });
  return Poly(std::move(out), 0);
}

Poly Poly::operator*(const Monomial& m) const {
  std::vector<Monomial> out(t_);
  for (auto& x : out) x = x * m;
  return Poly(std::move(out), 0);
}

Poly Poly::div_monomial(const Monomial& m) const {
  std::vector<Monomial> out(t_);
  for (auto& x : out) x = x / m;
  return Poly(std::move(out), 0);
}

Poly Poly::square() const {
  std::vector<Monomial> out(t_);
  for (auto& x : out) x = x * x;
  return Poly(std::move(out), 0);
}

Poly Poly::pow(unsigned e) const {
  Poly result = Poly::one(), base = *this;
  while (e) {
    if (e & 1u) result = result * base;
    e >>= 1;
    if (e) base = base.square();
  }
  return result;
}

Poly Poly::derivative(int v) const {
  std::vector<Monomial> out;
  const Monomial dv = Monomial::var(v);
  for (const auto& m : t_)
    if (m.exp(v) & 1u) out.push_back(m / dv);
  return Poly(std::move(out), 0);
}

bool Poly::is_square() const {
  constexpr uint64_t odd = 0x0001000100010001ull;
  for (const auto& m : t_)
    if ((m.hi & odd) || (m.lo & odd)) return false;
  return true;
}

Poly Poly::sqrt() const {
  if (!is_square()) throw DomainError("sqrt of a non-square polynomial");
  std::vector<Monomial> out(t_);
  for (auto& m : out) {
    m.hi >>= 1;
    m.lo >>= 1;
  }
  return Poly(std::move(out), 0);
}

std::vector<Poly> Poly::coeffs(int v) const {
  std::vector<std::vector<Monomial>> buckets(degree(v) + 1);
  for (const auto& m : t_) {
    Monomial r = m;
    const unsigned e = m.exp(v);
    r.set_exp(v, 0);
    buckets[e].push_back(r);
  }
  std::vector<Poly> out;
  out.reserve(buckets.size());
  // Removing v from a lex-sorted list can break the order when v is not the
  // top variable, so re-sort.
  for (auto& b : buckets) out.push_back(Poly::from_terms(std::move(b)));
  if (t_.empty()) out.clear();
  return out;
}

Poly Poly::from_coeffs(int v, const std::vector<Poly>& c) {
  std::vector<Monomial> t;
  for (std::size_t e = 0; e < c.size(); ++e)
    for (const auto& m : c[e].t_) t.push_back(m * Monomial::var(v, static_cast<unsigned>(e)));
  return Poly::from_terms(std::move(t));
}

Poly Poly::lead_coeff(int v) const {
  const unsigned d = degree(v);
  std::vector<Monomial> t;
  for (const auto& m : t_)
    if (m.exp(v) == d) {
      Monomial r = m;
      r.set_exp(v, 0);
      t.push_back(r);
    }
  return Poly::from_terms(std::move(t));
}

Poly Poly::substitute(int v, const Poly& q) const {
  if (!has_var(v)) return *this;
  auto c = coeffs(v);
  Poly r = c.back();
  for (std::size_t e = c.size() - 1; e-- > 0;) r = r * q + c[e];
  return r;
}

bool Poly::graded_less(const Poly& o) const {
  const unsigned a = total_degree(), b = o.total_degree();
  if (a != b) return a < b;
  if (t_.size() != o.t_.size()) return t_.size() < o.t_.size();
  return t_ < o.t_;
}

std::size_t Poly::hash() const {
  uint64_t h = 0x1234567ull + t_.size();
  for (const auto& m : t_) h = mix(h ^ mono_hash(m));
  return static_cast<std::size_t>(h);
}

std::string Poly::to_string(const std::vector<std::string>& names) const {
  if (t_.empty()) return "0";
  std::string s;
  for (const auto& m : t_) {
    if (!s.empty()) s += " + ";
    std::string term;
    for (int v = kMaxVars - 1; v >= 0; --v) {
      const unsigned e = m.exp(v);
      if (!e) continue;
      if (!term.empty()) term += "*";
      term += v < static_cast<int>(names.size()) ? names[static_cast<std::size_t>(v)] : default_var_name(v);
      if (e > 1) term += "^" + std::to_string(e);
    }
    s += term.empty() ? "1" : term;
  }
  return s;
}

std::optional<Poly> exact_div(const Poly& a, const Poly& b) {
  if (b.is_zero()) throw DomainError("division by zero polynomial");
  if (a.is_zero()) return Poly();
  if (b.is_one()) return a;
  if (b.is_monomial()) {
    for (const auto& m : a.terms())
      if (!b.lead().divides(m)) return std::nullopt;
    return a.div_monomial(b.lead());
  }
  const Monomial lb = b.lead();
  // Cheap rejections: the quotient must be bounded by the leading terms.
  if (!lb.divides(a.lead())) return std::nullopt;
  Poly rem = a;
  std::vector<Monomial> q;
  while (!rem.is_zero()) {
    const Monomial lt = rem.lead();
    if (!lb.divides(lt)) return std::nullopt;
    const Monomial m = lt / lb;
    q.push_back(m);
    rem += b * m;
  }
  return Poly::from_terms(std::move(q));
}

Poly divexact(const Poly& a, const Poly& b) {
  auto q = exact_div(a, b);
  if (!q) throw InternalError("divexact: not divisible");
  return *q;
}

Poly prem(const Poly& a, const Poly& b, int v) {
  auto A = a.coeffs(v);
  const auto B = b.coeffs(v);
  if (B.empty()) throw DomainError("prem by zero");
  const std::size_t db = B.size() - 1;
  const Poly& lc = B[db];
  while (!A.empty() && A.size() - 1 >= db) {
    const std::size_t k = A.size() - 1;
    const Poly c = A[k];
    if (!lc.is_one())
      for (std::size_t i = 0; i < k; ++i)
        if (!A[i].is_zero()) A[i] = A[i] * lc;
    for (std::size_t j = 0; j < db; ++j)
      if (!B[j].is_zero()) A[j + k - db] += c * B[j];
    A.pop_back();
    while (!A.empty() && A.back().is_zero()) A.pop_back();
  }
  return Poly::from_coeffs(v, A);
}

Poly content(const Poly& a, int v) {
  Poly g;
  for (const auto& c : a.coeffs(v)) {
    if (c.is_zero()) continue;
    g = gcd(g, c);
    if (g.is_one()) break;
  }
  return g;
}

namespace {

Poly primitive_part(const Poly& r, int v) {
  const Poly c = content(r, v);
  return c.is_one() ? r : divexact(r, c);
}

Poly prs(Poly a, Poly b, int v) {
  if (a.degree(v) < b.degree(v)) std::swap(a, b);
  for (;;) {
    Poly r = prem(a, b, v);
    if (r.is_zero()) return b;
    if (r.degree(v) == 0) return Poly::one();
    a = std::move(b);
    b = primitive_part(r, v);
  }
}

Poly gcd_with_coeffs(const Poly& a, int v, Poly g) {
  for (const auto& c : a.coeffs(v)) {
    if (c.is_zero()) continue;
    g = gcd(g, c);
    if (g.is_one()) break;
  }
  return g;
}

Poly gcd_nomono(const Poly& a, const Poly& b) {
  if (a.is_one() || b.is_one()) return Poly::one();
  if (a == b) return a;
  const uint32_t va = a.var_mask(), vb = b.var_mask();
  const uint32_t all = va | vb;
  const int v = 31 - std::countl_zero(all);
  if (std::popcount(all) == 1) return from_gf2x(gcd(to_gf2x(a, v), to_gf2x(b, v)), v);
  if (!((vb >> v) & 1u)) return gcd_with_coeffs(a, v, b);
  if (!((va >> v) & 1u)) return gcd_with_coeffs(b, v, a);
  if (auto g = detail::brown_gcd(a, b)) return *g;
  const Poly ca = content(a, v), cb = content(b, v);
  const Poly c = gcd(ca, cb);
  const Poly pa = ca.is_one() ? a : divexact(a, ca);
  const Poly pb = cb.is_one() ? b : divexact(b, cb);
  return c * prs(pa, pb, v);
}

}  // namespace

Poly gcd(const Poly& a0, const Poly& b0) {
  if (a0.is_zero()) return b0;
  if (b0.is_zero()) return a0;
  if (a0.is_one() || b0.is_one()) return Poly::one();
  if (a0 == b0) return a0;
  const Monomial ma = a0.min_exponents(), mb = b0.min_exponents();
  const Monomial mg = monomial_gcd(ma, mb);
  const Poly a = ma.is_one() ? a0 : a0.div_monomial(ma);
  const Poly b = mb.is_one() ? b0 : b0.div_monomial(mb);
  Poly g = gcd_nomono(a, b);
  return mg.is_one() ? g : g * mg;
}

}  // namespace kmk
