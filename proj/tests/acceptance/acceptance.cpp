// Acceptance gate: one PASS/FAIL line per criterion, each against its time
// limit.  Exit status is the number of failed criteria.

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <set>
#include <sstream>
#include <string>

#include "kmk/cohomology/decide.hpp"
#include "kmk/cohomology/residue_matrix.hpp"
#include "kmk/completion/teichmuller.hpp"
#include "kmk/errors.hpp"
#include "kmk/oracle/oracle.hpp"
#include "support.hpp"

using namespace kmk;

namespace {

const Tower T1 = Tower::make({"t"}, "x");
const Tower T2 = Tower::make({"t1", "t2"}, "x");
const Poly X = Poly::var(1), Tp = Poly::var(0), One = Poly::one();

struct Result {
  bool ok = true;
  std::string stage;
  std::ostringstream detail;
  void fail(const std::string& why) {
    if (ok) detail << why;
    ok = false;
  }
};

// Irreducible polynomials over the tower with x-degree in [1, max_deg].
std::vector<Poly> places_of(const Tower& T, int max_deg) {
  const int x = T.x();
  std::vector<Poly> coeffs{Poly(), One};
  for (int v : T.base_vars()) {
    const Poly t = Poly::var(v);
    coeffs.push_back(t);
    coeffs.push_back(t + One);
  }
  if (T.size() == 2) coeffs.push_back(Poly::var(T.base_vars()[0], 2) + Poly::var(T.base_vars()[0]) + One);
  const Poly xx = Poly::var(x);
  std::vector<Poly> all{xx};
  for (const Poly& a : coeffs) {
    all.push_back(xx + a);
    if (!a.is_zero()) all.push_back(a * xx + One);
  }
  for (int d = 2; d <= max_deg; ++d)
    for (const Poly& a : coeffs)
      for (const Poly& b : coeffs) all.push_back(xx.pow(static_cast<unsigned>(d)) + a * xx + b);
  std::set<Poly> out;
  for (const Poly& P : all)
    if (!P.is_zero() && P.has_var(x) && is_irreducible(P)) out.insert(P);
  return {out.begin(), out.end()};
}

FuncElem random_rep(std::mt19937_64& rng, const Place& pl) {
  return reduce(pl, FuncElem(testing::random_poly(rng, pl.tower().order, 3, 3)));
}

// Random W1 normal form; forces a nonzero psi part when `ramified`.
W1NormalForm random_w1(std::mt19937_64& rng, std::shared_ptr<const Place> pl, int m, bool ramified = false) {
  const uint32_t n = static_cast<uint32_t>(pl->completion_basis().size());
  std::vector<std::pair<uint32_t, uint32_t>> shapes;
  for (uint32_t I = 0; I < (1u << n); ++I) {
    if (std::popcount(I) != m) continue;
    for (uint32_t J = 1; J < (1u << n); ++J)
      if ((J ^ I) > I) shapes.emplace_back(I, J);
  }
  if (ramified && shapes.empty()) throw DomainError("random_w1: no ramified shapes in degree " + std::to_string(m));
  for (;;) {
    W1NormalForm nf{pl, m, {}, DiffForm(m - 1, pl->residue_basis())};
    const int entries = shapes.empty() ? 0 : static_cast<int>(rng() % 3) + (ramified ? 1 : 0);
    for (int e = 0; e < entries; ++e) {
      auto& digits = nf.psi[shapes[rng() % shapes.size()]];
      digits.resize(1 + rng() % 2);
      for (auto& d : digits) d = random_rep(rng, *pl);
    }
    for (auto it = nf.psi.begin(); it != nf.psi.end();) {
      auto& v = it->second;
      while (!v.empty() && v.back().is_zero()) v.pop_back();
      it = v.empty() ? nf.psi.erase(it) : std::next(it);
    }
    if (m >= 1) {
      const uint32_t r = static_cast<uint32_t>(pl->residue_basis().size());
      for (uint32_t I = 0; I < (1u << r); ++I)
        if (std::popcount(I) == m - 1 && rng() % 2) nf.phi2.add_term(I, random_rep(rng, *pl));
    }
    if (!ramified || !nf.psi.empty()) return nf;
  }
}

std::set<Poly> candidate_polys(const DiffForm& w, const Tower& T) {
  std::set<Poly> s{Poly::var(T.x())};
  for (const auto& [mask, c] : w.terms())
    if (c.den().has_var(T.x()))
      for (const auto& [f, e] : place_factors(c.den(), T.x())) s.insert(f);
  return s;
}

bool residue_vanishes(const DiffForm& w, const Tower& T, std::shared_ptr<const Place> pl) {
  const W1NormalForm r = residue(w, T, pl);
  if (!r.psi.empty()) return false;
  if (pl->is_infinity()) return true;
  return decide_residue_zero(r.phi2, *pl);
}

bool has_witness(const DiffForm& w, const Tower& T) {
  if (w.is_zero()) return true;
  for (const auto& win : default_schedule(w, T))
    if (witness_search(w, T, win)) return true;
  return false;
}

// 1. exact sequence
void exact_sequence(Result& r) {
  std::mt19937_64 rng(1001);
  int classes = 0, injected = 0, recombined = 0;
  for (const Tower* T : {&T1, &T2}) {
    const Tower B = T->base();
    const auto polys = places_of(*T, T == &T1 ? 3 : 2);
    for (int it = 0; it < 120; ++it) {
      const int m = static_cast<int>(rng() % 3);
      const unsigned deg = 1 + static_cast<unsigned>(rng() % (T == &T1 ? 4 : 2));
      const DiffForm a = testing::random_form(rng, B, std::min(m, B.size()), deg, 2);
      const DiffForm ia = transfer(a, *T);
      ++classes;
      r.stage = "(a) " + ia.to_string(T->names);
      // (a) i_3 images have no residues
      std::set<Poly> ps{polys[rng() % polys.size()], polys[rng() % polys.size()]};
      for (const Poly& P : candidate_polys(ia, *T)) ps.insert(P);
      for (const Poly& P : ps)
        if (!residue_vanishes(ia, *T, make_place(*T, P))) return r.fail("(a) residue of an i_3 image at " + P.to_string(T->names));
      if (!residue(ia, *T, make_infinity(*T)).psi.empty()) return r.fail("(a) residue of an i_3 image at infinity");

      r.stage = "(b)";
      // (b) injected pole: the residue at p is the injected normal form
      const Poly& P = polys[rng() % polys.size()];
      auto pl = make_place(*T, P);
      // top-degree forms have no ramified part
      const W1NormalForm nf = random_w1(rng, pl, std::min(m, T->size() - 1), true);
      const DiffForm w = nf.degree == ia.degree() ? ia + milnor_split(nf) : milnor_split(nf);
      const W1NormalForm got = residue(w, *T, pl);
      if (got.structurally_zero() || !w1_equal(got, nf))
        return r.fail("(b) injected pole at " + P.to_string(T->names) + " not recovered");
      ++injected;

      r.stage = "(c)";
      // (c) residue-free classes are i_3 of their infinity extraction
      const int mm = std::min(m, B.size());
      const DiffForm eta = testing::random_form(rng, *T, mm, 2, 1);
      DiffForm v = ia + artin_schreier_image(eta);
      DiffForm xi(mm - 1, standard_basis(*T));
      if (mm >= 1) {
        xi = testing::random_form(rng, *T, mm - 1, 2, 1);
        v += exterior_d(xi, *T);
      }
      for (const Poly& Q : candidate_polys(v, *T))
        if (!residue_vanishes(v, *T, make_place(*T, Q))) return r.fail("(c) residue of a residue-free class");
      const LocalDecomposition dec = local_normal_form(v, *T, make_infinity(*T));
      if (!dec.psi.empty()) return r.fail("(c) residue at infinity");
      // v - i_3(chi) = P(eta) + d(xi) + i_3(a - chi); the last part is witnessed over the base
      DiffForm back = v + artin_schreier_image(eta);
      if (mm >= 1) back += exterior_d(xi, *T);
      if (!(back == ia)) return r.fail("(c) construction mismatch");
      const DiffForm diff = a.rebased(standard_basis(B)) + chi(dec).rebased(standard_basis(B));
      if (!has_witness(diff, B)) return r.fail("(c) no witness for " + diff.to_string(B.names));
      ++recombined;
    }
  }
  r.detail << classes << " classes, " << injected << " injected poles, " << recombined << " recombinations";
}

// 2. splitting identities
void splitting(Result& r) {
  std::mt19937_64 rng(1002);
  const auto polys = places_of(T1, 3);
  int checked = 0, cross = 0;
  for (int it = 0; it < 100; ++it) {
    const Poly& P = polys[rng() % polys.size()];
    auto pl = make_place(T1, P);
    const int m = 1 + static_cast<int>(rng() % 2);
    const W1NormalForm nf = random_w1(rng, pl, m);
    const DiffForm w = milnor_split(nf);
    if (!w1_equal(residue(w, T1, pl), nf)) return r.fail("residue of tau_p is not the identity at " + P.to_string(T1.names));
    ++checked;
    for (const Poly& Q : polys) {
      if (Q == P || Q.degree(1) != P.degree(1)) continue;
      if (!residue_vanishes(w, T1, make_place(T1, Q))) return r.fail("tau_p has a residue at " + Q.to_string(T1.names));
      ++cross;
    }
  }
  r.detail << checked << " sections, " << cross << " cross residues, " << polys.size() << " places";
}

// 3. uniqueness of local decompositions
void uniqueness(Result& r) {
  std::mt19937_64 rng(1003);
  int pairs = 0, witnesses = 0;
  for (int it = 0; it < 100; ++it) {
    const int m = 1 + static_cast<int>(rng() % 2);
    const DiffForm phi = testing::random_form(rng, T1, m, 2);
    DiffForm phi2 = phi + artin_schreier_image(testing::random_form(rng, T1, m, 2, 1));
    phi2 += exterior_d(testing::random_form(rng, T1, m - 1, 2, 1), T1);
    std::set<Poly> ps = candidate_polys(phi, T1);
    for (const Poly& P : candidate_polys(phi2, T1)) ps.insert(P);
    for (const Poly& P : ps) {
      auto pl = make_place(T1, P);
      const W1NormalForm a = residue(phi, T1, pl), b = residue(phi2, T1, pl);
      if (a.psi != b.psi) return r.fail("psi tables differ at " + P.to_string(T1.names));
      if (!w1_equal(a, b)) return r.fail("phi2 classes differ at " + P.to_string(T1.names));
      const DiffForm d = milnor_split(a) + milnor_split(b);
      if (!has_witness(d, T1)) return r.fail("no witness for a recombination difference at " + P.to_string(T1.names));
      if (!d.is_zero()) ++witnesses;
    }
    ++pairs;
  }
  r.detail << pairs << " pairs, " << witnesses << " nontrivial witnesses";
}

// 4. Teichmueller lifts
void teichmuller(Result& r) {
  std::mt19937_64 rng(1004);
  const int N = 8, depth = 3;
  const std::vector<Poly> polys{X * X + X + Tp,         X * X + Tp * X + Tp,     X.pow(3) + X + Tp,
                                X.pow(3) + Tp * X + One, X * X + X + Tp * Tp + Tp + One,
                                Tp * X + One,           X + Tp,                  X * X + Tp,
                                X * X + Tp + One,       X.pow(4) + Tp * X * X + Tp, X * X + Tp.pow(3)};
  int places = 0, insep = 0;
  for (const Poly& P : polys) {
    if (!is_irreducible(P)) return r.fail("corpus polynomial is reducible: " + P.to_string(T1.names));
    auto pl = make_place(T1, P);
    ++places;
    auto agree = [&](const FuncElem& a, const FuncElem& b, int k) {
      const FuncElem d = a + b;
      return d.is_zero() || valuation(*pl, d) >= k;
    };
    for (int i = 0; i < 4; ++i) {
      const FuncElem a = random_rep(rng, *pl);
      FuncElem b = random_rep(rng, *pl);
      if (b.is_zero()) b = FuncElem::one();
      const FuncElem la = teichmuller_lift(a, pl, N).to_func(), lb = teichmuller_lift(b, pl, N).to_func();
      if (!agree(la * lb, teichmuller_lift(residue_mul(*pl, a, b), pl, N).to_func(), N))
        return r.fail("multiplicativity at " + P.to_string(T1.names));
      if (!agree(la + lb, teichmuller_lift(a + b, pl, N).to_func(), N))
        return r.fail("additivity at " + P.to_string(T1.names));
      if (!agree(la * la, teichmuller_lift(residue_mul(*pl, a, a), pl, N).to_func(), N))
        return r.fail("squaring at " + P.to_string(T1.names));
      if (reduce(*pl, la) != a) return r.fail("lift does not reduce to its residue");
      if (!pl->separable()) {
        const int M = 1 << depth;
        const FuncElem c = teichmuller_lift_recursive(a, pl, M, LeafPolicy::Canonical, depth).to_func();
        const FuncElem s = teichmuller_lift_recursive(a, pl, M, LeafPolicy::Shifted, depth).to_func();
        if (!agree(c, s, M)) return r.fail("leaf policy changes the lift at " + P.to_string(T1.names));
      }
    }
    if (pl->separable()) {
      const FuncElem th = newton_root(*pl, N).to_func(1);
      const FuncElem val = pl->p().substitute(1, th);
      if (!agree(val, FuncElem(), N)) return r.fail("Newton root at " + P.to_string(T1.names));
    } else {
      ++insep;
    }
  }
  if (insep == 0) return r.fail("no inseparable place in the corpus");
  r.detail << places << " places (" << insep << " inseparable), N = " << N;
}

// 5. residue matrices
void matrices(Result& r) {
  std::vector<Poly> corpus;
  const std::vector<Poly> c{Poly(), One, Tp, Tp + One, Tp * Tp, Tp * Tp + Tp + One};
  for (const Poly& a : c)
    for (const Poly& b : c) {
      corpus.push_back(X * X + a * X + b);
      corpus.push_back(X.pow(3) + a * X + b);
      corpus.push_back(X.pow(4) + a * X + b);
      corpus.push_back(X.pow(4) + a * X * X + b);
    }
  int separable = 0, inseparable = 0;
  for (const Poly& P : corpus) {
    if (P.is_zero() || !is_irreducible(P)) continue;
    auto pl = make_place(T1, P);
    const auto M = build_residue_matrix(pl);
    if (M.determinant().is_zero()) return r.fail("singular matrix at " + P.to_string(T1.names));
    (M.inseparable ? inseparable : separable)++;
  }
  if (separable < 20 || inseparable < 5) r.fail("corpus too small");
  r.detail << separable << " separable, " << inseparable << " inseparable";
}

// 6. norm theorem
void norms(Result& r) {
  const FuncElem t = FuncElem::var(0);
  const DiffForm dt = dlog(T1, t);
  if (!is_norm(dt, X * X + Tp, T1) || !hyperbolic_over_quotient(dt, X * X + Tp, T1))
    return r.fail("(a) dlog(t), x^2 + t");
  if (is_norm(dt, X, T1) || hyperbolic_over_quotient(dt, X, T1)) return r.fail("(b) dlog(t), x");

  std::mt19937_64 rng(1006);
  std::vector<Poly> ps;
  for (const Poly& P : places_of(T1, 3))
    if (find_parametrization(P, T1)) ps.push_back(P);
  int pairs = 0, yes = 0, no = 0;
  for (int it = 0; it < 30; ++it) {
    const Poly& P = ps[rng() % ps.size()];
    const int m = static_cast<int>(rng() % 2);
    DiffForm w(m, standard_basis(T1));
    const FuncElem a(testing::random_poly(rng, {0}, 3, 2), testing::random_nonzero(rng, {0}, 2, 2));
    w.add_term(m == 0 ? 0u : 0b01u, a);
    const bool n = is_norm(w, P, T1);
    if (n != hyperbolic_over_quotient(w, P, T1)) return r.fail("(c) disagreement at " + P.to_string(T1.names));
    ++pairs;
    (n ? yes : no)++;
  }
  if (yes == 0 || no == 0) return r.fail("(c) only one verdict exercised");

  // (d) GF(2)(t)(x1, x2)
  const Tower T3 = Tower::make({"t", "x1"}, "x2");
  const Poly x1 = Poly::var(1), x2 = Poly::var(2), t3 = Poly::var(0);
  struct Case {
    DiffForm w;
    Poly p;
    bool expect;
  };
  const std::vector<Case> cases{
      {dlog(T3, FuncElem(x1)), x2 * x2 + x1, true},
      {dlog(T3, FuncElem(t3)), x2 * x2 + x1, false},
      // t = x2 (x2 + x1) over the quotient: dlog x2 + dlog(x2 + x1) has a residue at x2
      {dlog(T3, FuncElem(t3)), x2 * x2 + x1 * x2 + t3, false},
      // t = P(x2 / x1) over the quotient
      {DiffForm::scalar(standard_basis(T3), FuncElem(t3)), x2 * x2 + x1 * x2 + t3 * x1 * x1, true},
      {dlog(T3, FuncElem(t3 + x1)), x1 * x2 + t3, false},
  };
  int two_var = 0;
  for (const Case& c : cases) {
    if (!is_irreducible(c.p)) return r.fail("(d) reducible p");
    const bool n = is_norm(c.w, c.p, T3);
    if (n != c.expect) return r.fail("(d) unexpected verdict for p = " + c.p.to_string(T3.names));
    if (n != hyperbolic_over_quotient(c.w, c.p, T3)) return r.fail("(d) disagreement for p = " + c.p.to_string(T3.names));
    ++two_var;
  }
  r.detail << pairs << " pairs (" << yes << " norms), " << two_var << " two-variable instances";
}

// 7. oracle cross-check
void oracle(Result& r) {
  std::mt19937_64 rng(1007);
  int total = 0, images = 0, agree_zero = 0, agree_nonzero = 0, unwitnessed = 0;
  for (int it = 0; it < 120; ++it) {
    const bool image = it % 2 == 0;
    const int m = static_cast<int>(rng() % 3);
    DiffForm w;
    if (image) {
      w = artin_schreier_image(testing::random_form(rng, T1, m, 2, 1));
      if (m >= 1) w += exterior_d(testing::random_form(rng, T1, m - 1, 2, 1), T1);
    } else {
      w = testing::random_form(rng, T1, m, 2, 2);
    }
    if (w.is_zero()) continue;
    const CrossReport rep = cross_check(w, T1, default_schedule(w, T1));
    ++total;
    if (rep.verdict == CrossVerdict::Conflict) return r.fail("CONFLICT on " + w.to_string(T1.names) + ": " + rep.note);
    if (image) {
      ++images;
      if (rep.verdict != CrossVerdict::AgreeZero) return r.fail(to_string(rep.verdict) + " on an image " + w.to_string(T1.names));
    }
    switch (rep.verdict) {
      case CrossVerdict::AgreeZero: ++agree_zero; break;
      case CrossVerdict::AgreeNonzero: ++agree_nonzero; break;
      default: ++unwitnessed;
    }
  }
  if (total < 100) return r.fail("fewer than 100 classes");
  r.detail << total << " classes (" << images << " images): " << agree_zero << " agree-zero, " << agree_nonzero
           << " agree-nonzero, " << unwitnessed << " zero-unwitnessed";
}

// 8. filtration vanishing
void filtration(Result& r) {
  std::mt19937_64 rng(1008);
  std::vector<Poly> by_deg[4];
  for (const Poly& P : places_of(T1, 3)) by_deg[P.degree(1)].push_back(P);
  auto poly_le = [&](unsigned deg) {
    for (;;) {
      Poly p;
      for (unsigned e = 0; e <= deg; ++e)
        if (rng() % 2) p += testing::random_nonzero(rng, {0}, 2, 2) * Poly::var(1, e);
      if (!p.is_zero()) return p;
    }
  };
  int n = 0;
  for (int it = 0; it < 50; ++it) {
    const unsigned d = 1 + static_cast<unsigned>(rng() % 3);
    const Poly& P = by_deg[d][rng() % by_deg[d].size()];
    auto pl = make_place(T1, P);
    const Poly h = testing::random_poly(rng, {0, 1}, 3, 3);
    DiffForm gen;
    if (d == 1) {
      if (rng() % 2)
        gen = make_form(T1, {{FuncElem(h), {FuncElem(testing::random_nonzero(rng, {0}, 2, 2))}}}, 1);
      else
        gen = make_form(T1, {{FuncElem(h * X), {FuncElem::var(1)}}}, 1);
    } else {
      const Poly u = poly_le(d - 1), f = poly_le(d - 1);
      gen = make_form(T1, {{FuncElem(h, u.pow(static_cast<unsigned>(rng() % 3))), {FuncElem(f)}}}, 1);
    }
    if (!residue_vanishes(gen, T1, pl)) return r.fail("nonzero residue of " + gen.to_string(T1.names) + " at " + P.to_string(T1.names));
    ++n;
  }
  r.detail << n << " generators";
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    double limit_s;
    std::function<void(Result&)> run;
  };
  const std::vector<Criterion> criteria{
      {"1 exact sequence", 120, exact_sequence}, {"2 splitting identities", 60, splitting},
      {"3 decomposition uniqueness", 60, uniqueness}, {"4 teichmuller lifts", 30, teichmuller},
      {"5 matrix invertibility", 30, matrices},  {"6 norm theorem", 120, norms},
      {"7 oracle cross-check", 180, oracle},     {"8 filtration vanishing", 30, filtration},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    Result r;
    const auto start = std::chrono::steady_clock::now();
    try {
      c.run(r);
    } catch (const std::exception& e) {
      r.fail(std::string("exception") + (r.stage.empty() ? "" : " in " + r.stage) + ": " + e.what());
    }
    const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (r.ok && s > c.limit_s) r.fail("time limit exceeded");
    if (!r.ok) ++failed;
    std::printf("%s criterion %s (%.2fs / %.0fs): %s\n", r.ok ? "PASS" : "FAIL", c.name, s, c.limit_s,
                r.detail.str().c_str());
    std::fflush(stdout);
  }
  return failed;
}
