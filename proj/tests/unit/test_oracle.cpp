#include <random>

#include "doctest.h"
#include "kmk/errors.hpp"
#include "kmk/oracle/oracle.hpp"
#include "support.hpp"

using namespace kmk;

namespace {

const Tower T0 = Tower::make({}, "t");
const Tower T1 = Tower::make({"t"}, "x");
const FuncElem t = FuncElem::var(0), x = FuncElem::var(1), one = FuncElem::one();

// Random form whose coefficients lie in the window.
DiffForm window_form(std::mt19937_64& rng, const Tower& T, int m, const MonomialWindow& win) {
  const TwoBasis basis = standard_basis(T);
  DiffForm w(m, basis);
  if (m < 0) return w;
  std::vector<uint32_t> masks;
  for (uint32_t mask = 0; mask < (1u << basis.size()); ++mask)
    if (std::popcount(mask) == m) masks.push_back(mask);
  if (masks.empty()) return w;
  for (int i = 0; i < 2; ++i) {
    Monomial mon;
    unsigned left = win.degree;
    for (int v : T.order) {
      const unsigned e = static_cast<unsigned>(rng() % (left + 1));
      mon.set_exp(v, e);
      left -= e;
    }
    const unsigned e = static_cast<unsigned>(rng() % (win.denominator_exponent + 1));
    w.add_term(masks[rng() % masks.size()], FuncElem(Poly(mon), win.denominator(e)));
  }
  return w;
}

}  // namespace

TEST_CASE("witness search examples") {
  const DiffForm tdt = make_form(T0, {{t, {t}}}, 1);
  const MonomialWindow win{Poly::var(0), 2, 2};
  auto w1 = witness_search(artin_schreier_image(tdt), T0, win);
  REQUIRE(w1);
  auto w2 = witness_search(tdt, T0, win);
  REQUIRE(w2);
  CHECK(w2->eta.is_zero());
  CHECK(w2->xi.coeff(0) == t);

  const DiffForm bad = make_form(T1, {{t / x, {t}}}, 1);
  for (unsigned k = 1; k <= 4; ++k) CHECK_FALSE(witness_search(bad, T1, MonomialWindow{Poly::var(1), k, k}));
  CHECK_FALSE(witness_search(make_form(T0, {{one, {t}}}, 1), T0, win));
  // outside the window closure
  CHECK_FALSE(witness_search(make_form(T1, {{FuncElem(Poly::one(), Poly::var(0)), {x}}}, 1), T1, win));
  CHECK(parse_schedule("2,4,8") == std::vector<unsigned>{2, 4, 8});
  CHECK_THROWS_AS(parse_schedule("2,,8"), DomainError);
}

TEST_CASE("witness search finds every in-window image") {
  std::mt19937_64 rng(201);
  const Poly X = Poly::var(1), Tp = Poly::var(0);
  const MonomialWindow win{X * (X + Tp), 2, 2};
  for (int it = 0; it < 100; ++it) {
    const int m = static_cast<int>(rng() % 3);
    const DiffForm eta = window_form(rng, T1, m, win);
    const DiffForm xi = window_form(rng, T1, m - 1, win);
    DiffForm w = artin_schreier_image(eta);
    if (m >= 1) w += exterior_d(xi, T1);
    auto found = witness_search(w, T1, win);
    REQUIRE(found);
    // a larger window keeps the witness
    REQUIRE(witness_search(w, T1, MonomialWindow{win.u, 3, 3}));
  }
}

TEST_CASE("capped windows") {
  const Poly X = Poly::var(1), Tp = Poly::var(0);
  // t/(x^2 (x + t)) dlog(t): x appears squared, x + t once
  const DiffForm w = make_form(T1, {{t / (x * x * (x + t)), {t}}}, 1);
  const auto caps = window_caps(w, T1);
  REQUIRE(caps.size() == 2);
  for (const auto& [f, c] : caps) CHECK(c == (f == X ? 2u : 1u));
  const auto sched = default_schedule(w, T1, {1, 3});
  CHECK(sched[1].denominator(3) == X * X * (X + Tp));
  CHECK(sched[1].denominator(1) == X * (X + Tp));
  CHECK(MonomialWindow{X, 2, 2}.denominator(2) == X * X);

  std::mt19937_64 rng(202);
  const MonomialWindow win{X * (X + Tp), 2, 2, {{X, 1}, {X + Tp, 2}}};
  for (int it = 0; it < 60; ++it) {
    const int m = static_cast<int>(rng() % 3);
    const DiffForm eta = window_form(rng, T1, m, win);
    const DiffForm xi = window_form(rng, T1, m - 1, win);
    DiffForm v = artin_schreier_image(eta);
    if (m >= 1) v += exterior_d(xi, T1);
    REQUIRE(witness_search(v, T1, win));
    REQUIRE(witness_search(v, T1, MonomialWindow{win.u, 3, 3, win.caps}));
  }
}

TEST_CASE("cross check examples") {
  const auto s0 = [](const DiffForm& w, const Tower& T) { return default_schedule(w, T, {2, 4}); };
  const DiffForm tdt = make_form(T0, {{t, {t}}}, 1);
  CHECK(cross_check(tdt, T0, s0(tdt, T0)).verdict == CrossVerdict::AgreeZero);
  const DiffForm bad = make_form(T1, {{t / x, {t}}}, 1);
  CHECK(cross_check(bad, T1, s0(bad, T1)).verdict == CrossVerdict::AgreeNonzero);
  std::mt19937_64 rng(203);
  for (int it = 0; it < 20; ++it) {
    const DiffForm w = artin_schreier_image(testing::random_form(rng, T1, 1, 1, 1));
    if (w.is_zero()) continue;
    const auto rep = cross_check(w, T1, s0(w, T1));
    REQUIRE(rep.verdict == CrossVerdict::AgreeZero);
  }
}
