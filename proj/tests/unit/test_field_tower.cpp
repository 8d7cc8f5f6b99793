#include <random>

#include "doctest.h"
#include "kmk/errors.hpp"
#include "kmk/field_tower/partial_fractions.hpp"
#include "kmk/field_tower/place.hpp"
#include "support.hpp"

using namespace kmk;

namespace {

const Tower T1 = Tower::make({"t"}, "x");
const Tower T2 = Tower::make({"t1", "t2"}, "x");
const FuncElem t = FuncElem::var(0), x = FuncElem::var(1);
const FuncElem one = FuncElem::one();

FuncElem random_func(std::mt19937_64& rng, const std::vector<int>& vars, unsigned deg) {
  Poly n = testing::random_poly(rng, vars, deg / 2, 4);
  Poly d = testing::random_nonzero(rng, vars, deg / 2, 3);
  return FuncElem(n, d);
}

}  // namespace

TEST_CASE("two-basis decomposition examples") {
  const std::vector<int> vt{0};
  auto d1 = decompose_standard(t, vt);
  CHECK(d1.size() == 1);
  CHECK(d1.at(1) == one);
  auto d2 = decompose_standard(t.pow(3) + t.pow(2), vt);
  CHECK(d2.at(0) == t);
  CHECK(d2.at(1) == t);
  auto d3 = decompose_standard(t.inverse(), vt);
  CHECK(d3.at(1) == t.inverse());
  CHECK_THROWS_AS(decompose_standard(x, vt), DomainError);
}

TEST_CASE("decompose then recombine is the identity") {
  std::mt19937_64 rng(3);
  const Tower T3 = Tower::make({"a", "b"}, "c");
  const TwoBasis B = standard_basis(T3);
  for (int i = 0; i < 1000; ++i) {
    const FuncElem f = random_func(rng, {0, 1, 2}, 6);
    REQUIRE(recombine(decompose_standard(f, T3.order), B) == f);
  }
}

TEST_CASE("multi-index order is total and addition is symmetric difference") {
  std::mt19937_64 rng(5);
  for (int i = 0; i < 500; ++i) {
    const uint32_t a = rng() % 64, b = rng() % 64, c = rng() % 64;
    CHECK(((a < b) + (b < a) + (a == b)) == 1);
    if (a < b && b < c) CHECK(a < c);
    CHECK(((a ^ b) ^ b) == a);
    // J + I > I iff the largest element of J is not in I.
    if (b != 0) {
      const int top = 31 - __builtin_clz(b);
      CHECK(((a ^ b) > a) == !((a >> top) & 1u));
    }
  }
}

TEST_CASE("partial derivative: Leibniz and squares") {
  std::mt19937_64 rng(9);
  for (int i = 0; i < 200; ++i) {
    const FuncElem f = random_func(rng, {0, 1}, 4), g = random_func(rng, {0, 1}, 4);
    CHECK(partial_derivative(f * g, 0) == partial_derivative(f, 0) * g + f * partial_derivative(g, 0));
    CHECK(partial_derivative(f.square(), 1).is_zero());
  }
  CHECK(partial_derivative(t * x, 0) == x);
  CHECK(partial_derivative(t * t, 0).is_zero());
  CHECK(partial_derivative(t.pow(3) + x, 0) == t * t);
}

TEST_CASE("separability and the dropped index") {
  const Poly X = Poly::var(1), Tp = Poly::var(0);
  CHECK(is_separable(X * X + X + Tp, 1));
  CHECK_FALSE(is_separable(X * X + Tp, 1));
  CHECK(is_separable(X, 1));
  CHECK(inseparable_drop_index(T1, X * X + Tp) == 0);
  const Poly t1 = Poly::var(0), t2 = Poly::var(1), X2 = Poly::var(2);
  CHECK(inseparable_drop_index(T2, X2 * X2 + t1 * t2 * t2) == 0);
  CHECK(inseparable_drop_index(T2, X2 * X2 + t1 * t2) == 1);
  CHECK_THROWS_AS(inseparable_drop_index(T1, X * X + X + Tp), DomainError);
}

TEST_CASE("place certificates express the eliminated variable over C_p") {
  const Poly X = Poly::var(1), Tp = Poly::var(0);
  for (const Poly& P : {X * X + X + Tp, X * X + Tp, X.pow(4) + Tp * X * X + Tp, X, X + Tp, X.pow(3) + Tp * X + Tp}) {
    const Place pl = Place::finite(T1, P);
    const FuncElem y = FuncElem::var(pl.eliminated_var());
    CHECK(recombine(pl.certificate(), pl.completion_basis()) == y);
  }
  // t1 = (x/t2)^2 + p (1/t2)^2 for p = x^2 + t1 t2^2.
  const Poly t1 = Poly::var(0), t2 = Poly::var(1), X2 = Poly::var(2);
  const Place pl = Place::finite(T2, X2 * X2 + t1 * t2 * t2);
  CHECK(pl.drop_var() == 0);
  const auto& cert = pl.certificate();
  // C_p = [t2, x, p]
  CHECK(cert.at(0) == FuncElem(X2, t2));
  CHECK(cert.at(pl.pi_bit()) == FuncElem(Poly::one(), t2));
  const Place inf = Place::infinity(T1);
  CHECK(recombine(inf.certificate(), inf.completion_basis()) == x);
}

TEST_CASE("decomposition over a completion basis recombines") {
  std::mt19937_64 rng(21);
  const Poly X = Poly::var(1), Tp = Poly::var(0);
  for (const Poly& P : {X * X + X + Tp, X * X + Tp, X.pow(3) + Tp}) {
    const Place pl = Place::finite(T1, P);
    for (int i = 0; i < 50; ++i) {
      const FuncElem f = random_func(rng, {0, 1}, 4);
      REQUIRE(recombine(pl.decompose(f), pl.completion_basis()) == f);
    }
  }
}

TEST_CASE("partial fractions") {
  const Poly X = Poly::var(1), Tp = Poly::var(0);
  auto pf = partial_fractions(FuncElem(Poly::one(), X * X + X), 1);
  REQUIRE(pf.terms.size() == 2);
  CHECK(pf.poly_part.is_zero());
  for (auto& term : pf.terms) CHECK(term.h == one);
  auto pf2 = partial_fractions(FuncElem(X, X + Poly::one()), 1);
  CHECK(pf2.poly_part == one);
  REQUIRE(pf2.terms.size() == 1);
  CHECK(pf2.terms[0].h == one);
  const FuncElem f3 = FuncElem(X * X + Tp, X * (X + Tp));
  CHECK(partial_fractions(f3, 1).recombine(1) == f3);
  std::mt19937_64 rng(33);
  for (int i = 0; i < 100; ++i) {
    const FuncElem f = random_func(rng, {0, 1}, 6);
    REQUIRE(partial_fractions(f, 1).recombine(1) == f);
  }
  auto parts = split_by_powers(FuncElem(X * X * X + Poly::one()), X * X + Tp, 2, 1);
  // x^3 + 1 = x (x^2 + t) + (t x + 1)
  CHECK(parts[0] == x);
  CHECK(parts[1] == t * x + one);
}
