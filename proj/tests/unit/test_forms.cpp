#include <random>

#include "doctest.h"
#include "kmk/errors.hpp"
#include "kmk/forms/kato.hpp"
#include "support.hpp"

using namespace kmk;

namespace {

const Tower T1 = Tower::make({"t"}, "x");
const Tower T2 = Tower::make({"t1", "t2"}, "x");
const FuncElem t = FuncElem::var(0), x = FuncElem::var(1);
const FuncElem one = FuncElem::one();
constexpr uint32_t kT = 1, kX = 2;

DiffForm form_of(const Tower& tw, int m, std::initializer_list<std::pair<uint32_t, FuncElem>> terms) {
  DiffForm w(m, standard_basis(tw));
  for (const auto& [mask, a] : terms) w.add_term(mask, a);
  return w;
}

}  // namespace

TEST_CASE("make_form examples") {
  CHECK(make_form(T1, {{one, {t}}}) == form_of(T1, 1, {{kT, one}}));
  CHECK(make_form(T1, {{one, {t * x}}}) == form_of(T1, 1, {{kT, one}, {kX, one}}));
  CHECK(make_form(T1, {{one, {t + x}}}) == form_of(T1, 1, {{kT, t / (t + x)}, {kX, x / (t + x)}}));
  CHECK_THROWS_AS(make_form(T1, {{one, {FuncElem()}}}), DomainError);
}

TEST_CASE("wedge examples") {
  const DiffForm dt = make_form(T1, {{one, {t}}}), dx = make_form(T1, {{one, {x}}});
  CHECK(wedge(dt, dt).is_zero());
  CHECK(wedge(dt, dx) == form_of(T1, 2, {{kT | kX, one}}));
  CHECK(wedge(dt.scaled(t), dx.scaled(x)) == form_of(T1, 2, {{kT | kX, t * x}}));
}

TEST_CASE("exterior derivative examples") {
  CHECK(exterior_d(t, T1) == form_of(T1, 1, {{kT, t}}));
  CHECK(exterior_d(t * t, T1).is_zero());
  CHECK(exterior_d(t * x, T1) == form_of(T1, 1, {{kT, t * x}, {kX, t * x}}));
}

TEST_CASE("frobenius and artin-schreier examples") {
  CHECK(frobenius(form_of(T1, 1, {{kT, t}})) == form_of(T1, 1, {{kT, t * t}}));
  CHECK(frobenius(form_of(T1, 1, {{kT, one}})) == form_of(T1, 1, {{kT, one}}));
  CHECK(frobenius(form_of(T1, 2, {{kT | kX, t + one}})) == form_of(T1, 2, {{kT | kX, t * t + one}}));
  CHECK(artin_schreier_image(form_of(T1, 1, {{kT, t}})) == form_of(T1, 1, {{kT, t * t + t}}));
  CHECK(artin_schreier_image(DiffForm(1, standard_basis(T1))).is_zero());
}

TEST_CASE("kato symbol examples") {
  CHECK(kato_symbol(form_of(T1, 1, {{kT, t}})).to_string() == "<<t; t>>");
  CHECK(kato_symbol(DiffForm(1, standard_basis(T1))).empty());
  CHECK(kato_symbol(form_of(T1, 2, {{kT | kX, t + x}})).to_string() == "<<t, x; x + t>>");
}

TEST_CASE("d o d = 0 on random forms") {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 500; ++i) {
    const Tower& tw = (i % 2) ? T1 : T2;
    const int m = static_cast<int>(rng() % 2);
    const DiffForm w = testing::random_form(rng, tw, m, 2);
    CHECK(exterior_d(exterior_d(w, tw), tw).is_zero());
  }
}

TEST_CASE("dlog of a sum") {
  std::mt19937_64 rng(12);
  for (int i = 0; i < 100; ++i) {
    const FuncElem a = testing::random_func(rng, T2.order, 2), b = testing::random_func(rng, T2.order, 2);
    if (a.is_zero() || b.is_zero() || (a + b).is_zero()) continue;
    const DiffForm lhs = make_form(T2, {{one, {a + b}}});
    const DiffForm rhs = make_form(T2, {{a / (a + b), {a}}, {b / (a + b), {b}}});
    CHECK(lhs == rhs);
  }
}

TEST_CASE("wedge is associative and alternating") {
  std::mt19937_64 rng(13);
  for (int i = 0; i < 100; ++i) {
    const DiffForm a = testing::random_form(rng, T2, 1, 2), b = testing::random_form(rng, T2, 1, 2),
                   c = testing::random_form(rng, T2, 1, 2);
    CHECK(wedge(wedge(a, b), c) == wedge(a, wedge(b, c)));
    CHECK(wedge(a, a).is_zero());
  }
}

TEST_CASE("artin-schreier image is additive and equals frobenius plus identity") {
  std::mt19937_64 rng(14);
  for (int i = 0; i < 100; ++i) {
    const DiffForm a = testing::random_form(rng, T2, 1, 2), b = testing::random_form(rng, T2, 1, 2);
    CHECK(artin_schreier_image(a + b) == artin_schreier_image(a) + artin_schreier_image(b));
    CHECK(artin_schreier_image(a) + a == frobenius(a));
  }
}

TEST_CASE("a da/a = da") {
  std::mt19937_64 rng(15);
  for (int i = 0; i < 100; ++i) {
    const FuncElem a = testing::random_func(rng, T2.order, 2);
    if (a.is_zero()) continue;
    CHECK(make_form(T2, {{a, {a}}}) == exterior_d(a, T2));
  }
}

TEST_CASE("basis change round trip") {
  // {t, x^2 + x + t} is a 2-basis of GF(2)(t, x).
  TwoBasis c = standard_basis(T1);
  c[1] = Label{Label::Kind::Unif, -1, x * x + x + t, "p"};
  const BasisChange bc(T1, c);
  std::mt19937_64 rng(16);
  for (int i = 0; i < 50; ++i) {
    const DiffForm w = testing::random_form(rng, T1, static_cast<int>(rng() % 3), 2);
    CHECK(bc.to_standard(bc.from_standard(w)) == w);
  }
  const FuncElem p = x * x + x + t;
  CHECK(bc.partial(p, 1) == one);
  CHECK(bc.partial(p, 0).is_zero());
  CHECK(bc.partial(x, 0) == one);  // x = p + x^2 + t and x^2 is a constant
}
