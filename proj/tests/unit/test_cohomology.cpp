#include <random>

#include "doctest.h"
#include "kmk/cohomology/decide.hpp"
#include "kmk/cohomology/residue_matrix.hpp"
#include "kmk/errors.hpp"
#include "support.hpp"

using namespace kmk;

namespace {

const Tower T1 = Tower::make({"t"}, "x");
const Tower T0 = Tower::make({}, "t");
const FuncElem t = FuncElem::var(0), x = FuncElem::var(1), one = FuncElem::one();
const Poly X = Poly::var(1), Tp = Poly::var(0);

DiffForm form(const Tower& T, std::vector<FormTerm> terms, int m) { return make_form(T, terms, m); }

}  // namespace

TEST_CASE("rewrite_trailing examples") {
  CHECK(rewrite_trailing(0b01, 0b11) == std::vector<uint32_t>{0b01});
  CHECK(rewrite_trailing(0b10, 0b10).empty());
  // t1 < t2 < t3, J = {t1, t3}, I = {t2, t3}
  const auto r = rewrite_trailing(0b110, 0b101);
  REQUIRE(r.size() == 1);
  CHECK(r[0] == 0b011);
  CHECK((r[0] ^ 0b101u) > r[0]);
}

TEST_CASE("rewrite_trailing always lands in shape") {
  for (uint32_t I = 0; I < 32; ++I)
    for (uint32_t J = 1; J < 32; ++J)
      for (uint32_t Ip : rewrite_trailing(I, J)) {
        CHECK(std::popcount(Ip) == std::popcount(I));
        CHECK((Ip ^ J) > Ip);
      }
}

TEST_CASE("local normal form examples") {
  auto px = make_place(T1, X);
  auto d0 = local_normal_form(form(T1, {{x, {t}}}, 1), T1, px);
  CHECK(d0.phi1.is_zero());
  CHECK(d0.psi.empty());
  CHECK(d0.phi2.is_zero());

  auto d1 = local_normal_form(form(T1, {{t / x, {t}}}, 1), T1, px);
  CHECK(d1.phi1.is_zero());
  CHECK(d1.phi2.is_zero());
  REQUIRE(d1.psi.size() == 1);
  const auto& [key, digits] = *d1.psi.begin();
  CHECK(key == std::pair<uint32_t, uint32_t>{0b01, 0b11});
  CHECK(digits == std::vector<FuncElem>{one});

  auto d2 = local_normal_form(form(T1, {{t + one, {t}}}, 1), T1, px);
  CHECK(d2.psi.empty());
  CHECK(d2.phi2.is_zero());
  CHECK(d2.phi1.coeff(0b1) == t + one);
  CHECK(chi(d2).coeff(0b1) == t + one);
  CHECK(zeta(d2).is_zero());
  CHECK_THROWS_AS(chi(d1), DomainError);
}

TEST_CASE("residue examples") {
  auto px = make_place(T1, X);
  CHECK(residue(form(T1, {{x, {t}}}, 1), T1, px).structurally_zero());
  const auto nf = residue(form(T1, {{t / x, {t}}}, 1), T1, px);
  CHECK_FALSE(nf.structurally_zero());
  // f dg/g with f, g units of degree < deg p.
  auto p2 = make_place(T1, X * X + X + Tp);
  CHECK(residue(form(T1, {{x + t, {x}}}, 1), T1, p2).structurally_zero());
  CHECK(residue(form(T1, {{x + one, {x + t}}}, 1), T1, p2).structurally_zero());
  // (1/p) dt/t has a pole of odd order.
  CHECK_FALSE(residue(form(T1, {{FuncElem(Poly::one(), X * X + X + Tp), {t}}}, 1), T1, p2).structurally_zero());
}

TEST_CASE("residue at infinity modulo dx/x") {
  CHECK(residue_infinity_mod(form(T1, {{t + one, {t}}}, 1), T1).structurally_zero());
  CHECK(residue_infinity_mod(form(T1, {{t, {x}}}, 1), T1).structurally_zero());
  const auto nf = residue_infinity_mod(form(T1, {{x, {t}}}, 1), T1);
  REQUIRE_FALSE(nf.psi.empty());
  for (const auto& [key, digits] : nf.psi)
    for (const auto& u : digits) CHECK_FALSE(u.has_var(1));
}

TEST_CASE("milnor splitting round trip examples") {
  auto px = make_place(T1, X);
  W1NormalForm nf{px, 1, {}, DiffForm(0, px->residue_basis())};
  nf.psi[{0b01, 0b11}] = {one};
  const DiffForm w = milnor_split(nf);
  CHECK(w == form(T1, {{t / x, {t}}}, 1));
  CHECK(w1_equal(residue(w, T1, px), nf));

  auto p2 = make_place(T1, X * X + X + Tp);
  W1NormalForm nf2{p2, 1, {}, DiffForm(0, p2->residue_basis())};
  nf2.phi2.add_term(0, x + t);
  CHECK(w1_equal(residue(milnor_split(nf2), T1, p2), nf2));
  CHECK_THROWS_AS(milnor_split(W1NormalForm{make_infinity(T1), 1, {}, DiffForm()}), DomainError);
}

TEST_CASE("residue matrix examples") {
  // p = x: P_0 = x reduces to 0 in F(x).
  auto Mx = build_residue_matrix(make_place(T1, X));
  REQUIRE(Mx.size() == 1);
  CHECK(Mx.entries[0][0].is_zero());

  auto M = build_residue_matrix(make_place(T1, X * X + X + Tp));
  CHECK_FALSE(M.inseparable);
  CHECK(M.support == 0b1);
  REQUIRE(M.size() == 2);
  CHECK(M.P.at(0) == x);
  CHECK(M.P.at(1).is_zero());
  CHECK(M.is_symmetric());
  CHECK(M.determinant() == reduce(*M.place, x * x));
  CHECK(M.sum_P() == x);

  auto Mi = build_residue_matrix(make_place(T1, X * X + Tp));
  CHECK(Mi.inseparable);
  CHECK(Mi.pivot_var == 0);
  REQUIRE(Mi.size() == 1);
  CHECK(Mi.P.at(0) == one);
  CHECK(Mi.entries[0][0] == reduce(*Mi.place, t));
}

TEST_CASE("convert dx/x to dp/p examples") {
  const DiffForm A = DiffForm::scalar(standard_basis(T1), one);
  auto M = build_residue_matrix(make_place(T1, X * X + X + Tp));
  auto c = convert_dx_to_dp(M, one, 1, A);
  CHECK(c.remainder_ok);
  FuncElem sum;
  for (const auto& h : c.h) sum += h;
  // sum h = g / (x p') = 1/x in F(p)
  CHECK(reduce(*M.place, sum * x) == one);

  auto c0 = convert_dx_to_dp(M, one, 0, A);
  CHECK(c0.rewritten.is_zero());
  CHECK(c0.remainder == c0.input);

  auto Mi = build_residue_matrix(make_place(T1, X * X + Tp));
  auto ci = convert_dx_to_dp(Mi, x, 2, A);
  CHECK(ci.remainder_ok);
}

TEST_CASE("decide_zero examples") {
  const DiffForm exact = form(T0, {{t, {t}}}, 1);
  auto v = decide_zero(exact, T0);
  CHECK(v.zero);

  auto v2 = decide_zero(form(T0, {{one, {t}}}, 1), T0);
  CHECK_FALSE(v2.zero);
  CHECK(v2.certificate.has_value());

  auto v3 = decide_zero(form(T1, {{t / x, {t}}}, 1), T1);
  CHECK_FALSE(v3.zero);
  CHECK(v3.reason == "nonzero-residue");

  CHECK(decide_zero(DiffForm::scalar(standard_basis(T0), one), T0).zero == false);
  CHECK(decide_zero(DiffForm::scalar(standard_basis(T0), t * t + t), T0).zero);
  CHECK_FALSE(decide_zero(DiffForm::scalar(standard_basis(T1), t / x), T1).zero);
  CHECK(decide_zero(DiffForm(2, standard_basis(T1)), T1).zero);
}

TEST_CASE("norm checker examples") {
  const DiffForm w = form(T1, {{one, {t}}}, 1);
  CHECK(is_norm(w, X * X + Tp, T1));
  CHECK(hyperbolic_over_quotient(w, X * X + Tp, T1));
  CHECK_FALSE(is_norm(w, X, T1));
  CHECK_FALSE(hyperbolic_over_quotient(w, X, T1));
  CHECK_FALSE(hyperbolic_over_quotient(w, X + Tp, T1));
  CHECK(is_norm(DiffForm(1, standard_basis(T1)), X + Tp, T1));
  CHECK_THROWS_AS(is_norm(w, X * X, T1), DomainError);
}
