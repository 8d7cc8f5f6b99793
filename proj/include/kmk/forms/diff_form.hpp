#pragma once

#include <functional>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "kmk/field_tower/tower.hpp"

namespace kmk {

// sum_I a_I dt_I/t_I over an ordered 2-basis; I is a bit mask over basis
// positions with popcount equal to the degree.
class DiffForm {
 public:
  DiffForm() = default;
  DiffForm(int degree, TwoBasis basis) : degree_(degree), basis_(std::move(basis)) {}
  static DiffForm scalar(TwoBasis basis, const FuncElem& a);

  int degree() const { return degree_; }
  const TwoBasis& basis() const { return basis_; }
  const std::map<uint32_t, FuncElem>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  FuncElem coeff(uint32_t mask) const;

  void add_term(uint32_t mask, const FuncElem& a);
  DiffForm& operator+=(const DiffForm& o);
  friend DiffForm operator+(DiffForm a, const DiffForm& b) { return a += b; }
  friend DiffForm operator-(DiffForm a, const DiffForm& b) { return a += b; }
  DiffForm scaled(const FuncElem& c) const;
  DiffForm map_coefficients(const std::function<FuncElem(const FuncElem&)>& f) const;
  // Same terms over another basis of equal length (positions are kept).
  DiffForm rebased(TwoBasis basis) const;

  bool operator==(const DiffForm& o) const {
    return degree_ == o.degree_ && basis_ == o.basis_ && terms_ == o.terms_;
  }
  // "a * dlog(t) ^ dlog(x) + ..."; "0" for the zero form.  Variables are
  // named by `names`, falling back to the basis labels.
  std::string to_string(const std::vector<std::string>& names = {}) const;

 private:
  int degree_ = 0;
  TwoBasis basis_;
  std::map<uint32_t, FuncElem> terms_;
};

DiffForm wedge(const DiffForm& a, const DiffForm& b);

// Log-coordinates over the standard basis of a tower.
DiffForm dlog(const Tower& tower, const FuncElem& f);
DiffForm exterior_d(const DiffForm& w, const Tower& tower);
DiffForm exterior_d(const FuncElem& a, const Tower& tower);

struct FormTerm {
  FuncElem a;
  std::vector<FuncElem> logs;
};
// sum a db_1/b_1 ^ ... ^ db_m/b_m expanded over the standard basis.
DiffForm make_form(const Tower& tower, const std::vector<FormTerm>& terms, int degree = -1);

DiffForm frobenius(const DiffForm& w);
DiffForm artin_schreier_image(const DiffForm& w);

// Change of coordinates between the standard basis of a tower and another
// 2-basis of the same field whose labels carry their values.
class BasisChange {
 public:
  BasisChange(const Tower& tower, TwoBasis basis);
  const Tower& tower() const { return tower_; }
  const TwoBasis& basis() const { return basis_; }
  DiffForm to_standard(const DiffForm& w) const;
  DiffForm from_standard(const DiffForm& w) const;
  // Derivative of f with respect to basis element k.
  FuncElem partial(const FuncElem& f, int k) const;

 private:
  Tower tower_;
  TwoBasis basis_, standard_;
  std::vector<DiffForm> to_std_;    // dlog b_k over the standard basis
  std::vector<DiffForm> from_std_;  // dlog s_j over `basis_`
};

}  // namespace kmk
