#pragma once

#include <memory>
#include <string>
#include <vector>

#include "kmk/errors.hpp"
#include "kmk/field_tower/place.hpp"
#include "kmk/forms/diff_form.hpp"

namespace kmk::cli {

class ParseError : public DomainError {
 public:
  ParseError(int line, int column, std::vector<std::string> expected, const std::string& found);
  ParseError(int line, int column, const std::string& message);
  int line() const { return line_; }
  int column() const { return column_; }
  const std::vector<std::string>& expected() const { return expected_; }

 private:
  int line_, column_;
  std::vector<std::string> expected_;
};

// "t1,t2;x", "t;x", "x" or ";x".
Tower parse_tower(const std::string& spec);

// expr := term ('+' term)*, with '*' scaling, '/' by scalars, '^' an integer
// power of a scalar or a wedge of forms, and dlog(ratfun).
DiffForm parse_form(const std::string& text, const Tower& tower);
FuncElem parse_scalar(const std::string& text, const Tower& tower);
Poly parse_polynomial(const std::string& text, const Tower& tower);
// "inf" / "infinity" or an irreducible polynomial involving x.
std::shared_ptr<const Place> parse_place(const std::string& text, const Tower& tower);

std::string render_form(const DiffForm& w, const Tower& tower);

}  // namespace kmk::cli
