#include "kmk/cli/parse.hpp"

#include <cctype>

#include "kmk/cohomology/normal_form.hpp"
#include "kmk/field_tower/factor.hpp"

namespace kmk::cli {

namespace {

std::string join_expected(const std::vector<std::string>& e) {
  std::string s;
  for (std::size_t i = 0; i < e.size(); ++i) s += (i ? ", " : "") + e[i];
  return s;
}

enum class Tok { Ident, Int, Plus, Star, Slash, Caret, LParen, RParen, End };

struct Token {
  Tok kind;
  std::string text;
  int line, col;
};

std::string describe(const Token& t) { return t.kind == Tok::End ? "end of input" : "'" + t.text + "'"; }

std::vector<Token> lex(const std::string& s) {
  std::vector<Token> out;
  int line = 1, col = 1;
  std::size_t i = 0;
  while (i < s.size()) {
    const char c = s[i];
    if (c == '\n') {
      ++line;
      col = 1;
      ++i;
      continue;
    }
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++col;
      ++i;
      continue;
    }
    const int l0 = line, c0 = col;
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t j = i;
      while (j < s.size() && (std::isalnum(static_cast<unsigned char>(s[j])) || s[j] == '_')) ++j;
      out.push_back({Tok::Ident, s.substr(i, j - i), l0, c0});
      col += static_cast<int>(j - i);
      i = j;
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t j = i;
      while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
      out.push_back({Tok::Int, s.substr(i, j - i), l0, c0});
      col += static_cast<int>(j - i);
      i = j;
      continue;
    }
    Tok k;
    switch (c) {
      case '+':
      case '-':  // characteristic 2
        k = Tok::Plus;
        break;
      case '*':
        k = Tok::Star;
        break;
      case '/':
        k = Tok::Slash;
        break;
      case '^':
        k = Tok::Caret;
        break;
      case '(':
        k = Tok::LParen;
        break;
      case ')':
        k = Tok::RParen;
        break;
      default:
        throw ParseError(l0, c0, std::string("unexpected character '") + c + "'");
    }
    out.push_back({k, std::string(1, c), l0, c0});
    ++col;
    ++i;
  }
  out.push_back({Tok::End, "", line, col});
  return out;
}

class Parser {
 public:
  Parser(const std::string& text, const Tower& tower)
      : toks_(lex(text)), tower_(tower), basis_(standard_basis(tower)) {}

  DiffForm parse_all() {
    DiffForm v = sum();
    if (peek().kind != Tok::End) fail({"'+'", "'*'", "'/'", "'^'", "end of input"});
    return v;
  }

 private:
  const Token& peek() const { return toks_[pos_]; }
  const Token& next() { return toks_[pos_++]; }
  [[noreturn]] void fail(std::vector<std::string> expected) const {
    const Token& t = peek();
    throw ParseError(t.line, t.col, std::move(expected), describe(t));
  }
  [[noreturn]] void fail_at(const Token& t, const std::string& msg) const { throw ParseError(t.line, t.col, msg); }

  DiffForm scalar(const FuncElem& f) const { return DiffForm::scalar(basis_, f); }
  static bool is_scalar(const DiffForm& w) { return w.degree() == 0; }
  static FuncElem value(const DiffForm& w) { return w.coeff(0); }

  DiffForm sum() {
    DiffForm v = product();
    while (peek().kind == Tok::Plus) {
      const Token& op = next();
      DiffForm r = product();
      if (r.degree() != v.degree()) {
        if (!v.is_zero() && !r.is_zero()) fail_at(op, "cannot add forms of degrees " + std::to_string(v.degree()) +
                                                           " and " + std::to_string(r.degree()));
        if (v.is_zero()) v = DiffForm(r.degree(), basis_);
        if (r.is_zero()) continue;
      }
      v += r;
    }
    return v;
  }

  DiffForm product() {
    DiffForm v = power();
    for (;;) {
      if (peek().kind == Tok::Star) {
        const Token& op = next();
        DiffForm r = power();
        if (is_scalar(v))
          v = r.scaled(value(v));
        else if (is_scalar(r))
          v = v.scaled(value(r));
        else
          fail_at(op, "use '^' for the wedge product of forms");
      } else if (peek().kind == Tok::Slash) {
        const Token& op = next();
        DiffForm r = power();
        if (!is_scalar(r)) fail_at(op, "division by a form");
        if (value(r).is_zero()) fail_at(op, "division by zero");
        v = v.scaled(value(r).inverse());
      } else {
        return v;
      }
    }
  }

  DiffForm power() {
    DiffForm v = atom();
    while (peek().kind == Tok::Caret) {
      const Token& op = next();
      if (peek().kind == Tok::Int) {
        const Token& e = next();
        if (!is_scalar(v)) fail_at(op, "power of a form of positive degree");
        if (e.text.size() > 6) fail_at(e, "exponent too large");
        v = scalar(value(v).pow(std::stoi(e.text)));
      } else {
        v = wedge(v, atom());
      }
    }
    return v;
  }

  DiffForm atom() {
    const Token& t = peek();
    switch (t.kind) {
      case Tok::Int:
        next();
        return scalar((t.text.back() - '0') % 2 ? FuncElem::one() : FuncElem());
      case Tok::LParen: {
        next();
        DiffForm v = sum();
        if (peek().kind != Tok::RParen) fail({"')'", "'+'", "'*'", "'/'", "'^'"});
        next();
        return v;
      }
      case Tok::Ident: {
        next();
        if (t.text == "dlog") {
          if (peek().kind != Tok::LParen) fail({"'('"});
          next();
          const Token& start = peek();
          DiffForm arg = sum();
          if (peek().kind != Tok::RParen) fail({"')'", "'+'", "'*'", "'/'", "'^'"});
          next();
          if (!is_scalar(arg)) fail_at(start, "dlog of a form of positive degree");
          if (value(arg).is_zero()) fail_at(start, "zero log argument");
          return dlog(tower_, value(arg));
        }
        const int id = tower_.id_of(t.text);
        if (id < 0 || !tower_.contains(id)) fail_at(t, "unknown variable '" + t.text + "'");
        return scalar(FuncElem::var(id));
      }
      default:
        fail({"number", "variable", "'('", "'dlog'"});
    }
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  const Tower& tower_;
  TwoBasis basis_;
};

bool is_identifier(const std::string& s) {
  if (s.empty() || !(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) return false;
  for (char c : s)
    if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_')) return false;
  return s != "dlog" && s != "inf" && s != "infinity";
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\n");
  return s.substr(b, e - b + 1);
}

}  // namespace

ParseError::ParseError(int line, int column, std::vector<std::string> expected, const std::string& found)
    : DomainError(std::to_string(line) + ":" + std::to_string(column) + ": expected " + join_expected(expected) +
                  " but found " + found),
      line_(line),
      column_(column),
      expected_(std::move(expected)) {}

ParseError::ParseError(int line, int column, const std::string& message)
    : DomainError(std::to_string(line) + ":" + std::to_string(column) + ": " + message), line_(line), column_(column) {}

Tower parse_tower(const std::string& spec) {
  std::string base, x;
  const auto semi = spec.find(';');
  if (semi == std::string::npos) {
    x = trim(spec);
  } else {
    base = spec.substr(0, semi);
    x = trim(spec.substr(semi + 1));
  }
  std::vector<std::string> names;
  std::size_t start = 0;
  if (!trim(base).empty())
    for (;;) {
      const auto comma = base.find(',', start);
      names.push_back(trim(base.substr(start, comma == std::string::npos ? std::string::npos : comma - start)));
      if (comma == std::string::npos) break;
      start = comma + 1;
    }
  for (const auto& n : names)
    if (!is_identifier(n)) throw DomainError("bad tower variable '" + n + "' in \"" + spec + "\"");
  if (!is_identifier(x)) throw DomainError("bad distinguished variable '" + x + "' in \"" + spec + "\"");
  return Tower::make(names, x);
}

DiffForm parse_form(const std::string& text, const Tower& tower) { return Parser(text, tower).parse_all(); }

FuncElem parse_scalar(const std::string& text, const Tower& tower) {
  const DiffForm w = parse_form(text, tower);
  if (w.degree() != 0) throw ParseError(1, 1, "expected a function, got a form of degree " + std::to_string(w.degree()));
  return w.coeff(0);
}

Poly parse_polynomial(const std::string& text, const Tower& tower) {
  const FuncElem f = parse_scalar(text, tower);
  if (!f.is_poly()) throw ParseError(1, 1, "expected a polynomial");
  return f.num();
}

std::shared_ptr<const Place> parse_place(const std::string& text, const Tower& tower) {
  const std::string t = trim(text);
  if (t == "inf" || t == "infinity") return make_infinity(tower);
  const Poly P = parse_polynomial(t, tower);
  if (!P.has_var(tower.x())) throw DomainError("place polynomial must involve the distinguished variable");
  if (!is_irreducible(P)) throw DomainError("place polynomial is reducible: " + P.to_string(tower.names));
  return make_place(tower, P);
}

std::string render_form(const DiffForm& w, const Tower& tower) { return w.to_string(tower.names); }

}  // namespace kmk::cli
