#pragma once

// Recursive-descent parser for the ASCII concrete syntax.
//
//   formula  := iff
//   iff      := imp ('<->' iff)?
//   imp      := or ('->' imp)?
//   or       := and ('|' or)?
//   and      := unary ('&' and)?
//   unary    := '~' unary | '[' program ']' unary | 'bot' | ident | '(' formula ')'
//   program  := comp ('u' program)?
//   comp     := postfix (';' comp)?
//   postfix  := primary '*'*
//   primary  := ident | '?' unary | '(' program ')'
//
// Derived connectives are expanded on the fly, so the result only contains
// primitives.

#include <cctype>
#include <string>
#include <string_view>

#include "formula.hpp"

namespace pdl {

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& msg, std::size_t pos)
      : std::runtime_error(msg + " at position " + std::to_string(pos)), pos_(pos) {}
  std::size_t position() const { return pos_; }

 private:
  std::size_t pos_;
};

inline Formula make_or(Formula a, Formula b) {
  return Formula::neg(Formula::conj(Formula::neg(std::move(a)), Formula::neg(std::move(b))));
}
inline Formula make_implies(Formula a, Formula b) {
  return Formula::neg(Formula::conj(std::move(a), Formula::neg(std::move(b))));
}
inline Formula make_iff(const Formula& a, const Formula& b) {
  return Formula::conj(make_implies(a, b), make_implies(b, a));
}

namespace detail {

class Parser {
 public:
  explicit Parser(std::string_view text) : s_(text) {}

  Formula formula_eof() {
    Formula f = iff();
    skip();
    if (i_ != s_.size()) fail("unexpected trailing input");
    return f;
  }

  Program program_eof() {
    Program p = program();
    skip();
    if (i_ != s_.size()) fail("unexpected trailing input");
    return p;
  }

 private:
  std::string_view s_;
  std::size_t i_ = 0;

  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, i_); }

  void skip() {
    while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
  }

  bool eat(std::string_view tok) {
    skip();
    if (s_.substr(i_, tok.size()) == tok) {
      i_ += tok.size();
      return true;
    }
    return false;
  }

  void expect(std::string_view tok) {
    if (!eat(tok)) fail("expected '" + std::string(tok) + "'");
  }

  static bool ident_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
  }

  // Reads an identifier without consuming it when `peek_only` is set.
  std::string ident(bool peek_only = false) {
    skip();
    if (i_ + 1 < s_.size() && s_[i_] == '_' && s_[i_ + 1] == 'q')
      fail("identifiers with prefix '_q' are reserved");
    if (i_ >= s_.size() || !(s_[i_] >= 'a' && s_[i_] <= 'z')) return {};
    std::size_t j = i_;
    while (j < s_.size() && ident_char(s_[j])) ++j;
    std::string id(s_.substr(i_, j - i_));
    if (!peek_only) i_ = j;
    return id;
  }

  bool keyword(std::string_view kw) {
    std::size_t save = i_;
    if (ident(true) == kw) {
      ident();
      return true;
    }
    i_ = save;
    return false;
  }

  Formula iff() {
    Formula a = imp();
    if (eat("<->")) return make_iff(a, iff());
    return a;
  }

  Formula imp() {
    Formula a = disj();
    if (eat("->")) return make_implies(a, imp());
    return a;
  }

  Formula disj() {
    Formula a = conj();
    if (eat("|")) return make_or(a, disj());
    return a;
  }

  Formula conj() {
    Formula a = unary();
    if (eat("&")) return Formula::conj(a, conj());
    return a;
  }

  Formula unary() {
    skip();
    if (eat("~")) return Formula::neg(unary());
    if (eat("[")) {
      Program p = program();
      expect("]");
      return Formula::box(p, unary());
    }
    if (eat("(")) {
      Formula f = iff();
      expect(")");
      return f;
    }
    std::string id = ident();
    if (id.empty()) fail("expected a formula");
    if (id == "bot") return Formula::bottom();
    if (id == "u") fail("'u' is reserved for program union");
    return Formula::atom(id);
  }

  Program program() {
    Program a = comp();
    if (keyword("u")) return Program::choice(a, program());
    return a;
  }

  Program comp() {
    Program a = postfix();
    if (eat(";")) return Program::seq(a, comp());
    return a;
  }

  Program postfix() {
    Program a = primary();
    while (eat("*")) a = Program::star(a);
    return a;
  }

  Program primary() {
    skip();
    if (eat("?")) return Program::test(unary());
    if (eat("(")) {
      Program p = program();
      expect(")");
      return p;
    }
    std::string id = ident();
    if (id.empty()) fail("expected a program");
    if (id == "u" || id == "bot") fail("'" + id + "' is a reserved word");
    return Program::atomic(id);
  }
};

}  // namespace detail

inline Formula parse_formula(std::string_view text) { return detail::Parser(text).formula_eof(); }
inline Program parse_program(std::string_view text) { return detail::Parser(text).program_eof(); }

}  // namespace pdl
