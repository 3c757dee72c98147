#pragma once

// Recursive-descent parser for polynomial expressions.
//
//   expr    := term (('+' | '-') term)*
//   term    := unary ('*' unary)*
//   unary   := '-' unary | power
//   power   := primary ('^' INTEGER)?
//   primary := NUMBER | IDENT | '(' expr ')'
//
// NUMBER is an integer or a rational p/q written without spaces; it is a
// single token, so "1/2*x" is (1/2)*x. Decimals are rejected.

#include <algorithm>
#include <cctype>
#include <limits>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "folab/poly.hpp"

namespace folab {

struct SourcePos {
  std::size_t line = 1;
  std::size_t column = 1;
};

class ParseError : public Error {
 public:
  ParseError(ErrorKind kind, SourcePos pos, std::vector<std::string> expected, const std::string& what)
      : Error(kind, "line " + std::to_string(pos.line) + ", column " + std::to_string(pos.column) + ": " + what),
        pos_(pos),
        expected_(std::move(expected)) {}

  SourcePos pos() const { return pos_; }
  const std::vector<std::string>& expected() const { return expected_; }

 private:
  SourcePos pos_;
  std::vector<std::string> expected_;
};

struct Expr {
  enum class Kind { Literal, Variable, Neg, Add, Sub, Mul, Pow };

  Kind kind = Kind::Literal;
  SourcePos pos;
  Rat value;                 // Literal
  std::size_t var = 0;       // Variable
  std::uint32_t exponent = 0;  // Pow
  std::unique_ptr<Expr> lhs, rhs;
};

using ExprPtr = std::unique_ptr<Expr>;

namespace detail {

class ExprParser {
 public:
  ExprParser(std::string_view src, const std::vector<std::string>& vars) : src_(src), vars_(vars) { advance(); }

  ExprPtr parse() {
    ExprPtr e = expr();
    if (tok_.kind != Tok::End) fail({"operator", "end of input"}, "unexpected " + describe(tok_));
    return e;
  }

 private:
  enum class Tok { Number, Ident, Plus, Minus, Star, Caret, LParen, RParen, End };

  struct Token {
    Tok kind = Tok::End;
    std::string text;
    SourcePos pos;
  };

  static std::string describe(const Token& t) {
    if (t.kind == Tok::End) return "end of input";
    return "'" + t.text + "'";
  }

  [[noreturn]] void fail(std::vector<std::string> expected, const std::string& what, ErrorKind kind = ErrorKind::SyntaxError) {
    std::string msg = what;
    if (!expected.empty()) {
      msg += "; expected ";
      for (std::size_t i = 0; i < expected.size(); ++i) msg += (i ? ", " : "") + expected[i];
    }
    throw ParseError(kind, tok_.pos, std::move(expected), msg);
  }

  char peek(std::size_t k = 0) const { return i_ + k < src_.size() ? src_[i_ + k] : '\0'; }

  void bump() {
    if (src_[i_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++i_;
  }

  void advance() {
    while (i_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[i_]))) bump();
    tok_ = Token{};
    tok_.pos = {line_, col_};
    if (i_ >= src_.size()) {
      tok_.kind = Tok::End;
      return;
    }
    const char c = src_[i_];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      while (std::isdigit(static_cast<unsigned char>(peek()))) {
        tok_.text += peek();
        bump();
      }
      if (peek() == '/' && std::isdigit(static_cast<unsigned char>(peek(1)))) {
        tok_.text += '/';
        bump();
        while (std::isdigit(static_cast<unsigned char>(peek()))) {
          tok_.text += peek();
          bump();
        }
      }
      if (peek() == '.') {
        tok_.pos = {line_, col_};
        fail({}, "decimal notation is not supported; write rationals as p/q");
      }
      tok_.kind = Tok::Number;
      return;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      while (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_') {
        tok_.text += peek();
        bump();
      }
      tok_.kind = Tok::Ident;
      return;
    }
    tok_.text = std::string(1, c);
    switch (c) {
      case '+': tok_.kind = Tok::Plus; break;
      case '-': tok_.kind = Tok::Minus; break;
      case '*': tok_.kind = Tok::Star; break;
      case '^': tok_.kind = Tok::Caret; break;
      case '(': tok_.kind = Tok::LParen; break;
      case ')': tok_.kind = Tok::RParen; break;
      default: fail({}, "unexpected character '" + tok_.text + "'");
    }
    bump();
  }

  static ExprPtr node(Expr::Kind k, SourcePos pos, ExprPtr lhs = nullptr, ExprPtr rhs = nullptr) {
    auto e = std::make_unique<Expr>();
    e->kind = k;
    e->pos = pos;
    e->lhs = std::move(lhs);
    e->rhs = std::move(rhs);
    return e;
  }

  ExprPtr expr() {
    ExprPtr lhs = term();
    while (tok_.kind == Tok::Plus || tok_.kind == Tok::Minus) {
      const auto k = tok_.kind == Tok::Plus ? Expr::Kind::Add : Expr::Kind::Sub;
      const SourcePos pos = tok_.pos;
      advance();
      lhs = node(k, pos, std::move(lhs), term());
    }
    return lhs;
  }

  ExprPtr term() {
    ExprPtr lhs = unary();
    while (tok_.kind == Tok::Star) {
      const SourcePos pos = tok_.pos;
      advance();
      lhs = node(Expr::Kind::Mul, pos, std::move(lhs), unary());
    }
    return lhs;
  }

  ExprPtr unary() {
    if (tok_.kind == Tok::Minus) {
      const SourcePos pos = tok_.pos;
      advance();
      return node(Expr::Kind::Neg, pos, unary());
    }
    return power();
  }

  ExprPtr power() {
    ExprPtr base = primary();
    if (tok_.kind != Tok::Caret) return base;
    const SourcePos pos = tok_.pos;
    advance();
    if (tok_.kind != Tok::Number || tok_.text.find('/') != std::string::npos)
      fail({"nonnegative integer exponent"}, "bad exponent " + describe(tok_));
    Integer n(tok_.text, 10);
    if (n > std::numeric_limits<std::uint32_t>::max())
      fail({}, "exponent " + tok_.text + " is too large", ErrorKind::ExponentOverflow);
    auto e = node(Expr::Kind::Pow, pos, std::move(base));
    e->exponent = static_cast<std::uint32_t>(n.get_ui());
    advance();
    if (tok_.kind == Tok::Caret) fail({}, "chained exponents are ambiguous; use parentheses");
    return e;
  }

  ExprPtr primary() {
    switch (tok_.kind) {
      case Tok::Number: {
        auto e = node(Expr::Kind::Literal, tok_.pos);
        auto slash = tok_.text.find('/');
        if (slash != std::string::npos && Integer(tok_.text.substr(slash + 1), 10) == 0)
          fail({}, "zero denominator in " + tok_.text);
        e->value = parse_rat(tok_.text);
        advance();
        return e;
      }
      case Tok::Ident: {
        auto it = std::find(vars_.begin(), vars_.end(), tok_.text);
        if (it == vars_.end()) fail({}, "unknown variable '" + tok_.text + "'", ErrorKind::UnknownVariable);
        auto e = node(Expr::Kind::Variable, tok_.pos);
        e->var = static_cast<std::size_t>(it - vars_.begin());
        advance();
        return e;
      }
      case Tok::LParen: {
        advance();
        ExprPtr e = expr();
        if (tok_.kind != Tok::RParen) fail({"')'"}, "unexpected " + describe(tok_));
        advance();
        return e;
      }
      default:
        fail({"number", "variable", "'('", "'-'"}, "unexpected " + describe(tok_));
    }
  }

  std::string_view src_;
  const std::vector<std::string>& vars_;
  std::size_t i_ = 0, line_ = 1, col_ = 1;
  Token tok_;
};

}  // namespace detail

inline ExprPtr parse_expr(std::string_view src, const std::vector<std::string>& vars) {
  return detail::ExprParser(src, vars).parse();
}

inline Poly to_poly(const Expr& e, std::size_t nvars) {
  switch (e.kind) {
    case Expr::Kind::Literal: return Poly::constant(nvars, e.value);
    case Expr::Kind::Variable: return Poly::variable(nvars, e.var);
    case Expr::Kind::Neg: return -to_poly(*e.lhs, nvars);
    case Expr::Kind::Add: return to_poly(*e.lhs, nvars) + to_poly(*e.rhs, nvars);
    case Expr::Kind::Sub: return to_poly(*e.lhs, nvars) - to_poly(*e.rhs, nvars);
    case Expr::Kind::Mul: return to_poly(*e.lhs, nvars) * to_poly(*e.rhs, nvars);
    case Expr::Kind::Pow: return pow(to_poly(*e.lhs, nvars), e.exponent);
  }
  throw std::logic_error("unhandled expression kind");
}

inline Poly parse_poly(std::string_view src, const std::vector<std::string>& vars) {
  if (vars.empty()) throw Error(ErrorKind::InvalidArgument, "no variables declared");
  return to_poly(*parse_expr(src, vars), vars.size());
}

}  // namespace folab
