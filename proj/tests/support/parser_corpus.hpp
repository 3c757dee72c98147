#pragma once

#include <cctype>
#include <stdexcept>
#include <string>
#include <vector>

#include "folab/parser.hpp"

namespace folab::testing {

/// Shunting-yard evaluator over Q, written independently of the library parser.
inline Rat oracle_eval(const std::string& src, const std::vector<std::string>& vars, const std::vector<Rat>& point) {
  enum Op { Add, Sub, Mul, Neg, Pow, LParen };
  auto prec = [](Op op) {
    switch (op) {
      case Add: case Sub: return 1;
      case Mul: return 2;
      case Neg: return 3;
      case Pow: return 4;
      default: return 0;
    }
  };
  std::vector<Rat> vals;
  std::vector<Op> ops;
  auto apply = [&](Op op) {
    if (op == Neg) {
      vals.back() = -vals.back();
      return;
    }
    Rat b = vals.back();
    vals.pop_back();
    Rat& a = vals.back();
    switch (op) {
      case Add: a += b; break;
      case Sub: a -= b; break;
      case Mul: a *= b; break;
      case Pow: {
        Rat r(1);
        for (unsigned long k = 0; k < b.get_num().get_ui(); ++k) r *= a;
        a = r;
        break;
      }
      default: throw std::logic_error("bad op");
    }
  };
  auto push_binary = [&](Op op) {
    const bool right = op == Pow;
    while (!ops.empty() && ops.back() != LParen &&
           (prec(ops.back()) > prec(op) || (!right && prec(ops.back()) == prec(op)))) {
      apply(ops.back());
      ops.pop_back();
    }
    ops.push_back(op);
  };
  bool expect_operand = true;
  for (std::size_t i = 0; i < src.size();) {
    const char c = src[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
    } else if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t j = i;
      while (j < src.size() && (std::isdigit(static_cast<unsigned char>(src[j])) || src[j] == '/')) ++j;
      vals.push_back(Rat(src.substr(i, j - i)));
      vals.back().canonicalize();
      i = j;
      expect_operand = false;
    } else if (std::isalpha(static_cast<unsigned char>(c))) {
      std::size_t j = i;
      while (j < src.size() && std::isalnum(static_cast<unsigned char>(src[j]))) ++j;
      const std::string name = src.substr(i, j - i);
      std::size_t k = 0;
      while (vars.at(k) != name) ++k;
      vals.push_back(point.at(k));
      i = j;
      expect_operand = false;
    } else if (c == '(') {
      ops.push_back(LParen);
      ++i;
      expect_operand = true;
    } else if (c == ')') {
      while (ops.back() != LParen) {
        apply(ops.back());
        ops.pop_back();
      }
      ops.pop_back();
      ++i;
      expect_operand = false;
    } else {
      if (c == '-' && expect_operand) {
        ops.push_back(Neg);
      } else {
        push_binary(c == '+' ? Add : c == '-' ? Sub : c == '*' ? Mul : Pow);
      }
      ++i;
      expect_operand = true;
    }
  }
  while (!ops.empty()) {
    apply(ops.back());
    ops.pop_back();
  }
  return vals.at(0);
}

inline const std::vector<std::string>& corpus_vars() {
  static const std::vector<std::string> v{"x", "y", "z"};
  return v;
}

inline const std::vector<std::string>& parser_corpus() {
  static const std::vector<std::string> c{
      "0",
      "1",
      "-1",
      "x",
      "-x",
      "--x",
      "x + y",
      "x - y - z",
      "x - (y - z)",
      "x*y*z",
      "x^2*y^3",
      "-x^2",
      "(-x)^2",
      "-(x)^3",
      "2^3",
      "1/2*x - x",
      "3/4",
      "-7/21*y",
      "x^4 + y^4",
      "y^2 - x^3",
      "y^2 - x^3 + 2*x*y",
      "x*y*(y - x)*(y + x)",
      "(x + y)^5",
      "(x - 1)^3 - (x^3 - 3*x^2 + 3*x - 1)",
      "(1/2*x + 1/3*y)^2",
      "x^0",
      "(x + y + z)^0",
      "x^1",
      "0*x + 0*y",
      "2*x - 2*x",
      "x*(y + z) - x*y - x*z",
      "((x))",
      "(((x + 1)))*((y - 1))",
      "x + y*z",
      "(x + y)*z",
      "x*y + y*z + z*x",
      "x^2 - 2*x*y + y^2",
      "(x - y)^2 - x^2 + 2*x*y - y^2",
      "z^3 - 3*x*y*z",
      "x^3 + y^3 + z^3",
      "100000000000000000000*x - 99999999999999999999*x",
      "123456789/987654321*x*y",
      "-1/3 - 2/3",
      "x - -y",
      "x * -y",
      "-x * -y",
      "2*-3",
      "(x^2)^0 + 0",
      "(x^2)^3 - x^6",
      "x^10 - y^10",
      "(x + 2*y - 3*z)^3",
      "x*y - y*x",
      "1/2 + 1/3 + 1/6",
      "-(x - y)*(x + y)",
      "z^2*x^2 - 2",
      "x + y + z - 1",
      "(y - 2*x)*(y + 3*x)*(y - x)",
      "0/5*x + 5",
      "x^2*y - y^2*x + x*y^2 - x^2*y",
      "(1 - x)*(1 + x)*(1 + x^2)",
  };
  return c;
}

struct ErrorFixture {
  std::string src;
  std::size_t line;
  std::size_t column;
  ErrorKind kind;
};

inline const std::vector<ErrorFixture>& parser_error_fixtures() {
  static const std::vector<ErrorFixture> f{
      {"x + ", 1, 5, ErrorKind::SyntaxError},
      {"", 1, 1, ErrorKind::SyntaxError},
      {"x +* y", 1, 4, ErrorKind::SyntaxError},
      {"(x + y", 1, 7, ErrorKind::SyntaxError},
      {"x + y)", 1, 6, ErrorKind::SyntaxError},
      {"x y", 1, 3, ErrorKind::SyntaxError},
      {"x^y", 1, 3, ErrorKind::SyntaxError},
      {"x^-1", 1, 3, ErrorKind::SyntaxError},
      {"x^1/2", 1, 3, ErrorKind::SyntaxError},
      {"x^2^3", 1, 4, ErrorKind::SyntaxError},
      {"1.5*x", 1, 2, ErrorKind::SyntaxError},
      {"x + 1/0", 1, 5, ErrorKind::SyntaxError},
      {"x # y", 1, 3, ErrorKind::SyntaxError},
      {"w + x", 1, 1, ErrorKind::UnknownVariable},
      {"x + 2*foo", 1, 7, ErrorKind::UnknownVariable},
      {"x\n+ )", 2, 3, ErrorKind::SyntaxError},
      {"x +\n\n  y *", 3, 6, ErrorKind::SyntaxError},
      {"x^99999999999", 1, 3, ErrorKind::ExponentOverflow},
  };
  return f;
}

}  // namespace folab::testing
