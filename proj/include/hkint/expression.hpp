#pragma once

// Formulas in x for the command line.
//
//   expr   := term (('+' | '-') term)*
//   term   := factor (('*' | '/') factor)*
//   factor := unary ('^' factor)?          right associative
//   unary  := '-' unary | atom             so -x^2 is (-x)^2
//   atom   := number | 'x' | 'pi' | func '(' expr ')' | '(' expr ')'
//   func   := sin | cos | tan | exp | ln | sqrt | abs

#include <array>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstddef>
#include <memory>
#include <numbers>
#include <optional>
#include <string>
#include <string_view>
#include <system_error>
#include <utility>
#include <vector>

#include "hkint/errors.hpp"
#include "hkint/integrate.hpp"

namespace hkint {

enum class Func { sin, cos, tan, exp, ln, sqrt, abs };

inline constexpr std::array<std::pair<std::string_view, Func>, 7> kFunctions{{{"sin", Func::sin},
                                                                            {"cos", Func::cos},
                                                                            {"tan", Func::tan},
                                                                            {"exp", Func::exp},
                                                                            {"ln", Func::ln},
                                                                            {"sqrt", Func::sqrt},
                                                                            {"abs", Func::abs}}};

constexpr std::string_view to_string(Func f) noexcept {
  for (const auto& [name, fn] : kFunctions) {
    if (fn == f) return name;
  }
  return "?";
}

class Expression {
 public:
  enum class Kind { number, var, pi, neg, add, sub, mul, div, pow, call };

  struct Node {
    Kind kind{};
    double value{};  // number
    Func func{};     // call
    std::shared_ptr<const Node> lhs;  // operand of neg / call
    std::shared_ptr<const Node> rhs;
  };
  using Ptr = std::shared_ptr<const Node>;

  static Expression number(double v) { return Expression(leaf(Kind::number, v)); }
  static Expression var() { return Expression(leaf(Kind::var, 0.0)); }
  static Expression pi() { return Expression(leaf(Kind::pi, 0.0)); }
  static Expression neg(const Expression& e) { return unary(Kind::neg, Func{}, e); }
  static Expression call(Func f, const Expression& e) { return unary(Kind::call, f, e); }
  static Expression binary(Kind k, const Expression& l, const Expression& r) {
    auto n = std::make_shared<Node>();
    n->kind = k;
    n->lhs = l.root_;
    n->rhs = r.root_;
    return Expression(std::move(n));
  }

  const Node& root() const noexcept { return *root_; }

  /// Evaluation in binary64. Faults (division by zero, sqrt of a negative,
  /// ln of a non-positive, any non-finite intermediate) throw EvaluationError.
  double operator()(double x) const { return eval(*root_, x); }

  /// Minimal-parenthesis rendering that parses back to the same tree.
  std::string to_string() const { return print(*root_); }

  friend bool operator==(const Expression& a, const Expression& b) { return equal(*a.root_, *b.root_); }

  explicit Expression(Ptr root) : root_(std::move(root)) {}

 private:
  static Ptr leaf(Kind k, double v) {
    auto n = std::make_shared<Node>();
    n->kind = k;
    n->value = v;
    return n;
  }
  static Expression unary(Kind k, Func f, const Expression& e) {
    auto n = std::make_shared<Node>();
    n->kind = k;
    n->func = f;
    n->lhs = e.root_;
    return Expression(std::move(n));
  }

  static bool equal(const Node& a, const Node& b) {
    if (a.kind != b.kind) return false;
    switch (a.kind) {
      case Kind::number:
        return a.value == b.value;
      case Kind::var:
      case Kind::pi:
        return true;
      case Kind::call:
        return a.func == b.func && equal(*a.lhs, *b.lhs);
      case Kind::neg:
        return equal(*a.lhs, *b.lhs);
      default:
        return equal(*a.lhs, *b.lhs) && equal(*a.rhs, *b.rhs);
    }
  }

  [[noreturn]] static void fault(const char* what, double x) {
    std::string msg = what;
    msg += " at x = ";
    msg += detail::format_double(x);
    throw EvaluationError(msg, x);
  }

  static double checked(double v, double x) {
    if (!std::isfinite(v)) fault("non-finite value", x);
    return v;
  }

  static double eval(const Node& n, double x) {
    switch (n.kind) {
      case Kind::number:
        return n.value;
      case Kind::var:
        return x;
      case Kind::pi:
        return std::numbers::pi;
      case Kind::neg:
        return -eval(*n.lhs, x);
      case Kind::add:
        return checked(eval(*n.lhs, x) + eval(*n.rhs, x), x);
      case Kind::sub:
        return checked(eval(*n.lhs, x) - eval(*n.rhs, x), x);
      case Kind::mul:
        return checked(eval(*n.lhs, x) * eval(*n.rhs, x), x);
      case Kind::div: {
        const double num = eval(*n.lhs, x);
        const double den = eval(*n.rhs, x);
        if (den == 0.0) fault("division by zero", x);
        return checked(num / den, x);
      }
      case Kind::pow: {
        const double base = eval(*n.lhs, x);
        const double ex = eval(*n.rhs, x);
        if (base == 0.0 && ex < 0.0) fault("division by zero", x);
        if (base < 0.0 && ex != std::trunc(ex)) fault("negative base with fractional exponent", x);
        return checked(std::pow(base, ex), x);
      }
      case Kind::call:
        return call_func(n.func, eval(*n.lhs, x), x);
    }
    return 0.0;
  }

  static double call_func(Func f, double v, double x) {
    switch (f) {
      case Func::sin:
        return std::sin(v);
      case Func::cos:
        return std::cos(v);
      case Func::tan:
        return checked(std::tan(v), x);
      case Func::exp:
        return checked(std::exp(v), x);
      case Func::ln:
        if (!(v > 0.0)) fault("ln of a non-positive number", x);
        return std::log(v);
      case Func::sqrt:
        if (v < 0.0) fault("sqrt of a negative number", x);
        return std::sqrt(v);
      case Func::abs:
        return std::abs(v);
    }
    return 0.0;
  }

  static int precedence(const Node& n) {
    switch (n.kind) {
      case Kind::add:
      case Kind::sub:
        return 1;
      case Kind::mul:
      case Kind::div:
        return 2;
      case Kind::pow:
        return 3;
      case Kind::neg:
        return 4;
      default:
        return 5;
    }
  }

  static std::string wrap(const Node& n, bool parens) {
    return parens ? "(" + print(n) + ")" : print(n);
  }

  static std::string print(const Node& n) {
    switch (n.kind) {
      case Kind::number:
        return detail::format_double(n.value);
      case Kind::var:
        return "x";
      case Kind::pi:
        return "pi";
      case Kind::neg:
        // the operand of unary minus is itself a unary
        return "-" + wrap(*n.lhs, precedence(*n.lhs) < 4);
      case Kind::call:
        return std::string(hkint::to_string(n.func)) + "(" + print(*n.lhs) + ")";
      case Kind::pow:
        return wrap(*n.lhs, precedence(*n.lhs) < 4) + "^" + wrap(*n.rhs, precedence(*n.rhs) < 3);
      default: {
        const int p = precedence(n);
        const char* op = n.kind == Kind::add ? "+" : n.kind == Kind::sub ? "-" : n.kind == Kind::mul ? "*" : "/";
        // left associative: an equal-precedence right operand needs parentheses
        return wrap(*n.lhs, precedence(*n.lhs) < p) + op + wrap(*n.rhs, precedence(*n.rhs) <= p);
      }
    }
  }

  Ptr root_;
};

namespace detail {

class Parser {
 public:
  explicit Parser(std::string_view text) : s_(text) {}

  Expression parse() {
    Expression e = expr();
    skip();
    if (pos_ != s_.size()) fail("unexpected input", {"+", "-", "*", "/", "^", "end of input"});
    return e;
  }

 private:
  using Kind = Expression::Kind;

  [[noreturn]] void fail(const std::string& what, std::vector<std::string> expected) const {
    std::string msg = what + " at offset " + std::to_string(pos_) + "; expected ";
    for (std::size_t i = 0; i < expected.size(); ++i) msg += (i ? ", " : "") + ("'" + expected[i] + "'");
    throw ParseError(msg, pos_, std::move(expected));
  }

  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  Expression expr() {
    Expression e = term();
    for (;;) {
      if (accept('+')) {
        e = Expression::binary(Kind::add, e, term());
      } else if (accept('-')) {
        e = Expression::binary(Kind::sub, e, term());
      } else {
        return e;
      }
    }
  }

  Expression term() {
    Expression e = factor();
    for (;;) {
      if (accept('*')) {
        e = Expression::binary(Kind::mul, e, factor());
      } else if (accept('/')) {
        e = Expression::binary(Kind::div, e, factor());
      } else {
        return e;
      }
    }
  }

  Expression factor() {
    Expression base = unary();
    if (accept('^')) return Expression::binary(Kind::pow, base, factor());
    return base;
  }

  Expression unary() {
    if (accept('-')) return Expression::neg(unary());
    return atom();
  }

  static std::vector<std::string> atom_expected() { return {"number", "x", "pi", "function", "(", "-"}; }

  Expression atom() {
    skip();
    if (pos_ >= s_.size()) fail("unexpected end of input", atom_expected());
    const char c = s_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
    if (std::isalpha(static_cast<unsigned char>(c))) return identifier();
    if (accept('(')) {
      Expression e = expr();
      if (!accept(')')) fail("unbalanced parenthesis", {")"});
      return e;
    }
    fail(std::string("unexpected character '") + c + "'", atom_expected());
  }

  Expression number() {
    // digits [. digits] [e [+-] digits], or . digits
    const std::size_t start = pos_;
    auto digits = [&] {
      const std::size_t from = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      return pos_ - from;
    };
    std::size_t n = digits();
    if (pos_ < s_.size() && s_[pos_] == '.') {
      ++pos_;
      n += digits();
    }
    if (n == 0) {
      pos_ = start;
      fail("malformed number", {"digit"});
    }
    if (pos_ < s_.size() && (s_[pos_] == 'e' || s_[pos_] == 'E')) {
      ++pos_;
      if (pos_ < s_.size() && (s_[pos_] == '+' || s_[pos_] == '-')) ++pos_;
      if (digits() == 0) fail("malformed exponent", {"digit"});
    }
    double v = 0.0;
    const auto res = std::from_chars(s_.data() + start, s_.data() + pos_, v);
    if (res.ec != std::errc() || res.ptr != s_.data() + pos_ || !std::isfinite(v)) {
      pos_ = start;
      fail("number out of range", {"number"});
    }
    return Expression::number(v);
  }

  Expression identifier() {
    const std::size_t start = pos_;
    while (pos_ < s_.size() && std::isalnum(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    const std::string_view name = s_.substr(start, pos_ - start);
    if (name == "x") return Expression::var();
    if (name == "pi") return Expression::pi();
    for (const auto& [fname, fn] : kFunctions) {
      if (name == fname) {
        if (!accept('(')) fail("function " + std::string(name) + " needs an argument", {"("});
        Expression arg = expr();
        if (!accept(')')) fail("unbalanced parenthesis", {")"});
        return Expression::call(fn, arg);
      }
    }
    pos_ = start;
    std::vector<std::string> expected{"x", "pi"};
    for (const auto& f : kFunctions) expected.emplace_back(f.first);
    fail("unknown identifier '" + std::string(name) + "'", std::move(expected));
  }

  std::string_view s_;
  std::size_t pos_{0};
};

}  // namespace detail

inline Expression parse_expression(std::string_view text) { return detail::Parser(text).parse(); }

inline double eval_expression(const Expression& e, double x) { return e(x); }

/// Integrand for a parsed formula; the listed singular points evaluate to 0.
inline Integrand make_integrand(const Expression& e, std::vector<double> singular_points, std::string label = {}) {
  if (label.empty()) label = e.to_string();
  return with_singular_points([e](double x) { return e(x); }, std::move(singular_points), std::move(label));
}

}  // namespace hkint
