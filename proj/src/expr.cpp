#include "spinsurf/expr.hpp"

#include <cctype>
#include <cmath>

namespace spinsurf {

class ExprParser {
 public:
  explicit ExprParser(const std::string& s) : src_(s) { out_.source_ = s; }

  Expr run() {
    out_.root_ = expr();
    skip();
    if (pos_ < src_.size()) throw ParseError(pos_, "unexpected '" + std::string(1, src_[pos_]) + "'");
    return std::move(out_);
  }

 private:
  using Kind = Expr::Kind;

  void skip() {
    while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
  }
  bool accept(char c) {
    skip();
    if (pos_ < src_.size() && src_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  void expect(char c) {
    if (!accept(c)) {
      if (pos_ >= src_.size()) throw ParseError(pos_, std::string("expected '") + c + "' before end of input");
      throw ParseError(pos_, std::string("expected '") + c + "'");
    }
  }

  int add(Expr::Node n) {
    out_.nodes_.push_back(n);
    return static_cast<int>(out_.nodes_.size()) - 1;
  }
  int binary(Kind k, int a, int b) { return add({k, {}, a, b, 0}); }

  int expr() {
    int lhs = term();
    for (;;) {
      if (accept('+')) lhs = binary(Kind::Add, lhs, term());
      else if (accept('-')) lhs = binary(Kind::Sub, lhs, term());
      else return lhs;
    }
  }

  int term() {
    int lhs = unary();
    for (;;) {
      if (accept('*')) lhs = binary(Kind::Mul, lhs, unary());
      else if (accept('/')) lhs = binary(Kind::Div, lhs, unary());
      else return lhs;
    }
  }

  int unary() {
    if (accept('-')) return add({Kind::Neg, {}, unary(), -1, 0});
    if (accept('+')) return unary();
    return power();
  }

  int power() {
    const int base = primary();
    skip();
    if (!accept('^')) return base;
    skip();
    const std::size_t at = pos_;
    const int e = unary();
    if (out_.depends(e)) throw ParseError(at, "exponent must not depend on z");
    const std::complex<double> v = out_.eval(e, {});
    const double r = std::round(v.real());
    if (v.imag() != 0.0 || r != v.real() || std::abs(r) > 1e6) throw ParseError(at, "non-integer exponent");
    return add({Kind::Pow, {}, base, -1, static_cast<int>(r)});
  }

  int primary() {
    skip();
    if (pos_ >= src_.size()) throw ParseError(pos_, "unexpected end of input");
    const char c = src_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
    if (c == '(') {
      ++pos_;
      const int e = expr();
      expect(')');
      return e;
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      const std::size_t start = pos_;
      while (pos_ < src_.size() && std::isalnum(static_cast<unsigned char>(src_[pos_]))) ++pos_;
      const std::string id = src_.substr(start, pos_ - start);
      if (id == "z") return add({Kind::Variable, {}, -1, -1, 0});
      if (id == "i") return add({Kind::Literal, {0.0, 1.0}, -1, -1, 0});
      Kind k;
      if (id == "exp") k = Kind::Exp;
      else if (id == "sin") k = Kind::Sin;
      else if (id == "cos") k = Kind::Cos;
      else throw ParseError(start, "unknown identifier '" + id + "'");
      expect('(');
      const int arg = expr();
      expect(')');
      return add({k, {}, arg, -1, 0});
    }
    throw ParseError(pos_, "unexpected '" + std::string(1, c) + "'");
  }

  int number() {
    const std::size_t start = pos_;
    auto digits = [&] {
      std::size_t n = 0;
      while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) ++pos_, ++n;
      return n;
    };
    std::size_t n = digits();
    if (pos_ < src_.size() && src_[pos_] == '.') {
      ++pos_;
      n += digits();
    }
    if (n == 0) throw ParseError(start, "malformed number");
    if (pos_ < src_.size() && (src_[pos_] == 'e' || src_[pos_] == 'E')) {
      const std::size_t mark = pos_;
      ++pos_;
      if (pos_ < src_.size() && (src_[pos_] == '+' || src_[pos_] == '-')) ++pos_;
      if (digits() == 0) throw ParseError(mark, "malformed exponent in number");
    }
    return add({Kind::Literal, {std::stod(src_.substr(start, pos_ - start)), 0.0}, -1, -1, 0});
  }

  const std::string& src_;
  std::size_t pos_ = 0;
  Expr out_;
};

Expr Expr::parse(const std::string& source) {
  for (std::size_t k = 0; k < source.size(); ++k)
    if (static_cast<unsigned char>(source[k]) > 127) throw ParseError(k, "non-ASCII character");
  return ExprParser(source).run();
}

bool Expr::depends(int node) const {
  const Node& n = nodes_[node];
  if (n.kind == Kind::Variable) return true;
  return (n.lhs >= 0 && depends(n.lhs)) || (n.rhs >= 0 && depends(n.rhs));
}

std::complex<double> Expr::eval(int node, std::complex<double> z) const {
  const Node& n = nodes_[node];
  switch (n.kind) {
    case Kind::Literal: return n.value;
    case Kind::Variable: return z;
    case Kind::Neg: return -eval(n.lhs, z);
    case Kind::Add: return eval(n.lhs, z) + eval(n.rhs, z);
    case Kind::Sub: return eval(n.lhs, z) - eval(n.rhs, z);
    case Kind::Mul: return eval(n.lhs, z) * eval(n.rhs, z);
    case Kind::Div: {
      const std::complex<double> d = eval(n.rhs, z);
      if (d == 0.0) return {INFINITY, INFINITY};
      return eval(n.lhs, z) / d;
    }
    case Kind::Pow: {
      const std::complex<double> b = eval(n.lhs, z);
      std::complex<double> r = 1.0;
      for (int k = 0; k < std::abs(n.exponent); ++k) r *= b;
      if (n.exponent >= 0) return r;
      if (r == 0.0) return {INFINITY, INFINITY};
      return 1.0 / r;
    }
    case Kind::Exp: return std::exp(eval(n.lhs, z));
    case Kind::Sin: return std::sin(eval(n.lhs, z));
    case Kind::Cos: return std::cos(eval(n.lhs, z));
  }
  return {};
}

}  // namespace spinsurf
