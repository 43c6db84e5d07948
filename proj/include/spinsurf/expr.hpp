#ifndef SPINSURF_EXPR_HPP
#define SPINSURF_EXPR_HPP

// Complex expressions in the single variable z:
//   expr    := term (('+' | '-') term)*
//   term    := unary (('*' | '/') unary)*
//   unary   := ('-' | '+') unary | power
//   power   := primary ('^' unary)?          right-associative, integer exponent
//   primary := number | 'z' | 'i' | ('exp' | 'sin' | 'cos') '(' expr ')' | '(' expr ')'

#include <complex>
#include <string>
#include <vector>

#include "spinsurf/error.hpp"

namespace spinsurf {

class Expr {
 public:
  enum class Kind { Literal, Variable, Neg, Add, Sub, Mul, Div, Pow, Exp, Sin, Cos };

  struct Node {
    Kind kind = Kind::Literal;
    std::complex<double> value;
    int lhs = -1;
    int rhs = -1;
    int exponent = 0;
  };

  /// Throws ParseError with the byte offset of the offending input.
  static Expr parse(const std::string& source);

  std::complex<double> operator()(std::complex<double> z) const { return eval(root_, z); }
  const std::string& source() const { return source_; }
  const std::vector<Node>& nodes() const { return nodes_; }
  int root() const { return root_; }
  bool depends_on_z() const { return depends(root_); }

 private:
  friend class ExprParser;
  std::complex<double> eval(int node, std::complex<double> z) const;
  bool depends(int node) const;

  std::string source_;
  std::vector<Node> nodes_;
  int root_ = -1;
};

}  // namespace spinsurf

#endif  // SPINSURF_EXPR_HPP
