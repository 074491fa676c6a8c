#pragma once

#include "liepoisson/expression.hpp"

namespace liepoisson {

// Fraction of two expressions. No multivariate gcd is attempted; the
// normalization removes common exponential unit factors and extracts the
// rational content/sign of the denominator, and equality is decided by
// cross-multiplication (sound because the ring's zero test is complete).
struct RationalExpression {
  Expression num;
  Expression den = Expression::constant(Rational(1));

  RationalExpression() = default;
  explicit RationalExpression(Expression n) : num(std::move(n)) {}
  RationalExpression(Expression n, Expression d);

  static RationalExpression constant(const Rational& c) {
    return RationalExpression(Expression::constant(c));
  }

  bool is_zero() const { return num.is_zero(); }
  void normalize();
};

RationalExpression add(const RationalExpression& a, const RationalExpression& b);
RationalExpression sub(const RationalExpression& a, const RationalExpression& b);
RationalExpression neg(const RationalExpression& a);
RationalExpression mul(const RationalExpression& a, const RationalExpression& b);
RationalExpression mul(const RationalExpression& a, const Rational& c);
RationalExpression div(const RationalExpression& a, const RationalExpression& b);

inline RationalExpression operator+(const RationalExpression& a, const RationalExpression& b) {
  return add(a, b);
}
inline RationalExpression operator-(const RationalExpression& a, const RationalExpression& b) {
  return sub(a, b);
}
inline RationalExpression operator-(const RationalExpression& a) { return neg(a); }
inline RationalExpression operator*(const RationalExpression& a, const RationalExpression& b) {
  return mul(a, b);
}

bool equal(const RationalExpression& a, const RationalExpression& b);
bool is_zero(const RationalExpression& a);

RationalExpression partial(const RationalExpression& a, Coordinate i);

double evaluate(const RationalExpression& a, const std::map<Coordinate, Rational>& point,
                const std::map<Symbol, Rational>& params);
Rational evaluate_exact(const RationalExpression& a, const std::map<Coordinate, Rational>& point,
                        const std::map<Symbol, Rational>& params);

std::string to_string(const RationalExpression& a);

}  // namespace liepoisson
