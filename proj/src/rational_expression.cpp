#include "liepoisson/rational_expression.hpp"

#include <algorithm>

namespace liepoisson {

namespace {

// Common exponential unit of a family of expressions: per coordinate, the
// minimum exponential exponent across every term (a term without the factor
// counts as 0). Dividing by this unit clears negative exponents and strips
// shared positive ones.
std::map<Coordinate, Rational> common_exp_unit(const std::vector<const Expression*>& exprs) {
  std::map<Coordinate, Rational> lows;
  std::set<Coordinate> seen;
  for (const Expression* e : exprs)
    for (const auto& [key, c] : e->terms())
      for (const auto& [i, l] : key.exps) seen.insert(i);
  for (Coordinate i : seen) {
    Rational low;
    bool first = true;
    for (const Expression* e : exprs)
      for (const auto& [key, c] : e->terms()) {
        auto it = key.exps.find(i);
        Rational l = (it == key.exps.end()) ? Rational(0) : it->second;
        if (first || l < low) {
          low = l;
          first = false;
        }
      }
    if (low != 0) lows.emplace(i, low);
  }
  return lows;
}

Rational coefficient_content(const Expression& e) {
  Integer num_gcd = 0, den_lcm = 1;
  for (const auto& [key, c] : e.terms()) {
    Integer n = boost::multiprecision::abs(numerator(c));
    Integer d = denominator(c);
    num_gcd = boost::multiprecision::gcd(num_gcd, n);
    den_lcm = den_lcm / boost::multiprecision::gcd(den_lcm, d) * d;
  }
  if (num_gcd == 0) return Rational(1);
  return Rational(num_gcd, den_lcm);
}

// Sign of the term that renders first (name-based order), so normalization
// does not depend on symbol interning order.
int leading_sign(const Expression& e) {
  if (e.is_zero()) return 1;
  const std::pair<const TermKey, Rational>* best = nullptr;
  std::string best_render;
  for (const auto& term : e.terms()) {
    std::string r = to_string(Expression::term(Rational(1), term.first));
    if (!best || r < best_render) {
      best = &term;
      best_render = std::move(r);
    }
  }
  return best->second < 0 ? -1 : 1;
}

}  // namespace

RationalExpression::RationalExpression(Expression n, Expression d) : num(std::move(n)), den(std::move(d)) {
  if (den.is_zero()) throw EvaluationError("RationalExpression: zero denominator");
  normalize();
}

void RationalExpression::normalize() {
  if (den.is_zero()) throw EvaluationError("RationalExpression: zero denominator");
  if (num.is_zero()) {
    den = Expression::constant(Rational(1));
    return;
  }
  auto unit_exps = common_exp_unit({&num, &den});
  if (!unit_exps.empty()) {
    TermKey key;
    key.exps = unit_exps;
    Expression unit = Expression::term(Rational(1), std::move(key));
    num = divide_by_term(num, unit);
    den = divide_by_term(den, unit);
  }
  if (is_invertible_term(den)) {
    num = divide_by_term(num, den);
    den = Expression::constant(Rational(1));
    return;
  }
  Rational scale = coefficient_content(den) * leading_sign(den);
  if (scale != 1) {
    Expression unit = Expression::constant(scale);
    num = divide_by_term(num, unit);
    den = divide_by_term(den, unit);
  }
}

RationalExpression add(const RationalExpression& a, const RationalExpression& b) {
  if (a.den == b.den) return RationalExpression(add(a.num, b.num), a.den);
  return RationalExpression(add(mul(a.num, b.den), mul(b.num, a.den)), mul(a.den, b.den));
}

RationalExpression sub(const RationalExpression& a, const RationalExpression& b) {
  if (a.den == b.den) return RationalExpression(sub(a.num, b.num), a.den);
  return RationalExpression(sub(mul(a.num, b.den), mul(b.num, a.den)), mul(a.den, b.den));
}

RationalExpression neg(const RationalExpression& a) {
  RationalExpression out = a;
  out.num = neg(out.num);
  return out;
}

RationalExpression mul(const RationalExpression& a, const RationalExpression& b) {
  return RationalExpression(mul(a.num, b.num), mul(a.den, b.den));
}

RationalExpression mul(const RationalExpression& a, const Rational& c) {
  RationalExpression out = a;
  out.num = mul(out.num, c);
  if (c == 0) out.den = Expression::constant(Rational(1));
  return out;
}

RationalExpression div(const RationalExpression& a, const RationalExpression& b) {
  if (b.num.is_zero()) throw EvaluationError("RationalExpression: division by zero");
  return RationalExpression(mul(a.num, b.den), mul(a.den, b.num));
}

bool equal(const RationalExpression& a, const RationalExpression& b) {
  return sub(mul(a.num, b.den), mul(b.num, a.den)).is_zero();
}

bool is_zero(const RationalExpression& a) { return a.num.is_zero(); }

RationalExpression partial(const RationalExpression& a, Coordinate i) {
  Expression dden = partial(a.den, i);
  if (dden.is_zero()) return RationalExpression(partial(a.num, i), a.den);
  Expression n = sub(mul(partial(a.num, i), a.den), mul(a.num, dden));
  return RationalExpression(std::move(n), mul(a.den, a.den));
}

double evaluate(const RationalExpression& a, const std::map<Coordinate, Rational>& point,
                const std::map<Symbol, Rational>& params) {
  double d = evaluate(a.den, point, params);
  if (d == 0.0) throw EvaluationError("RationalExpression: denominator vanishes at the point");
  return evaluate(a.num, point, params) / d;
}

Rational evaluate_exact(const RationalExpression& a, const std::map<Coordinate, Rational>& point,
                        const std::map<Symbol, Rational>& params) {
  Rational d = evaluate_exact(a.den, point, params);
  if (d == 0) throw EvaluationError("RationalExpression: denominator vanishes at the point");
  return evaluate_exact(a.num, point, params) / d;
}

std::string to_string(const RationalExpression& a) {
  if (a.den.is_rational_constant() && a.den.rational_value() == 1) return to_string(a.num);
  return "(" + to_string(a.num) + ") / (" + to_string(a.den) + ")";
}

}  // namespace liepoisson
