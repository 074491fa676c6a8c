#pragma once

#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "liepoisson/rational.hpp"
#include "liepoisson/symbols.hpp"

namespace liepoisson {

// Coordinates are 1-based indices x_1..x_m.
using Coordinate = int;

enum class TrigKind : int { sin = 0, cos = 1 };

struct TrigFactor {
  TrigKind kind;
  Rational freq;  // strictly positive in canonical form

  friend bool operator<(const TrigFactor& a, const TrigFactor& b) {
    if (a.kind != b.kind) return a.kind < b.kind;
    return a.freq < b.freq;
  }
  friend bool operator==(const TrigFactor& a, const TrigFactor& b) {
    return a.kind == b.kind && a.freq == b.freq;
  }
};

// Multiplicative part of a term: parameter monomial (exponents may be
// negative), coordinate monomial (exponents >= 1), exponential factors
// e^{lambda*x_i} (lambda != 0) and at most one sin/cos factor per coordinate.
struct TermKey {
  std::map<Symbol, int> params;
  std::map<Coordinate, int> mono;
  std::map<Coordinate, Rational> exps;
  std::map<Coordinate, TrigFactor> trig;

  friend bool operator<(const TermKey& a, const TermKey& b) {
    if (a.mono != b.mono) return a.mono < b.mono;
    if (a.exps != b.exps) return a.exps < b.exps;
    if (a.trig != b.trig) return a.trig < b.trig;
    return a.params < b.params;
  }
  friend bool operator==(const TermKey& a, const TermKey& b) {
    return a.params == b.params && a.mono == b.mono && a.exps == b.exps && a.trig == b.trig;
  }
};

// Function-basis part of a term (parameter monomial stripped); distinct keys
// are linearly independent functions of the coordinates, which is what makes
// the zero test complete and coefficient collection sound.
struct BasisKey {
  std::map<Coordinate, int> mono;
  std::map<Coordinate, Rational> exps;
  std::map<Coordinate, TrigFactor> trig;

  friend bool operator<(const BasisKey& a, const BasisKey& b) {
    if (a.mono != b.mono) return a.mono < b.mono;
    if (a.exps != b.exps) return a.exps < b.exps;
    return a.trig < b.trig;
  }
  friend bool operator==(const BasisKey& a, const BasisKey& b) {
    return a.mono == b.mono && a.exps == b.exps && a.trig == b.trig;
  }
};

class UnboundSymbolError : public std::runtime_error {
 public:
  explicit UnboundSymbolError(const std::string& what) : std::runtime_error(what) {}
};

class NonlinearityError : public std::runtime_error {
 public:
  explicit NonlinearityError(const std::string& what) : std::runtime_error(what) {}
};

class EvaluationError : public std::runtime_error {
 public:
  explicit EvaluationError(const std::string& what) : std::runtime_error(what) {}
};

// Canonical sum of terms; the empty term map is zero. Immutable by
// convention: all operations are pure functions returning new values.
class Expression {
 public:
  using TermMap = std::map<TermKey, Rational>;

  Expression() = default;

  static Expression constant(const Rational& c);
  static Expression symbol(Symbol s);
  static Expression symbol(const std::string& name);
  static Expression coordinate(Coordinate i);
  // Single term c * key with trig frequencies already positive.
  static Expression term(const Rational& c, TermKey key);

  bool is_zero() const { return terms_.empty(); }
  const TermMap& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }

  // True when the expression is a single constant (possibly zero).
  bool is_rational_constant() const;
  // Value of a constant expression; throws if not constant.
  Rational rational_value() const;

  // Adds c * key into this expression (canonicalizing); internal builder.
  void accumulate(const TermKey& key, const Rational& c);

  friend bool operator==(const Expression& a, const Expression& b) { return a.terms_ == b.terms_; }
  friend bool operator!=(const Expression& a, const Expression& b) { return !(a == b); }

 private:
  TermMap terms_;
};

Expression add(const Expression& a, const Expression& b);
Expression sub(const Expression& a, const Expression& b);
Expression neg(const Expression& a);
Expression mul(const Expression& a, const Expression& b);
Expression mul(const Expression& a, const Rational& c);
Expression pow(const Expression& a, int k);  // k >= 0, or a invertible

inline Expression operator+(const Expression& a, const Expression& b) { return add(a, b); }
inline Expression operator-(const Expression& a, const Expression& b) { return sub(a, b); }
inline Expression operator-(const Expression& a) { return neg(a); }
inline Expression operator*(const Expression& a, const Expression& b) { return mul(a, b); }
inline Expression operator*(const Expression& a, const Rational& c) { return mul(a, c); }
inline Expression operator*(const Rational& c, const Expression& a) { return mul(a, c); }

bool is_zero(const Expression& a);

// A term is invertible when it has no coordinate monomial and no trig factor
// (rational coefficient, parameter Laurent monomial, exponential factors).
bool is_invertible_term(const Expression& a);
// Exact division by a single invertible term.
Expression divide_by_term(const Expression& a, const Expression& unit);

Expression partial(const Expression& a, Coordinate i);

// Floating-point evaluation; every free coordinate and parameter must be
// bound or an UnboundSymbolError naming the missing binding is thrown.
double evaluate(const Expression& a, const std::map<Coordinate, Rational>& point,
                const std::map<Symbol, Rational>& params);

// Exact rational evaluation; exponential and trig factors are only allowed
// on coordinates bound to 0 (e^0, sin 0, cos 0).
Rational evaluate_exact(const Expression& a, const std::map<Coordinate, Rational>& point,
                        const std::map<Symbol, Rational>& params);

// Substitute a coordinate by an exact rational value. Exponential/trig
// factors on that coordinate require value 0.
Expression substitute_coordinate(const Expression& a, Coordinate i, const Rational& value);

// Simultaneous substitution of parameter symbols by expressions.
Expression substitute_symbols(const Expression& a, const std::map<Symbol, Expression>& values);

// Free symbols / coordinates appearing in the expression.
std::set<Symbol> free_symbols(const Expression& a);
std::set<Coordinate> free_coordinates(const Expression& a);

// Exact linear form over a set of unknown parameter symbols.
struct LinearForm {
  Expression constant;                   // unknown-free part
  std::map<Symbol, Expression> coeffs;   // unknown -> unknown-free coefficient
};

// Groups terms of an expression affine in `unknowns` by function-basis key.
// Throws NonlinearityError when any term has total unknown-degree >= 2 (or a
// negative unknown exponent). Reassembling sum(key * form) reproduces a.
std::map<BasisKey, LinearForm> collect_linear(const Expression& a, const std::set<Symbol>& unknowns);

// Expression with the given basis key as its only (coefficient-1) term.
Expression basis_expression(const BasisKey& key);

// Deterministic rendering (terms ordered by symbol name, coordinates
// ascending); output is re-parseable by parse_expression.
std::string to_string(const Expression& a);

}  // namespace liepoisson
