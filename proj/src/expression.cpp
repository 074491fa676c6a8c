#include "liepoisson/expression.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace liepoisson {

Rational rational_from_string(const std::string& s) {
  auto slash = s.find('/');
  try {
    if (slash == std::string::npos) return Rational(Integer(s));
    Integer num(s.substr(0, slash));
    Integer den(s.substr(slash + 1));
    if (den == 0) throw std::domain_error("rational_from_string: zero denominator");
    return Rational(num, den);
  } catch (const std::domain_error&) {
    throw;
  } catch (const std::exception&) {
    throw std::domain_error("rational_from_string: malformed rational '" + s + "'");
  }
}

bool rational_sqrt(const Rational& r, Rational& out) {
  if (r < 0) return false;
  Integer n = numerator(r), d = denominator(r);
  Integer sn = boost::multiprecision::sqrt(n), sd = boost::multiprecision::sqrt(d);
  if (sn * sn != n || sd * sd != d) return false;
  out = Rational(sn, sd);
  return true;
}

Expression Expression::constant(const Rational& c) {
  Expression e;
  if (c != 0) e.terms_.emplace(TermKey{}, c);
  return e;
}

Expression Expression::symbol(Symbol s) {
  TermKey k;
  k.params[s] = 1;
  return term(Rational(1), std::move(k));
}

Expression Expression::symbol(const std::string& name) { return symbol(intern_symbol(name)); }

Expression Expression::coordinate(Coordinate i) {
  if (i < 1) throw std::domain_error("coordinate index must be >= 1");
  TermKey k;
  k.mono[i] = 1;
  return term(Rational(1), std::move(k));
}

Expression Expression::term(const Rational& c, TermKey key) {
  Expression e;
  if (c != 0) e.terms_.emplace(std::move(key), c);
  return e;
}

bool Expression::is_rational_constant() const {
  if (terms_.empty()) return true;
  return terms_.size() == 1 && terms_.begin()->first == TermKey{};
}

Rational Expression::rational_value() const {
  if (terms_.empty()) return Rational(0);
  if (!is_rational_constant())
    throw EvaluationError("rational_value: expression is not a rational constant: " + to_string(*this));
  return terms_.begin()->second;
}

void Expression::accumulate(const TermKey& key, const Rational& c) {
  if (c == 0) return;
  auto it = terms_.find(key);
  if (it == terms_.end()) {
    terms_.emplace(key, c);
    return;
  }
  it->second += c;
  if (it->second == 0) terms_.erase(it);
}

Expression add(const Expression& a, const Expression& b) {
  Expression out = a;
  for (const auto& [key, c] : b.terms()) out.accumulate(key, c);
  return out;
}

Expression sub(const Expression& a, const Expression& b) {
  Expression out = a;
  for (const auto& [key, c] : b.terms()) out.accumulate(key, -c);
  return out;
}

Expression neg(const Expression& a) {
  Expression out;
  for (const auto& [key, c] : a.terms()) out.accumulate(key, -c);
  return out;
}

namespace {

// One partially-built product term during trig linearization.
struct PartialTerm {
  Rational coeff;
  std::map<Coordinate, TrigFactor> trig;
};

// Appends a raw (kind, freq) factor with freq of any sign to a coordinate
// that currently has no trig factor, normalizing parity: cos(-u)=cos(u),
// sin(-u)=-sin(u), cos(0)=1, sin(0)=0 (kills the term).
bool append_trig(PartialTerm& t, Coordinate i, TrigKind kind, Rational freq) {
  if (freq == 0) {
    if (kind == TrigKind::sin) return false;  // sin(0) = 0
    return true;                              // cos(0) = 1
  }
  if (freq < 0) {
    if (kind == TrigKind::sin) t.coeff = -t.coeff;
    freq = -freq;
  }
  t.trig.emplace(i, TrigFactor{kind, std::move(freq)});
  return true;
}

// Product of two trig factors on the same coordinate, linearized via
// product-to-sum; the result is a list of (coefficient multiplier, kind,
// frequency) alternatives with frequencies possibly zero or negative.
struct TrigProductPart {
  Rational factor;
  TrigKind kind;
  Rational freq;
};

std::vector<TrigProductPart> trig_product(const TrigFactor& a, const TrigFactor& b) {
  const Rational sum = a.freq + b.freq;
  const Rational diff = a.freq - b.freq;
  const Rational half(1, 2);
  if (a.kind == TrigKind::sin && b.kind == TrigKind::sin)
    return {{half, TrigKind::cos, diff}, {-half, TrigKind::cos, sum}};
  if (a.kind == TrigKind::cos && b.kind == TrigKind::cos)
    return {{half, TrigKind::cos, diff}, {half, TrigKind::cos, sum}};
  if (a.kind == TrigKind::sin && b.kind == TrigKind::cos)
    return {{half, TrigKind::sin, sum}, {half, TrigKind::sin, diff}};
  // cos * sin
  return {{half, TrigKind::sin, sum}, {-half, TrigKind::sin, diff}};
}

}  // namespace

Expression mul(const Expression& a, const Expression& b) {
  Expression out;
  for (const auto& [ka, ca] : a.terms()) {
    for (const auto& [kb, cb] : b.terms()) {
      TermKey key;
      key.params = ka.params;
      for (const auto& [s, e] : kb.params) {
        int& v = key.params[s];
        v += e;
        if (v == 0) key.params.erase(s);
      }
      key.mono = ka.mono;
      for (const auto& [i, e] : kb.mono) key.mono[i] += e;
      key.exps = ka.exps;
      for (const auto& [i, l] : kb.exps) {
        auto it = key.exps.find(i);
        if (it == key.exps.end()) {
          key.exps.emplace(i, l);
        } else {
          it->second += l;
          if (it->second == 0) key.exps.erase(it);
        }
      }

      // Trig factors: coordinates present on one side only carry over;
      // shared coordinates are linearized, branching the term.
      std::vector<PartialTerm> parts{{ca * cb, {}}};
      for (const auto& [i, fa] : ka.trig) {
        auto itb = kb.trig.find(i);
        if (itb == kb.trig.end()) {
          for (auto& p : parts) p.trig.emplace(i, fa);
          continue;
        }
        std::vector<PartialTerm> next;
        for (const auto& p : parts) {
          for (const auto& alt : trig_product(fa, itb->second)) {
            PartialTerm q = p;
            q.coeff *= alt.factor;
            if (!append_trig(q, i, alt.kind, alt.freq)) continue;
            next.push_back(std::move(q));
          }
        }
        parts = std::move(next);
      }
      for (const auto& [i, fb] : kb.trig) {
        if (ka.trig.count(i)) continue;
        for (auto& p : parts) p.trig.emplace(i, fb);
      }

      for (auto& p : parts) {
        TermKey k = key;
        k.trig = std::move(p.trig);
        out.accumulate(k, p.coeff);
      }
    }
  }
  return out;
}

Expression mul(const Expression& a, const Rational& c) {
  Expression out;
  if (c == 0) return out;
  for (const auto& [key, v] : a.terms()) out.accumulate(key, v * c);
  return out;
}

bool is_zero(const Expression& a) { return a.is_zero(); }

bool is_invertible_term(const Expression& a) {
  if (a.terms().size() != 1) return false;
  const TermKey& k = a.terms().begin()->first;
  return k.mono.empty() && k.trig.empty();
}

Expression divide_by_term(const Expression& a, const Expression& unit) {
  if (!is_invertible_term(unit))
    throw EvaluationError("division only supported by a single invertible term, got: " + to_string(unit));
  const auto& [uk, uc] = *unit.terms().begin();
  Expression out;
  for (const auto& [key, c] : a.terms()) {
    TermKey k = key;
    for (const auto& [s, e] : uk.params) {
      int& v = k.params[s];
      v -= e;
      if (v == 0) k.params.erase(s);
    }
    for (const auto& [i, l] : uk.exps) {
      auto it = k.exps.find(i);
      if (it == k.exps.end()) {
        k.exps.emplace(i, -l);
      } else {
        it->second -= l;
        if (it->second == 0) k.exps.erase(it);
      }
    }
    out.accumulate(k, c / uc);
  }
  return out;
}

Expression pow(const Expression& a, int k) {
  if (k < 0) {
    if (!is_invertible_term(a)) throw EvaluationError("pow: negative power of a non-invertible expression");
    Expression inv = divide_by_term(Expression::constant(Rational(1)), a);
    return pow(inv, -k);
  }
  Expression acc = Expression::constant(Rational(1));
  Expression base = a;
  while (k > 0) {
    if (k & 1) acc = mul(acc, base);
    base = k > 1 ? mul(base, base) : base;
    k >>= 1;
  }
  return acc;
}

Expression partial(const Expression& a, Coordinate i) {
  Expression out;
  for (const auto& [key, c] : a.terms()) {
    auto im = key.mono.find(i);
    if (im != key.mono.end()) {
      TermKey k = key;
      int e = im->second;
      if (e == 1)
        k.mono.erase(i);
      else
        k.mono[i] = e - 1;
      out.accumulate(k, c * e);
    }
    auto ie = key.exps.find(i);
    if (ie != key.exps.end()) out.accumulate(key, c * ie->second);
    auto it = key.trig.find(i);
    if (it != key.trig.end()) {
      TermKey k = key;
      const TrigFactor& f = it->second;
      if (f.kind == TrigKind::sin) {
        k.trig[i] = TrigFactor{TrigKind::cos, f.freq};
        out.accumulate(k, c * f.freq);
      } else {
        k.trig[i] = TrigFactor{TrigKind::sin, f.freq};
        out.accumulate(k, -c * f.freq);
      }
    }
  }
  return out;
}

namespace {

const Rational& bound_coordinate(const std::map<Coordinate, Rational>& point, Coordinate i) {
  auto it = point.find(i);
  if (it == point.end()) throw UnboundSymbolError("unbound coordinate x" + std::to_string(i));
  return it->second;
}

const Rational& bound_parameter(const std::map<Symbol, Rational>& params, Symbol s) {
  auto it = params.find(s);
  if (it == params.end()) throw UnboundSymbolError("unbound parameter " + symbol_name(s));
  return it->second;
}

}  // namespace

double evaluate(const Expression& a, const std::map<Coordinate, Rational>& point,
                const std::map<Symbol, Rational>& params) {
  double total = 0.0;
  for (const auto& [key, c] : a.terms()) {
    Rational exact = c;
    for (const auto& [s, e] : key.params) exact *= rational_pow(bound_parameter(params, s), e);
    for (const auto& [i, e] : key.mono) exact *= rational_pow(bound_coordinate(point, i), e);
    double v = to_double(exact);
    for (const auto& [i, l] : key.exps) v *= std::exp(to_double(l * bound_coordinate(point, i)));
    for (const auto& [i, f] : key.trig) {
      double arg = to_double(f.freq * bound_coordinate(point, i));
      v *= (f.kind == TrigKind::sin) ? std::sin(arg) : std::cos(arg);
    }
    total += v;
  }
  return total;
}

Rational evaluate_exact(const Expression& a, const std::map<Coordinate, Rational>& point,
                        const std::map<Symbol, Rational>& params) {
  Rational total(0);
  for (const auto& [key, c] : a.terms()) {
    Rational v = c;
    for (const auto& [s, e] : key.params) v *= rational_pow(bound_parameter(params, s), e);
    for (const auto& [i, e] : key.mono) v *= rational_pow(bound_coordinate(point, i), e);
    bool vanished = false;
    for (const auto& [i, l] : key.exps) {
      (void)l;
      if (bound_coordinate(point, i) != 0)
        throw EvaluationError("evaluate_exact: exponential factor at nonzero x" + std::to_string(i));
    }
    for (const auto& [i, f] : key.trig) {
      if (bound_coordinate(point, i) != 0)
        throw EvaluationError("evaluate_exact: trig factor at nonzero x" + std::to_string(i));
      if (f.kind == TrigKind::sin) vanished = true;  // sin(0) = 0
    }
    if (!vanished) total += v;
  }
  return total;
}

Expression substitute_coordinate(const Expression& a, Coordinate i, const Rational& value) {
  Expression out;
  for (const auto& [key, c] : a.terms()) {
    TermKey k = key;
    Rational coeff = c;
    auto im = k.mono.find(i);
    if (im != k.mono.end()) {
      coeff *= rational_pow(value, im->second);
      k.mono.erase(im);
    }
    auto ie = k.exps.find(i);
    if (ie != k.exps.end()) {
      if (value != 0)
        throw EvaluationError("substitute_coordinate: exponential factor at nonzero x" + std::to_string(i));
      k.exps.erase(ie);
    }
    auto it = k.trig.find(i);
    if (it != k.trig.end()) {
      if (value != 0)
        throw EvaluationError("substitute_coordinate: trig factor at nonzero x" + std::to_string(i));
      if (it->second.kind == TrigKind::sin) continue;  // sin(0) kills the term
      k.trig.erase(it);                                // cos(0) = 1
    }
    out.accumulate(k, coeff);
  }
  return out;
}

Expression substitute_symbols(const Expression& a, const std::map<Symbol, Expression>& values) {
  Expression out;
  for (const auto& [key, c] : a.terms()) {
    TermKey base = key;
    Expression factor = Expression::constant(Rational(1));
    for (const auto& [s, value] : values) {
      auto it = base.params.find(s);
      if (it == base.params.end()) continue;
      factor = mul(factor, pow(value, it->second));
      base.params.erase(it);
    }
    out = add(out, mul(Expression::term(c, std::move(base)), factor));
  }
  return out;
}

std::set<Symbol> free_symbols(const Expression& a) {
  std::set<Symbol> out;
  for (const auto& [key, c] : a.terms())
    for (const auto& [s, e] : key.params) out.insert(s);
  return out;
}

std::set<Coordinate> free_coordinates(const Expression& a) {
  std::set<Coordinate> out;
  for (const auto& [key, c] : a.terms()) {
    for (const auto& [i, e] : key.mono) out.insert(i);
    for (const auto& [i, l] : key.exps) out.insert(i);
    for (const auto& [i, f] : key.trig) out.insert(i);
  }
  return out;
}

std::map<BasisKey, LinearForm> collect_linear(const Expression& a, const std::set<Symbol>& unknowns) {
  std::map<BasisKey, LinearForm> out;
  for (const auto& [key, c] : a.terms()) {
    int degree = 0;
    Symbol which = 0;
    for (const auto& [s, e] : key.params) {
      if (!unknowns.count(s)) continue;
      if (e < 0)
        throw NonlinearityError("collect_linear: negative power of unknown " + symbol_name(s));
      degree += e;
      which = s;
    }
    if (degree >= 2)
      throw NonlinearityError("collect_linear: term of degree " + std::to_string(degree) +
                              " in the unknowns: " + to_string(Expression::term(c, key)));
    BasisKey basis{key.mono, key.exps, key.trig};
    TermKey coeff_key;
    coeff_key.params = key.params;
    LinearForm& form = out[basis];
    if (degree == 0) {
      form.constant.accumulate(coeff_key, c);
    } else {
      coeff_key.params.erase(which);
      form.coeffs[which].accumulate(coeff_key, c);
    }
  }
  return out;
}

Expression basis_expression(const BasisKey& key) {
  TermKey k;
  k.mono = key.mono;
  k.exps = key.exps;
  k.trig = key.trig;
  return Expression::term(Rational(1), std::move(k));
}

namespace {

void render_factor(std::ostream& os, bool& first, const std::string& text) {
  if (!first) os << "*";
  os << text;
  first = false;
}

std::string render_scaled_coordinate(const Rational& scale, Coordinate i) {
  std::string arg;
  if (scale != 1) arg += to_string(scale) + "*";
  arg += "x" + std::to_string(i);
  return arg;
}

std::string render_term(const TermKey& key, const Rational& coeff_abs) {
  std::ostringstream os;
  bool first = true;
  if (coeff_abs != 1 || (key.params.empty() && key.mono.empty() && key.exps.empty() && key.trig.empty()))
    render_factor(os, first, to_string(coeff_abs));
  std::vector<Symbol> syms;
  for (const auto& [s, e] : key.params) syms.push_back(s);
  std::sort(syms.begin(), syms.end(), symbol_name_less);
  for (Symbol s : syms) {
    int e = key.params.at(s);
    std::string f = symbol_name(s);
    if (e != 1) f += "^" + std::to_string(e);
    render_factor(os, first, f);
  }
  for (const auto& [i, e] : key.mono) {
    std::string f = "x" + std::to_string(i);
    if (e != 1) f += "^" + std::to_string(e);
    render_factor(os, first, f);
  }
  for (const auto& [i, l] : key.exps)
    render_factor(os, first, "exp(" + render_scaled_coordinate(l, i) + ")");
  for (const auto& [i, f] : key.trig) {
    std::string name = (f.kind == TrigKind::sin) ? "sin" : "cos";
    render_factor(os, first, name + "(" + render_scaled_coordinate(f.freq, i) + ")");
  }
  return os.str();
}

// Rendering order: by function basis first (coordinates ascending inside each
// map), then by parameter monomial compared through symbol names, so output
// is independent of symbol interning order.
bool render_less(const std::pair<TermKey, Rational>& a, const std::pair<TermKey, Rational>& b) {
  const TermKey& ka = a.first;
  const TermKey& kb = b.first;
  if (ka.mono != kb.mono) return ka.mono < kb.mono;
  if (ka.exps != kb.exps) return ka.exps < kb.exps;
  if (ka.trig != kb.trig) return ka.trig < kb.trig;
  std::vector<std::pair<std::string, int>> pa, pb;
  for (const auto& [s, e] : ka.params) pa.emplace_back(symbol_name(s), e);
  for (const auto& [s, e] : kb.params) pb.emplace_back(symbol_name(s), e);
  std::sort(pa.begin(), pa.end());
  std::sort(pb.begin(), pb.end());
  return pa < pb;
}

}  // namespace

std::string to_string(const Expression& a) {
  if (a.is_zero()) return "0";
  std::vector<std::pair<TermKey, Rational>> terms(a.terms().begin(), a.terms().end());
  std::sort(terms.begin(), terms.end(), render_less);
  std::ostringstream os;
  bool first = true;
  for (const auto& [key, c] : terms) {
    bool negative = c < 0;
    if (first) {
      if (negative) os << "-";
    } else {
      os << (negative ? " - " : " + ");
    }
    os << render_term(key, negative ? Rational(-c) : c);
    first = false;
  }
  return os.str();
}

}  // namespace liepoisson
