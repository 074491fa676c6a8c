#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cmath>
#include <stdexcept>
#include <string>

namespace liepoisson {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline double to_double(const Rational& r) { return r.template convert_to<double>(); }

inline std::string to_string(const Rational& r) {
  if (denominator(r) == 1) return numerator(r).str();
  return numerator(r).str() + "/" + denominator(r).str();
}

// Parse "n" or "n/d" with optional leading '-'.
Rational rational_from_string(const std::string& s);

// Exact square root of a nonnegative rational if it exists.
bool rational_sqrt(const Rational& r, Rational& out);

// Integer power with possibly negative exponent (exact; base must be nonzero
// when e < 0).
inline Rational rational_pow(const Rational& base, int e) {
  if (e == 0) return Rational(1);
  Rational b = base;
  int n = e;
  if (n < 0) {
    if (b == 0) throw std::domain_error("rational_pow: zero base with negative exponent");
    // Keep the denominator positive; the two-argument constructor rejects
    // negative denominators.
    if (numerator(base) < 0)
      b = Rational(-denominator(base), -numerator(base));
    else
      b = Rational(denominator(base), numerator(base));
    n = -n;
  }
  Rational acc(1);
  while (n > 0) {
    if (n & 1) acc *= b;
    b *= b;
    n >>= 1;
  }
  return acc;
}

// Exact complex rationals a + b*i, used for spectra of adjoint matrices.
struct GaussianRational {
  Rational re;
  Rational im;

  GaussianRational() = default;
  GaussianRational(Rational r) : re(std::move(r)), im(0) {}
  GaussianRational(Rational r, Rational i) : re(std::move(r)), im(std::move(i)) {}

  bool is_zero() const { return re == 0 && im == 0; }
  bool is_real() const { return im == 0; }

  friend GaussianRational operator+(const GaussianRational& a, const GaussianRational& b) {
    return {a.re + b.re, a.im + b.im};
  }
  friend GaussianRational operator-(const GaussianRational& a, const GaussianRational& b) {
    return {a.re - b.re, a.im - b.im};
  }
  friend GaussianRational operator*(const GaussianRational& a, const GaussianRational& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
  }
  friend GaussianRational operator/(const GaussianRational& a, const GaussianRational& b) {
    Rational n2 = b.re * b.re + b.im * b.im;
    if (n2 == 0) throw std::domain_error("GaussianRational: division by zero");
    return {(a.re * b.re + a.im * b.im) / n2, (a.im * b.re - a.re * b.im) / n2};
  }
  friend GaussianRational operator-(const GaussianRational& a) { return {-a.re, -a.im}; }
  friend bool operator==(const GaussianRational& a, const GaussianRational& b) {
    return a.re == b.re && a.im == b.im;
  }
  friend bool operator!=(const GaussianRational& a, const GaussianRational& b) { return !(a == b); }
  friend bool operator<(const GaussianRational& a, const GaussianRational& b) {
    if (a.re != b.re) return a.re < b.re;
    return a.im < b.im;
  }
};

}  // namespace liepoisson
