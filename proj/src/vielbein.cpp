#include "liepoisson/vielbein.hpp"

#include <algorithm>
#include <sstream>
#include <vector>

namespace liepoisson {
namespace {

using RatMatrix = std::vector<std::vector<Rational>>;
using GaussMatrix = std::vector<std::vector<GaussianRational>>;

// Monic characteristic polynomial of a rational matrix via the
// Faddeev-LeVerrier recurrence; returns coefficients c[0..n] of
// det(lambda*I - A) = sum c[k] lambda^k with c[n] = 1.
std::vector<Rational> characteristic_polynomial(const RatMatrix& a) {
  int n = static_cast<int>(a.size());
  std::vector<Rational> c(n + 1, Rational(0));
  c[n] = 1;
  RatMatrix m(n, std::vector<Rational>(n, Rational(0)));
  for (int i = 0; i < n; ++i) m[i][i] = 1;
  for (int k = 1; k <= n; ++k) {
    RatMatrix am(n, std::vector<Rational>(n, Rational(0)));
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        for (int l = 0; l < n; ++l) am[i][j] += a[i][l] * m[l][j];
    Rational tr(0);
    for (int i = 0; i < n; ++i) tr += am[i][i];
    c[n - k] = -tr / k;
    m = am;
    for (int i = 0; i < n; ++i) m[i][i] += c[n - k];
  }
  return c;
}

Rational poly_eval(const std::vector<Rational>& p, const Rational& x) {
  Rational acc(0);
  for (auto it = p.rbegin(); it != p.rend(); ++it) acc = acc * x + *it;
  return acc;
}

// Exact division by (lambda - r); requires p(r) == 0.
std::vector<Rational> deflate(const std::vector<Rational>& p, const Rational& r) {
  int deg = static_cast<int>(p.size()) - 1;
  std::vector<Rational> q(deg, Rational(0));
  Rational carry(0);
  for (int k = deg; k >= 1; --k) {
    q[k - 1] = p[k] + carry;
    carry = q[k - 1] * r;
  }
  return q;
}

std::vector<Integer> positive_divisors(Integer v) {
  if (v < 0) v = -v;
  std::vector<Integer> out;
  for (Integer d = 1; d * d <= v; ++d) {
    if (v % d == 0) {
      out.push_back(d);
      if (d * d != v) out.push_back(v / d);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

// All rational roots of p (with multiplicity) by the rational root theorem
// plus deflation; p is consumed down to the root-free residual.
std::vector<Rational> extract_rational_roots(std::vector<Rational>& p) {
  std::vector<Rational> roots;
  while (p.size() > 1 && p[0] == 0) {
    roots.emplace_back(0);
    p.erase(p.begin());
  }
  while (p.size() > 1) {
    // Clear denominators to an integer polynomial for candidate generation.
    Integer scale = 1;
    for (const Rational& c : p) scale = lcm(scale, denominator(c));
    std::vector<Integer> ip;
    ip.reserve(p.size());
    for (const Rational& c : p) ip.push_back(numerator(Rational(c * scale)));
    std::vector<Integer> nums = positive_divisors(ip.front());
    std::vector<Integer> dens = positive_divisors(ip.back());
    bool found = false;
    for (const Integer& nu : nums) {
      for (const Integer& de : dens) {
        for (int sign : {1, -1}) {
          Rational cand(sign * nu, de);
          if (poly_eval(p, cand) == 0) {
            roots.push_back(cand);
            p = deflate(p, cand);
            found = true;
            break;
          }
        }
        if (found) break;
      }
      if (found) break;
    }
    if (!found) break;
    while (p.size() > 1 && p[0] == 0) {
      roots.emplace_back(0);
      p.erase(p.begin());
    }
  }
  std::sort(roots.begin(), roots.end());
  return roots;
}

std::string render_poly(const std::vector<Rational>& p) {
  std::ostringstream os;
  bool first = true;
  for (int k = static_cast<int>(p.size()) - 1; k >= 0; --k) {
    if (p[k] == 0) continue;
    if (!first) os << (p[k] > 0 ? " + " : " - ");
    else if (p[k] < 0) os << "-";
    Rational mag = abs(p[k]);
    if (mag != 1 || k == 0) os << to_string(mag);
    if (k > 0) {
      if (mag != 1) os << "*";
      os << "lambda";
      if (k > 1) os << "^" << k;
    }
    first = false;
  }
  if (first) os << "0";
  return os.str();
}

// Polynomial-in-t coefficients attached to one exponential e^{lambda t}.
using CoeffPoly = std::map<int, GaussianRational>;
// Exponential polynomial: lambda -> polynomial coefficients.
using ExpPoly = std::map<GaussianRational, CoeffPoly>;

void exp_poly_add(ExpPoly& dst, const GaussianRational& lam, int k, const GaussianRational& c) {
  if (c.is_zero()) return;
  auto& slot = dst[lam][k];
  slot = slot + c;
  if (slot.is_zero()) {
    dst[lam].erase(k);
    if (dst[lam].empty()) dst.erase(lam);
  }
}

// r(t) = integral_0^t e^{lam (t-s)} prev(s) ds, exactly.
ExpPoly putzer_integral(const ExpPoly& prev, const GaussianRational& lam) {
  ExpPoly out;
  for (const auto& [mu, poly] : prev) {
    for (const auto& [k, c] : poly) {
      if (mu == lam) {
        exp_poly_add(out, lam, k + 1, c / GaussianRational(Rational(k + 1)));
        continue;
      }
      GaussianRational nu = mu - lam;
      // integral_0^t s^k e^{nu s} ds
      //   = e^{nu t} * sum_{i=0..k} (-1)^i (k!/(k-i)!) t^{k-i} / nu^{i+1}
      //     - (-1)^k k! / nu^{k+1}
      GaussianRational falling(Rational(1));
      GaussianRational nupow = nu;
      Rational sign(1);
      for (int i = 0; i <= k; ++i) {
        exp_poly_add(out, mu, k - i, c * GaussianRational(sign) * falling / nupow);
        if (i < k) {
          falling = falling * GaussianRational(Rational(k - i));
          nupow = nupow * nu;
          sign = -sign;
        }
      }
      // After the loop, falling == k!, nupow == nu^{k+1}, sign == (-1)^k.
      exp_poly_add(out, lam, 0, -(c * GaussianRational(sign) * falling / nupow));
    }
  }
  return out;
}

Expression exp_poly_to_expression(const ExpPoly& p, Coordinate t) {
  Expression re;
  Expression im;
  for (const auto& [lam, poly] : p) {
    for (const auto& [k, c] : poly) {
      TermKey base;
      if (k > 0) base.mono[t] = k;
      if (lam.re != 0) base.exps[t] = lam.re;
      if (lam.im == 0) {
        re.accumulate(base, c.re);
        im.accumulate(base, c.im);
      } else {
        Rational s = lam.im > 0 ? Rational(1) : Rational(-1);
        Rational freq = abs(lam.im);
        TermKey ck = base;
        ck.trig[t] = TrigFactor{TrigKind::cos, freq};
        TermKey sk = base;
        sk.trig[t] = TrigFactor{TrigKind::sin, freq};
        // e^{i b t} = cos(|b| t) + i s sin(|b| t), s = sign(b).
        re.accumulate(ck, c.re);
        re.accumulate(sk, -c.im * s);
        im.accumulate(sk, c.re * s);
        im.accumulate(ck, c.im);
      }
    }
  }
  if (!im.is_zero())
    throw VielbeinError("matrix exponential of a real matrix produced an imaginary residue");
  return re;
}

}  // namespace

ExprMatrix matrix_exponential(const ExprMatrix& a, Coordinate t) {
  if (a.rows() != a.cols()) throw VielbeinError("matrix_exponential: matrix must be square");
  int n = a.rows();

  // Nilpotent fast path: the series terminates and symbolic entries are fine.
  {
    ExprMatrix acc = ExprMatrix::identity(n);
    ExprMatrix apow = ExprMatrix::identity(n);
    Expression tpow = Expression::constant(Rational(1));
    Rational fact(1);
    bool nilpotent = false;
    for (int k = 1; k <= n; ++k) {
      apow = mul(apow, a);
      if (apow.is_zero()) {
        nilpotent = true;
        break;
      }
      fact *= k;
      tpow = mul(tpow, Expression::coordinate(t));
      acc = add(acc, mul(apow, mul(tpow, Rational(1) / fact)));
    }
    if (nilpotent) return acc;
  }

  // Spectral path: requires exact rational entries.
  RatMatrix m(n, std::vector<Rational>(n, Rational(0)));
  for (int r = 0; r < n; ++r) {
    for (int c = 0; c < n; ++c) {
      if (!a.at(r, c).is_rational_constant())
        throw UnsupportedSpectrumError(
            "generator is not nilpotent and has non-constant entries; bind the algebra "
            "parameters to rational values first (entry (" +
            std::to_string(r + 1) + "," + std::to_string(c + 1) + ") = " + to_string(a.at(r, c)) +
            ")");
      m[r][c] = a.at(r, c).rational_value();
    }
  }

  std::vector<Rational> residual = characteristic_polynomial(m);
  std::vector<Rational> rational_roots = extract_rational_roots(residual);

  std::vector<GaussianRational> lams;
  lams.reserve(n);
  for (const Rational& r : rational_roots) lams.emplace_back(r);
  int resdeg = static_cast<int>(residual.size()) - 1;
  if (resdeg == 2) {
    // A quadratic factor lambda^2 + beta lambda + gamma is supported when it
    // has a conjugate pair re +- i*im with rational re and im: complete the
    // square and demand a rational square root of the negated discriminant.
    Rational lin = residual[1] / residual[2];
    Rational con = residual[0] / residual[2];
    Rational real_part = -lin / 2;
    Rational imag_sq = con - real_part * real_part;
    Rational root;
    if (imag_sq > 0 && rational_sqrt(imag_sq, root)) {
      lams.emplace_back(real_part, root);
      lams.emplace_back(real_part, -root);
    } else {
      throw UnsupportedSpectrumError(
          "unsupported spectrum: irreducible characteristic factor " + render_poly(residual));
    }
  } else if (resdeg != 0) {
    throw UnsupportedSpectrumError("unsupported spectrum: irreducible characteristic factor " +
                                   render_poly(residual));
  }

  // Putzer: e^{At} = sum_{j=1..n} r_j(t) P_{j-1}, P_0 = I,
  // P_j = P_{j-1}(A - lambda_j I), r_1 = e^{lambda_1 t},
  // r_j(t) = integral_0^t e^{lambda_j (t-s)} r_{j-1}(s) ds.
  GaussMatrix p(n, std::vector<GaussianRational>(n));
  for (int i = 0; i < n; ++i) p[i][i] = GaussianRational(Rational(1));
  ExpPoly r;
  exp_poly_add(r, lams[0], 0, GaussianRational(Rational(1)));

  std::vector<std::vector<ExpPoly>> entries(n, std::vector<ExpPoly>(n));
  auto accumulate_layer = [&]() {
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        if (p[i][j].is_zero()) continue;
        for (const auto& [lam, poly] : r)
          for (const auto& [k, c] : poly) exp_poly_add(entries[i][j], lam, k, c * p[i][j]);
      }
    }
  };
  accumulate_layer();
  for (int j = 1; j < n; ++j) {
    GaussMatrix next(n, std::vector<GaussianRational>(n));
    for (int i = 0; i < n; ++i) {
      for (int l = 0; l < n; ++l) {
        GaussianRational acc;
        for (int q = 0; q < n; ++q) {
          GaussianRational factor = GaussianRational(m[q][l]);
          if (q == l) factor = factor - lams[j - 1];
          acc = acc + p[i][q] * factor;
        }
        next[i][l] = acc;
      }
    }
    p = next;
    r = putzer_integral(r, lams[j]);
    accumulate_layer();
  }

  ExprMatrix out(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) out.at(i, j) = exp_poly_to_expression(entries[i][j], t);
  return out;
}

VielbeinMatrix compute_vielbein(const LieAlgebra& alg) {
  int m = alg.dim;
  if (m < 1) throw VielbeinError("compute_vielbein: empty algebra");
  AdjointRep rep = adjoint(alg);

  ExprMatrix frame(m, m);
  frame.at1(m, m) = Expression::constant(Rational(1));
  ExprMatrix suffix = ExprMatrix::identity(m);
  for (int alpha = m - 1; alpha >= 1; --alpha) {
    // suffix becomes e^{x_{alpha+1} adj_{alpha+1}} * (previous suffix).
    ExprMatrix factor = matrix_exponential(rep.x_mats[alpha], alpha + 1);
    suffix = mul(factor, suffix);
    for (int c = 1; c <= m; ++c) frame.at1(alpha, c) = suffix.at1(alpha, c);
  }

  VielbeinMatrix v;
  v.algebra_name = alg.name;
  v.frame = frame;
  v.dual = invert_unit_determinant(frame);
  return v;
}

std::map<std::tuple<int, int, int>, Expression> recover_structure_constants(
    const VielbeinMatrix& v) {
  const ExprMatrix& f = v.frame;
  const ExprMatrix& w = v.dual;
  int m = f.rows();

  // Frame vector fields X_i = w_i^mu d_mu; their commutators expanded back in
  // the frame give the structure constants.
  std::vector<ExprMatrix> dw;
  dw.reserve(m);
  for (int mu = 1; mu <= m; ++mu) dw.push_back(partial(w, mu));

  std::map<std::tuple<int, int, int>, Expression> out;
  for (int i = 1; i <= m; ++i) {
    for (int j = i + 1; j <= m; ++j) {
      // Com^nu = X_i^mu d_mu X_j^nu - X_j^mu d_mu X_i^nu.
      std::vector<Expression> com(m + 1);
      for (int nu = 1; nu <= m; ++nu) {
        Expression acc;
        for (int mu = 1; mu <= m; ++mu) {
          acc = add(acc, mul(w.at1(i, mu), dw[mu - 1].at1(j, nu)));
          acc = sub(acc, mul(w.at1(j, mu), dw[mu - 1].at1(i, nu)));
        }
        com[nu] = acc;
      }
      for (int k = 1; k <= m; ++k) {
        Expression c;
        for (int nu = 1; nu <= m; ++nu) c = add(c, mul(com[nu], f.at1(nu, k)));
        if (!free_coordinates(c).empty())
          throw VielbeinError("recovered bracket coefficient C_{" + std::to_string(i) + "," +
                              std::to_string(j) + "}^" + std::to_string(k) +
                              " is not constant: " + to_string(c));
        if (!c.is_zero()) out[{i, j, k}] = c;
      }
    }
  }
  return out;
}

}  // namespace liepoisson
