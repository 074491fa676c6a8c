#include "liepoisson/biham.hpp"

#include <sstream>
#include <utility>

#include "liepoisson/rng.hpp"

namespace liepoisson {

namespace {

bool same_matrix(const ExprMatrix& a, const ExprMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
  for (int r = 1; r <= a.rows(); ++r)
    for (int c = 1; c <= a.cols(); ++c)
      if (!sub(a.at1(r, c), b.at1(r, c)).is_zero()) return false;
  return true;
}

bool shared_frame(const BivectorField& p, const BivectorField& q) {
  return p.has_frame && q.has_frame && same_matrix(p.frame, q.frame);
}

}  // namespace

BivectorInverse invert_bivector(const BivectorField& p) {
  Expression det = determinant(p.components);
  if (det.is_zero())
    throw SingularBivectorError("bivector has identically zero determinant and cannot be inverted");
  return BivectorInverse{adjugate(p.components), std::move(det)};
}

RationalExpression RecursionOperator::entry(int row, int col) const {
  return RationalExpression(numerator.at1(row, col), denominator);
}

RecursionOperator recursion_operator(const BivectorField& p, const BivectorField& pprime) {
  if (p.dim() != pprime.dim())
    throw PoissonError("recursion operator requires bivectors of equal dimension");
  RecursionOperator n;
  n.dim = p.dim();
  if (shared_frame(p, pprime)) {
    // N = P' P^{-1} = F^T P'_f adj(P_f) F^{-T} / det(P_f): the frame factors
    // cancel through the change of basis, so the denominator is the constant
    // frame-index determinant.
    Expression det = determinant(p.frame_components);
    if (det.is_zero())
      throw SingularBivectorError(
          "bivector has identically zero determinant and cannot be inverted");
    n.numerator = mul(mul(mul(transpose(p.frame), pprime.frame_components),
                          adjugate(p.frame_components)),
                      transpose(p.frame_dual));
    n.denominator = std::move(det);
  } else {
    BivectorInverse inv = invert_bivector(p);
    n.numerator = mul(pprime.components, inv.adjugate_matrix);
    n.denominator = std::move(inv.det);
  }
  if (!n.denominator.is_rational_constant() && is_invertible_term(n.denominator)) {
    for (int r = 1; r <= n.dim; ++r)
      for (int c = 1; c <= n.dim; ++c)
        n.numerator.at1(r, c) = divide_by_term(n.numerator.at1(r, c), n.denominator);
    n.denominator = Expression::constant(1);
  }
  // Invariant: numerator * P = denominator * P'.
  ExprMatrix lhs = mul(n.numerator, p.components);
  ExprMatrix rhs = mul(pprime.components, n.denominator);
  if (!same_matrix(lhs, rhs))
    throw PoissonError("internal error: recursion operator fails N * P = P'");
  return n;
}

std::vector<RationalExpression> trace_integrals(const BivectorField& p,
                                                const BivectorField& pprime, int kmax) {
  if (kmax < 1) throw PoissonError("trace integrals require kmax >= 1");
  ExprMatrix base;
  Expression den;
  if (shared_frame(p, pprime)) {
    // tr(N^k) = tr((P'_f adj(P_f))^k) / det(P_f)^k by cyclic invariance of
    // the trace under the frame change of basis.
    den = determinant(p.frame_components);
    if (den.is_zero())
      throw SingularBivectorError(
          "bivector has identically zero determinant and cannot be inverted");
    base = mul(pprime.frame_components, adjugate(p.frame_components));
  } else {
    RecursionOperator n = recursion_operator(p, pprime);
    base = n.numerator;
    den = n.denominator;
  }
  std::vector<RationalExpression> out;
  out.reserve(static_cast<std::size_t>(kmax));
  ExprMatrix power = base;
  Expression den_power = den;
  for (int k = 1; k <= kmax; ++k) {
    if (k > 1) {
      power = mul(power, base);
      den_power = mul(den_power, den);
    }
    out.push_back(
        RationalExpression(mul(trace(power), Rational(1, 2 * k)), den_power));
  }
  return out;
}

std::vector<RationalExpression> vector_field_commutator(
    const std::vector<RationalExpression>& x, const std::vector<RationalExpression>& y) {
  if (x.size() != y.size())
    throw PoissonError("vector field commutator requires fields of equal dimension");
  int m = static_cast<int>(x.size());
  std::vector<RationalExpression> out(x.size());
  for (int mu = 0; mu < m; ++mu) {
    RationalExpression acc;
    for (int nu = 0; nu < m; ++nu) {
      acc = add(acc, mul(x[static_cast<std::size_t>(nu)],
                         partial(y[static_cast<std::size_t>(mu)], nu + 1)));
      acc = sub(acc, mul(y[static_cast<std::size_t>(nu)],
                         partial(x[static_cast<std::size_t>(mu)], nu + 1)));
    }
    out[static_cast<std::size_t>(mu)] = acc;
  }
  return out;
}

std::vector<RationalExpression> apply_operator(const RecursionOperator& n,
                                               const std::vector<RationalExpression>& x) {
  if (static_cast<int>(x.size()) != n.dim)
    throw PoissonError("operator application requires a vector of matching dimension");
  std::vector<RationalExpression> out(x.size());
  for (int l = 1; l <= n.dim; ++l) {
    RationalExpression acc;
    for (int m = 1; m <= n.dim; ++m)
      acc = add(acc, mul(n.entry(l, m), x[static_cast<std::size_t>(m - 1)]));
    out[static_cast<std::size_t>(l - 1)] = acc;
  }
  return out;
}

std::vector<RationalExpression> nijenhuis_torsion(const RecursionOperator& n,
                                                  const std::vector<RationalExpression>& x,
                                                  const std::vector<RationalExpression>& y) {
  std::vector<RationalExpression> nx = apply_operator(n, x);
  std::vector<RationalExpression> ny = apply_operator(n, y);
  std::vector<RationalExpression> t = vector_field_commutator(nx, ny);
  std::vector<RationalExpression> range = apply_operator(n, vector_field_commutator(nx, y));
  std::vector<RationalExpression> left = apply_operator(n, vector_field_commutator(x, ny));
  std::vector<RationalExpression> both =
      apply_operator(n, apply_operator(n, vector_field_commutator(x, y)));
  for (std::size_t mu = 0; mu < t.size(); ++mu)
    t[mu] = add(sub(sub(t[mu], range[mu]), left[mu]), both[mu]);
  return t;
}

TorsionReport torsion_vanishes(const RecursionOperator& n) {
  // Work with the ring-valued scaling
  //   d^3 T^l_{mu nu} = sum_rho A^rho_mu (d dA^l_nu/dx_rho - A^l_nu dd/dx_rho)
  //                   - A^rho_nu (d dA^l_mu/dx_rho - A^l_mu dd/dx_rho)
  //                   + A^l_rho (d dA^rho_mu/dx_nu - A^rho_mu dd/dx_nu)
  //                   - A^l_rho (d dA^rho_nu/dx_mu - A^rho_nu dd/dx_mu)
  // where N = A / d, so everything stays polynomial.
  const ExprMatrix& a = n.numerator;
  const Expression& d = n.denominator;
  int m = n.dim;
  std::vector<ExprMatrix> da;
  std::vector<Expression> dd;
  da.reserve(static_cast<std::size_t>(m));
  dd.reserve(static_cast<std::size_t>(m));
  for (int rho = 1; rho <= m; ++rho) {
    da.push_back(partial(a, rho));
    dd.push_back(partial(d, rho));
  }
  auto scaled_partial = [&](int up, int low, int rho) {
    // d * dA^up_low/dx_rho - A^up_low * dd/dx_rho
    return sub(mul(d, da[static_cast<std::size_t>(rho - 1)].at1(up, low)),
               mul(a.at1(up, low), dd[static_cast<std::size_t>(rho - 1)]));
  };
  TorsionReport report;
  for (int mu = 1; mu <= m; ++mu) {
    for (int nu = mu + 1; nu <= m; ++nu) {
      for (int lam = 1; lam <= m; ++lam) {
        Expression total;
        for (int rho = 1; rho <= m; ++rho) {
          total = add(total, mul(a.at1(rho, mu), scaled_partial(lam, nu, rho)));
          total = sub(total, mul(a.at1(rho, nu), scaled_partial(lam, mu, rho)));
          total = add(total, mul(a.at1(lam, rho), scaled_partial(rho, mu, nu)));
          total = sub(total, mul(a.at1(lam, rho), scaled_partial(rho, nu, mu)));
        }
        if (!total.is_zero()) {
          report.vanishes = false;
          report.lam = lam;
          report.mu = mu;
          report.nu = nu;
          report.witness = std::move(total);
          return report;
        }
      }
    }
  }
  return report;
}

RationalExpression poisson_bracket(const BivectorField& p, const RationalExpression& f,
                                   const RationalExpression& g) {
  int m = p.dim();
  std::vector<RationalExpression> df(static_cast<std::size_t>(m)),
      dg(static_cast<std::size_t>(m));
  for (int mu = 1; mu <= m; ++mu) {
    df[static_cast<std::size_t>(mu - 1)] = partial(f, mu);
    dg[static_cast<std::size_t>(mu - 1)] = partial(g, mu);
  }
  RationalExpression acc;
  for (int mu = 1; mu <= m; ++mu)
    for (int nu = mu + 1; nu <= m; ++nu) {
      Expression comp = p.components.at1(mu, nu);
      if (comp.is_zero()) continue;
      RationalExpression term =
          sub(mul(df[static_cast<std::size_t>(mu - 1)], dg[static_cast<std::size_t>(nu - 1)]),
              mul(df[static_cast<std::size_t>(nu - 1)], dg[static_cast<std::size_t>(mu - 1)]));
      acc = add(acc, mul(RationalExpression(std::move(comp)), term));
    }
  return acc;
}

LenardReport lenard_check(const BivectorField& p, const BivectorField& pprime,
                          const std::vector<RationalExpression>& h) {
  if (p.dim() != pprime.dim())
    throw PoissonError("Lenard check requires bivectors of equal dimension");
  int m = p.dim();
  LenardReport report;
  if (h.size() < 2) return report;
  std::vector<std::vector<RationalExpression>> grads(h.size());
  for (std::size_t i = 0; i < h.size(); ++i) {
    grads[i].resize(static_cast<std::size_t>(m));
    for (int nu = 1; nu <= m; ++nu)
      grads[i][static_cast<std::size_t>(nu - 1)] = partial(h[i], nu);
  }
  report.links.assign(h.size() - 1, true);
  for (std::size_t i = 0; i + 1 < h.size(); ++i) {
    for (int mu = 1; mu <= m; ++mu) {
      RationalExpression residual;
      for (int nu = 1; nu <= m; ++nu) {
        Expression qc = pprime.components.at1(mu, nu);
        if (!qc.is_zero())
          residual = add(residual, mul(RationalExpression(std::move(qc)),
                                       grads[i][static_cast<std::size_t>(nu - 1)]));
        Expression pc = p.components.at1(mu, nu);
        if (!pc.is_zero())
          residual = sub(residual, mul(RationalExpression(std::move(pc)),
                                       grads[i + 1][static_cast<std::size_t>(nu - 1)]));
      }
      if (!is_zero(residual)) {
        report.links[i] = false;
        report.all_hold = false;
        if (report.witness.empty()) {
          std::ostringstream msg;
          msg << "link H_" << (i + 1) << " -> H_" << (i + 2) << " breaks in component " << mu
              << ": residual = " << to_string(residual);
          report.witness = msg.str();
        }
        break;
      }
    }
  }
  return report;
}

InvolutionReport involution_check(const BivectorField& p, const BivectorField& pprime,
                                  const std::vector<RationalExpression>& h) {
  InvolutionReport report;
  for (std::size_t i = 0; i < h.size(); ++i)
    for (std::size_t j = i + 1; j < h.size(); ++j) {
      const BivectorField* structures[2] = {&p, &pprime};
      const char* labels[2] = {"first", "second"};
      for (int s = 0; s < 2; ++s) {
        RationalExpression bracket = poisson_bracket(*structures[s], h[i], h[j]);
        if (!is_zero(bracket)) {
          report.all_vanish = false;
          ++report.failures;
          if (report.witness.empty()) {
            std::ostringstream msg;
            msg << "{H_" << (i + 1) << ", H_" << (j + 1) << "} under the " << labels[s]
                << " structure = " << to_string(bracket);
            report.witness = msg.str();
          }
        }
      }
    }
  return report;
}

namespace {

int rational_matrix_rank(std::vector<std::vector<Rational>> m) {
  int rank = 0;
  if (m.empty()) return 0;
  int rows = static_cast<int>(m.size());
  int cols = static_cast<int>(m.front().size());
  int row = 0;
  for (int col = 0; col < cols && row < rows; ++col) {
    int pivot = -1;
    for (int r = row; r < rows; ++r)
      if (m[static_cast<std::size_t>(r)][static_cast<std::size_t>(col)] != 0) {
        pivot = r;
        break;
      }
    if (pivot < 0) continue;
    std::swap(m[static_cast<std::size_t>(row)], m[static_cast<std::size_t>(pivot)]);
    Rational inv = Rational(1) / m[static_cast<std::size_t>(row)][static_cast<std::size_t>(col)];
    for (int c = col; c < cols; ++c)
      m[static_cast<std::size_t>(row)][static_cast<std::size_t>(c)] *= inv;
    for (int r = 0; r < rows; ++r) {
      if (r == row) continue;
      Rational factor = m[static_cast<std::size_t>(r)][static_cast<std::size_t>(col)];
      if (factor == 0) continue;
      for (int c = col; c < cols; ++c)
        m[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)] -=
            factor * m[static_cast<std::size_t>(row)][static_cast<std::size_t>(c)];
    }
    ++row;
    ++rank;
  }
  return rank;
}

}  // namespace

int independence_rank(const std::vector<RationalExpression>& h, int dim,
                      const std::vector<std::map<Coordinate, Rational>>& points,
                      const std::map<Symbol, Rational>& params) {
  if (h.empty()) return 0;
  if (points.empty()) throw DegeneratePointsError("no evaluation points supplied");
  std::vector<std::vector<RationalExpression>> grads(h.size());
  for (std::size_t i = 0; i < h.size(); ++i) {
    grads[i].resize(static_cast<std::size_t>(dim));
    for (int mu = 1; mu <= dim; ++mu)
      grads[i][static_cast<std::size_t>(mu - 1)] = partial(h[i], mu);
  }
  int best = -1;
  std::string last_error = "no point evaluated";
  for (const auto& point : points) {
    std::vector<std::vector<Rational>> matrix(h.size(),
                                              std::vector<Rational>(static_cast<std::size_t>(dim)));
    bool usable = true;
    for (std::size_t i = 0; i < h.size() && usable; ++i)
      for (int mu = 0; mu < dim; ++mu) {
        try {
          matrix[i][static_cast<std::size_t>(mu)] =
              evaluate_exact(grads[i][static_cast<std::size_t>(mu)], point, params);
        } catch (const EvaluationError& e) {
          usable = false;
          last_error = e.what();
          break;
        }
      }
    if (!usable) continue;
    best = std::max(best, rational_matrix_rank(std::move(matrix)));
    if (best == std::min<int>(static_cast<int>(h.size()), dim)) break;
  }
  if (best < 0)
    throw DegeneratePointsError("every evaluation point was singular; last failure: " +
                                last_error);
  return best;
}

std::vector<std::map<Coordinate, Rational>> sample_points(
    int dim, int count, std::uint64_t seed, const std::vector<RationalExpression>& h,
    const std::map<Symbol, Rational>& params) {
  SeededRng rng(seed);
  std::vector<std::map<Coordinate, Rational>> accepted;
  accepted.reserve(static_cast<std::size_t>(count));
  int attempts = 0;
  const int max_attempts = 200 * count + 100;
  while (static_cast<int>(accepted.size()) < count && attempts < max_attempts) {
    ++attempts;
    std::map<Coordinate, Rational> point;
    for (int mu = 1; mu <= dim; ++mu) point[mu] = rng.next_nonzero_rational();
    bool usable = true;
    for (const auto& f : h) {
      try {
        if (evaluate_exact(RationalExpression(f.den), point, params) == 0) {
          usable = false;
          break;
        }
      } catch (const EvaluationError&) {
        usable = false;
        break;
      }
    }
    if (usable) accepted.push_back(std::move(point));
  }
  if (static_cast<int>(accepted.size()) < count)
    throw DegeneratePointsError("could not sample enough nonsingular evaluation points");
  return accepted;
}

}  // namespace liepoisson
