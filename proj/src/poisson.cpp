#include "liepoisson/poisson.hpp"

#include <limits>

namespace liepoisson {

BivectorField bivector_from_components(const ExprMatrix& components) {
  if (components.rows() != components.cols())
    throw PoissonError("bivector components must form a square matrix");
  if (!is_antisymmetric(components))
    throw PoissonError("bivector components must be antisymmetric");
  BivectorField b;
  b.components = components;
  return b;
}

BivectorField bivector_from_frame(const ExprMatrix& frame_components, const VielbeinMatrix& v) {
  int m = v.frame.rows();
  if (frame_components.rows() != m || frame_components.cols() != m)
    throw PoissonError("frame components do not match the vielbein dimension");
  if (!is_antisymmetric(frame_components))
    throw PoissonError("bivector frame components must be antisymmetric");
  BivectorField b;
  // P^{mu nu} = e_i^mu e_j^nu P^{ij} = (F^T P F)^{mu nu}.
  b.components = mul(mul(transpose(v.frame), frame_components), v.frame);
  b.has_frame = true;
  b.frame = v.frame;
  b.frame_dual = v.dual;
  b.frame_components = frame_components;
  return b;
}

void TrivectorField::set(int lam, int mu, int nu, Expression value) {
  if (!(1 <= lam && lam < mu && mu < nu && nu <= dim_))
    throw PoissonError("trivector set requires strictly increasing indices");
  if (value.is_zero())
    entries_.erase({lam, mu, nu});
  else
    entries_[{lam, mu, nu}] = std::move(value);
}

Expression TrivectorField::at(int lam, int mu, int nu) const {
  if (lam == mu || mu == nu || lam == nu) return Expression{};
  int a = lam, b = mu, c = nu;
  int sign = 1;
  if (a > b) {
    std::swap(a, b);
    sign = -sign;
  }
  if (b > c) {
    std::swap(b, c);
    sign = -sign;
  }
  if (a > b) {
    std::swap(a, b);
    sign = -sign;
  }
  auto it = entries_.find({a, b, c});
  if (it == entries_.end()) return Expression{};
  return sign == 1 ? it->second : neg(it->second);
}

bool TrivectorField::is_zero() const { return entries_.empty(); }

std::tuple<int, int, int> TrivectorField::minimal_nonzero() const {
  std::size_t best = std::numeric_limits<std::size_t>::max();
  std::tuple<int, int, int> where{0, 0, 0};
  for (const auto& [key, value] : entries_) {
    if (value.size() < best) {
      best = value.size();
      where = key;
    }
  }
  return where;
}

TrivectorField schouten(const BivectorField& p, const BivectorField& q) {
  int m = p.dim();
  if (q.dim() != m) throw PoissonError("schouten: dimension mismatch");
  const ExprMatrix& pm = p.components;
  const ExprMatrix& qm = q.components;
  bool same = (pm == qm);

  // Precompute all coordinate derivatives once.
  std::vector<ExprMatrix> dp;
  std::vector<ExprMatrix> dq;
  dp.reserve(m);
  dq.reserve(m);
  for (int rho = 1; rho <= m; ++rho) {
    dp.push_back(partial(pm, rho));
    dq.push_back(same ? dp.back() : partial(qm, rho));
  }

  TrivectorField t(m);
  for (int lam = 1; lam <= m; ++lam) {
    for (int mu = lam + 1; mu <= m; ++mu) {
      for (int nu = mu + 1; nu <= m; ++nu) {
        Expression acc;
        for (int rho = 1; rho <= m; ++rho) {
          if (same) {
            // [P,P]^{lam mu nu} = P^{rho lam} d_rho P^{mu nu}
            //                   + P^{rho nu} d_rho P^{lam mu}
            //                   + P^{rho mu} d_rho P^{nu lam}.
            acc = add(acc, mul(pm.at1(rho, lam), dp[rho - 1].at1(mu, nu)));
            acc = add(acc, mul(pm.at1(rho, nu), dp[rho - 1].at1(lam, mu)));
            acc = add(acc, mul(pm.at1(rho, mu), dp[rho - 1].at1(nu, lam)));
          } else {
            acc = add(acc, mul(pm.at1(rho, lam), dq[rho - 1].at1(mu, nu)));
            acc = add(acc, mul(qm.at1(rho, lam), dp[rho - 1].at1(mu, nu)));
            acc = add(acc, mul(pm.at1(rho, nu), dq[rho - 1].at1(lam, mu)));
            acc = add(acc, mul(qm.at1(rho, nu), dp[rho - 1].at1(lam, mu)));
            acc = add(acc, mul(pm.at1(rho, mu), dq[rho - 1].at1(nu, lam)));
            acc = add(acc, mul(qm.at1(rho, mu), dp[rho - 1].at1(nu, lam)));
          }
        }
        t.set(lam, mu, nu, acc);
      }
    }
  }
  return t;
}

Expression poisson_bracket(const BivectorField& p, const Expression& f, const Expression& g) {
  int m = p.dim();
  std::vector<Expression> df(m + 1);
  std::vector<Expression> dg(m + 1);
  for (int i = 1; i <= m; ++i) {
    df[i] = partial(f, i);
    dg[i] = partial(g, i);
  }
  Expression acc;
  for (int mu = 1; mu <= m; ++mu) {
    for (int nu = mu + 1; nu <= m; ++nu) {
      const Expression& c = p.components.at1(mu, nu);
      if (c.is_zero()) continue;
      acc = add(acc, mul(c, sub(mul(df[mu], dg[nu]), mul(df[nu], dg[mu]))));
    }
  }
  return acc;
}

CompatibilityReport check_compatibility(const BivectorField& p, const BivectorField& q) {
  CompatibilityReport r;
  r.pp = schouten(p, p);
  r.qq = schouten(q, q);
  r.mixed = schouten(p, q);
  r.pp_ok = r.pp.is_zero();
  r.qq_ok = r.qq.is_zero();
  r.mixed_ok = r.mixed.is_zero();
  return r;
}

}  // namespace liepoisson
