#include "liepoisson/solver.hpp"

#include <algorithm>
#include <sstream>

namespace liepoisson {

namespace {

int dim4_slot_digit(int i, int j) {
  if (i == 1 && j == 2) return 2;
  if (i == 1 && j == 3) return 3;
  if (i == 1 && j == 4) return 4;
  if (i == 2 && j == 3) return 5;
  if (i == 2 && j == 4) return 6;
  if (i == 3 && j == 4) return 7;
  throw SolverError("invalid 4-dimensional slot (" + std::to_string(i) + "," + std::to_string(j) +
                    ")");
}

}  // namespace

std::string constant_unknown_name(int i, int j) {
  return "p" + std::to_string(i) + std::to_string(j);
}

std::string primed_constant_unknown_name(int i, int j) {
  return "pp" + std::to_string(i) + std::to_string(j);
}

std::string affine_unknown_name(int dim, int i, int j, int k) {
  if (dim == 4) return "a" + std::to_string(dim4_slot_digit(i, j)) + std::to_string(k);
  if (dim == 6) {
    if (!(1 <= i && i <= 5)) throw SolverError("invalid 6-dimensional slot row");
    char letter = static_cast<char>('a' + (i - 1));
    return std::string(1, letter) + std::to_string(j) + std::to_string(k);
  }
  // Generic fallback for other dimensions: explicit slot encoding.
  return "a" + std::to_string(i) + "_" + std::to_string(j) + "_" + std::to_string(k);
}

AnsatzPattern AnsatzPattern::full(int dim) {
  AnsatzPattern p;
  p.dim = dim;
  for (int i = 1; i <= dim; ++i)
    for (int j = i + 1; j <= dim; ++j) {
      p.p_slots.emplace_back(i, j);
      p.pprime_slots.emplace_back(i, j);
    }
  return p;
}

ExprMatrix pattern_constant_matrix(const AnsatzPattern& pattern) {
  ExprMatrix m(pattern.dim, pattern.dim);
  for (const auto& [i, j] : pattern.p_slots) {
    Expression e = Expression::symbol(constant_unknown_name(i, j));
    m.at1(i, j) = e;
    m.at1(j, i) = neg(e);
  }
  return m;
}

ExprMatrix pattern_affine_matrix(const AnsatzPattern& pattern) {
  ExprMatrix m(pattern.dim, pattern.dim);
  for (const auto& [i, j] : pattern.pprime_slots) {
    Expression e = Expression::symbol(primed_constant_unknown_name(i, j));
    for (int k = 1; k <= pattern.dim; ++k)
      e = add(e, mul(Expression::symbol(affine_unknown_name(pattern.dim, i, j, k)),
                     Expression::coordinate(k)));
    m.at1(i, j) = e;
    m.at1(j, i) = neg(e);
  }
  return m;
}

std::vector<Symbol> affine_unknowns(const AnsatzPattern& pattern) {
  std::vector<Symbol> out;
  for (const auto& [i, j] : pattern.pprime_slots)
    out.push_back(intern_symbol(primed_constant_unknown_name(i, j)));
  for (const auto& [i, j] : pattern.pprime_slots)
    for (int k = 1; k <= pattern.dim; ++k)
      out.push_back(intern_symbol(affine_unknown_name(pattern.dim, i, j, k)));
  return out;
}

std::vector<Expression> jacobi_constraints_constant(const LieAlgebra& alg,
                                                    const AnsatzPattern& pattern) {
  if (pattern.dim != alg.dim) throw SolverError("pattern dimension does not match the algebra");
  int m = alg.dim;
  AdjointRep rep = adjoint(alg);
  ExprMatrix p = pattern_constant_matrix(pattern);

  std::map<std::string, Expression> canon;  // canonical render -> constraint
  for (int gamma = 1; gamma <= m; ++gamma) {
    ExprMatrix acc(m, m);
    acc = add(acc, mul(mul(p, rep.y_mats[gamma - 1]), p));
    for (int i = 1; i <= m; ++i) {
      const Expression& pig = p.at1(i, gamma);
      if (pig.is_zero()) continue;
      acc = add(acc, mul(mul(p, rep.x_mats[i - 1]), pig));
      acc = add(acc, mul(mul(transpose(rep.x_mats[i - 1]), p), pig));
    }
    for (int s = 1; s <= m; ++s) {
      for (int z = s + 1; z <= m; ++z) {
        const Expression& e = acc.at1(s, z);
        if (e.is_zero()) continue;
        std::string plus = to_string(e);
        std::string minus = to_string(neg(e));
        if (plus <= minus)
          canon.emplace(plus, e);
        else
          canon.emplace(minus, neg(e));
      }
    }
  }
  std::vector<Expression> out;
  out.reserve(canon.size());
  for (auto& [key, value] : canon) out.push_back(value);
  return out;
}

namespace {

// Splits an expression into basis-function pieces: coefficient expressions
// (parameter part only) keyed by the coordinate-dependent factor.
std::map<BasisKey, Expression> collect_by_basis(const Expression& a) {
  std::map<BasisKey, Expression> out;
  for (const auto& [key, coeff] : a.terms()) {
    BasisKey basis{key.mono, key.exps, key.trig};
    TermKey param_part;
    param_part.params = key.params;
    out[basis].accumulate(param_part, coeff);
  }
  return out;
}

}  // namespace

LinearSystem build_linear_stage(const LieAlgebra& alg, const ExprMatrix& p_constant,
                                const AnsatzPattern& pattern) {
  if (pattern.dim != alg.dim) throw SolverError("pattern dimension does not match the algebra");
  int m = alg.dim;
  if (p_constant.rows() != m || p_constant.cols() != m)
    throw SolverError("constant bivector dimension mismatch");
  for (int r = 1; r <= m; ++r)
    for (int c = 1; c <= m; ++c)
      if (!free_coordinates(p_constant.at1(r, c)).empty())
        throw SolverError("the constant bivector must not depend on coordinates");

  VielbeinMatrix v = compute_vielbein(alg);
  BivectorField bp = bivector_from_frame(p_constant, v);
  BivectorField bq = bivector_from_frame(pattern_affine_matrix(pattern), v);
  TrivectorField mixed = schouten(bp, bq);

  LinearSystem sys;
  sys.unknowns = affine_unknowns(pattern);
  std::set<Symbol> unknown_set(sys.unknowns.begin(), sys.unknowns.end());
  std::map<Symbol, int> index;
  for (std::size_t u = 0; u < sys.unknowns.size(); ++u)
    index[sys.unknowns[u]] = static_cast<int>(u);

  std::set<std::vector<Rational>> seen;
  for (const auto& [triple, expr] : mixed.entries()) {
    auto collected = collect_linear(expr, unknown_set);
    for (const auto& [basis, form] : collected) {
      if (!form.constant.is_zero())
        throw SolverError("mixed bracket has an unknown-free component; the constant bivector "
                          "appears to involve ansatz symbols");
      std::vector<Rational> row(sys.unknowns.size(), Rational(0));
      bool nonzero = false;
      for (const auto& [sym, coeff] : form.coeffs) {
        if (coeff.is_zero()) continue;
        if (!coeff.is_rational_constant())
          throw NonlinearityError(
              "linear-stage coefficient of " + symbol_name(sym) +
              " is not a rational constant (bind the constant bivector to rational values): " +
              to_string(coeff));
        row[index.at(sym)] = coeff.rational_value();
        nonzero = true;
      }
      if (!nonzero) continue;
      // Scale to a canonical representative so duplicated equations collapse.
      Rational lead(0);
      for (const Rational& c : row)
        if (c != 0) {
          lead = c;
          break;
        }
      for (Rational& c : row) c /= lead;
      if (seen.insert(row).second) sys.rows.push_back(std::move(row));
    }
  }
  return sys;
}

SolutionFamily solve_linear_stage(const LinearSystem& sys) {
  SolutionFamily fam;
  fam.unknowns = sys.unknowns;
  int u = static_cast<int>(sys.unknowns.size());
  std::vector<std::vector<Rational>> a = sys.rows;
  int nrows = static_cast<int>(a.size());

  std::vector<int> pivot_row_of_col(u, -1);
  int r = 0;
  for (int col = 0; col < u && r < nrows; ++col) {
    int sel = -1;
    for (int row = r; row < nrows; ++row)
      if (a[row][col] != 0) {
        sel = row;
        break;
      }
    if (sel < 0) continue;
    std::swap(a[sel], a[r]);
    Rational inv = a[r][col];
    for (int c = col; c < u; ++c) a[r][c] /= inv;
    for (int row = 0; row < nrows; ++row) {
      if (row == r || a[row][col] == 0) continue;
      Rational f = a[row][col];
      for (int c = col; c < u; ++c) a[row][c] -= f * a[r][c];
    }
    pivot_row_of_col[col] = r;
    ++r;
  }
  fam.rank = r;

  for (int col = 0; col < u; ++col)
    if (pivot_row_of_col[col] < 0) fam.free_unknowns.push_back(sys.unknowns[col]);

  for (int col = 0; col < u; ++col) {
    int prow = pivot_row_of_col[col];
    if (prow < 0) continue;
    Expression sol;
    for (int c = col + 1; c < u; ++c) {
      if (pivot_row_of_col[c] >= 0) continue;  // only frees carry weight after RREF
      if (a[prow][c] == 0) continue;
      sol = sub(sol, mul(Expression::symbol(sys.unknowns[c]), a[prow][c]));
    }
    fam.pivot_solutions[sys.unknowns[col]] = sol;
  }

  for (Symbol f : fam.free_unknowns) {
    std::vector<Rational> vec(u, Rational(0));
    int fcol = -1;
    for (int c = 0; c < u; ++c)
      if (sys.unknowns[c] == f) {
        fcol = c;
        break;
      }
    vec[fcol] = 1;
    for (int col = 0; col < u; ++col) {
      int prow = pivot_row_of_col[col];
      if (prow >= 0) vec[col] = -a[prow][fcol];
    }
    fam.nullspace.push_back(std::move(vec));
  }
  return fam;
}

bool family_contains(const LinearSystem& sys, const std::map<Symbol, Expression>& assignment) {
  for (const auto& row : sys.rows) {
    Expression acc;
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (row[c] == 0) continue;
      auto it = assignment.find(sys.unknowns[c]);
      if (it == assignment.end() || it->second.is_zero()) continue;
      acc = add(acc, mul(it->second, row[c]));
    }
    if (!acc.is_zero()) return false;
  }
  return true;
}

std::vector<Expression> quadratic_residuals(const LieAlgebra& alg, const AnsatzPattern& pattern,
                                            const SolutionFamily& family) {
  VielbeinMatrix v = compute_vielbein(alg);
  ExprMatrix ansatz = pattern_affine_matrix(pattern);
  ExprMatrix solved(pattern.dim, pattern.dim);
  for (int r = 1; r <= pattern.dim; ++r)
    for (int c = 1; c <= pattern.dim; ++c)
      solved.at1(r, c) = substitute_symbols(ansatz.at1(r, c), family.pivot_solutions);

  BivectorField bq = bivector_from_frame(solved, v);
  TrivectorField closure = schouten(bq, bq);

  std::map<std::string, Expression> canon;
  for (const auto& [triple, expr] : closure.entries()) {
    for (const auto& [basis, coeff] : collect_by_basis(expr)) {
      if (coeff.is_zero()) continue;
      std::string plus = to_string(coeff);
      std::string minus = to_string(neg(coeff));
      if (plus <= minus)
        canon.emplace(plus, coeff);
      else
        canon.emplace(minus, neg(coeff));
    }
  }
  std::vector<Expression> out;
  out.reserve(canon.size());
  for (auto& [key, value] : canon) out.push_back(value);
  return out;
}

std::map<Symbol, Expression> assignment_from_matrix(const ExprMatrix& pprime,
                                                    const AnsatzPattern& pattern) {
  std::map<Symbol, Expression> out;
  for (const auto& [i, j] : pattern.pprime_slots) {
    Expression e = pprime.at1(i, j);
    Expression constant = e;
    for (int k = 1; k <= pattern.dim; ++k) {
      Expression coeff = partial(e, k);
      if (!free_coordinates(coeff).empty())
        throw SolverError("ansatz entry (" + std::to_string(i) + "," + std::to_string(j) +
                          ") is not affine in the coordinates: " + to_string(e));
      out[intern_symbol(affine_unknown_name(pattern.dim, i, j, k))] = coeff;
      constant = substitute_coordinate(constant, k, Rational(0));
    }
    out[intern_symbol(primed_constant_unknown_name(i, j))] = constant;
  }
  return out;
}

Rational slot_prime(int i, int j) {
  static const int primes[6][6] = {
      // j:    1  2  3   4   5   6          (i < j used only)
      /*i=1*/ {0, 2, 3, 5, 7, 11},
      /*i=2*/ {0, 0, 13, 17, 19, 23},
      /*i=3*/ {0, 0, 0, 29, 31, 37},
      /*i=4*/ {0, 0, 0, 0, 41, 43},
      /*i=5*/ {0, 0, 0, 0, 0, 47},
      /*i=6*/ {0, 0, 0, 0, 0, 0},
  };
  if (!(1 <= i && i < j && j <= 6)) throw SolverError("slot_prime: need 1 <= i < j <= 6");
  return Rational(primes[i - 1][j - 1]);
}

ExprMatrix prime_bound_matrix(const TablePair& pair) {
  ExprMatrix m(pair.dim, pair.dim);
  for (const auto& [i, j, text] : pair.p) {
    Expression e = Expression::constant(slot_prime(i, j));
    m.at1(i, j) = e;
    m.at1(j, i) = neg(e);
  }
  return m;
}

ExprMatrix assemble_mixed_matrix(const LieAlgebra& alg, const VielbeinMatrix& v,
                                 const ExprMatrix& p, const ExprMatrix& pprime, int gamma) {
  int m = alg.dim;
  AdjointRep rep = adjoint(alg);
  const ExprMatrix& f = v.frame;

  ExprMatrix acc(m, m);
  acc = add(acc, mul(mul(p, rep.y_mats[gamma - 1]), pprime));
  acc = add(acc, mul(mul(pprime, rep.y_mats[gamma - 1]), p));
  for (int i = 1; i <= m; ++i) {
    const ExprMatrix& xi = rep.x_mats[i - 1];
    const Expression& pig = p.at1(i, gamma);
    const Expression& qig = pprime.at1(i, gamma);
    if (!qig.is_zero()) {
      acc = add(acc, mul(mul(p, xi), qig));
      acc = add(acc, mul(mul(transpose(xi), p), qig));
    }
    if (!pig.is_zero()) {
      acc = add(acc, mul(mul(pprime, xi), pig));
      acc = add(acc, mul(mul(transpose(xi), pprime), pig));
    }
  }

  // w[k][g] = frame-transported constant bivector, e_i^k P^{i g} = (F^T P)[k][g].
  ExprMatrix w = mul(transpose(f), p);

  std::vector<ExprMatrix> dq;
  dq.reserve(m);
  for (int k = 1; k <= m; ++k) dq.push_back(partial(pprime, k));

  // Directional derivative of the whole affine matrix along the transported
  // column gamma, plus the two one-sided derivative matrices.
  for (int k = 1; k <= m; ++k) {
    const Expression& wg = w.at1(k, gamma);
    if (!wg.is_zero()) acc = add(acc, mul(dq[k - 1], wg));
  }
  for (int r = 1; r <= m; ++r) {
    for (int c = 1; c <= m; ++c) {
      Expression aterm;
      Expression bterm;
      for (int k = 1; k <= m; ++k) {
        const Expression& dq_cg = dq[k - 1].at1(c, gamma);
        if (!dq_cg.is_zero()) aterm = add(aterm, mul(w.at1(k, r), dq_cg));
        const Expression& dq_gr = dq[k - 1].at1(gamma, r);
        if (!dq_gr.is_zero()) bterm = add(bterm, mul(w.at1(k, c), dq_gr));
      }
      acc.at1(r, c) = add(acc.at1(r, c), add(aterm, bterm));
    }
  }
  return acc;
}

ExprMatrix contract_trivector(const TrivectorField& t, const ExprMatrix& dual, int gamma) {
  int m = t.dim();
  ExprMatrix out(m, m);
  for (int s = 1; s <= m; ++s) {
    for (int z = 1; z <= m; ++z) {
      Expression acc;
      for (const auto& [triple, value] : t.entries()) {
        auto [lam, mu, nu] = triple;
        // Expand the strictly-increasing entry over all 6 permutations. The
        // group components were pushed with frame rows (P = F^T P_f F), so the
        // pull-back contracts with dual columns: P_f = dual^T P dual.
        const int idx[6][3] = {{lam, mu, nu}, {mu, nu, lam}, {nu, lam, mu},
                               {mu, lam, nu}, {lam, nu, mu}, {nu, mu, lam}};
        for (int perm = 0; perm < 6; ++perm) {
          Expression weight = mul(mul(dual.at1(idx[perm][0], s), dual.at1(idx[perm][1], z)),
                                  dual.at1(idx[perm][2], gamma));
          if (weight.is_zero()) continue;
          acc = perm < 3 ? add(acc, mul(weight, value)) : sub(acc, mul(weight, value));
        }
      }
      out.at1(s, z) = acc;
    }
  }
  return out;
}

TableVerification verify_table(const std::string& algebra) {
  TableVerification out;
  const TablePair* t = find_table_pair(algebra);
  if (t == nullptr) {
    out.algebra = algebra;
    return out;
  }
  out.algebra = t->algebra;
  out.found = true;
  out.side_condition = t->side_condition;
  out.notes = t->notes;
  out.p_closed = out.pprime_closed = out.mixed_closed = true;

  std::vector<std::map<std::string, Rational>> bindings;
  if (t->verify_bindings.empty()) {
    bindings.emplace_back();
  } else {
    for (const auto& b : t->verify_bindings) {
      std::map<std::string, Rational> binding;
      for (const auto& [name, text] : b) binding[name] = rational_from_string(text);
      bindings.push_back(std::move(binding));
    }
  }

  for (const auto& binding : bindings) {
    std::string desc;
    if (binding.empty()) {
      desc = "unbound";
    } else {
      std::ostringstream os;
      bool first = true;
      for (const auto& [name, value] : binding) {
        if (!first) os << ", ";
        os << name << " = " << to_string(value);
        first = false;
      }
      desc = os.str();
    }
    out.bindings.push_back(desc);

    LieAlgebra alg = Catalog::builtin().lookup(t->algebra, binding);
    VielbeinMatrix v = compute_vielbein(alg);
    BivectorField bp = bivector_from_frame(parse_entry_matrix(t->p, t->dim), v);
    BivectorField bq = bivector_from_frame(parse_entry_matrix(t->pprime, t->dim), v);
    CompatibilityReport rep = check_compatibility(bp, bq);
    out.p_closed = out.p_closed && rep.pp_ok;
    out.pprime_closed = out.pprime_closed && rep.qq_ok;
    out.mixed_closed = out.mixed_closed && rep.mixed_ok;

    if (out.minimal_residual.empty()) {
      auto describe = [&](const char* label, const TrivectorField& tri) {
        auto [lam, mu, nu] = tri.minimal_nonzero();
        std::ostringstream os;
        os << label << "^(" << lam << "," << mu << "," << nu
           << ") = " << to_string(tri.at(lam, mu, nu));
        if (!binding.empty()) os << "  [" << desc << "]";
        return os.str();
      };
      if (!rep.pp_ok)
        out.minimal_residual = describe("[P,P]", rep.pp);
      else if (!rep.qq_ok)
        out.minimal_residual = describe("[P',P']", rep.qq);
      else if (!rep.mixed_ok)
        out.minimal_residual = describe("[P,P']", rep.mixed);
    }
  }
  return out;
}

}  // namespace liepoisson
