#include <set>

#include "doctest.h"
#include "liepoisson/lie_catalog.hpp"
#include "liepoisson/parser.hpp"
#include "liepoisson/poisson.hpp"
#include "liepoisson/rng.hpp"
#include "liepoisson/solver.hpp"
#include "liepoisson/tables.hpp"
#include "liepoisson/vielbein.hpp"

using namespace liepoisson;

namespace {

AnsatzPattern pattern_of(const TablePair& pair) {
  AnsatzPattern pattern;
  pattern.dim = pair.dim;
  for (const auto& [i, j, text] : pair.p) {
    (void)text;
    pattern.p_slots.emplace_back(i, j);
  }
  for (const auto& [i, j, text] : pair.pprime) {
    (void)text;
    pattern.pprime_slots.emplace_back(i, j);
  }
  return pattern;
}

// Bindings of the catalogued P constants to their slot primes, used to move
// between the symbolic table data and the prime-bound linear stage.
std::map<Symbol, Expression> prime_substitution(const TablePair& pair) {
  std::map<Symbol, Expression> out;
  for (const auto& [i, j, text] : pair.p) {
    (void)text;
    out[intern_symbol(constant_unknown_name(i, j))] = Expression::constant(slot_prime(i, j));
  }
  return out;
}

ExprMatrix substituted_pprime(const TablePair& pair) {
  ExprMatrix m = parse_entry_matrix(pair.pprime, pair.dim);
  auto subs = prime_substitution(pair);
  for (int r = 1; r <= pair.dim; ++r)
    for (int c = 1; c <= pair.dim; ++c) m.at1(r, c) = substitute_symbols(m.at1(r, c), subs);
  return m;
}

void check_recovery(const std::string& name) {
  const TablePair* pair = find_table_pair(name);
  REQUIRE(pair != nullptr);
  std::map<std::string, Rational> bindings;
  if (!pair->verify_bindings.empty())
    for (const auto& [k, v] : pair->verify_bindings.front()) bindings[k] = rational_from_string(v);
  LieAlgebra alg = Catalog::builtin().lookup(pair->algebra, bindings);
  AnsatzPattern pattern = pattern_of(*pair);
  LinearSystem sys = build_linear_stage(alg, prime_bound_matrix(*pair), pattern);
  SolutionFamily family = solve_linear_stage(sys);
  auto assignment = assignment_from_matrix(substituted_pprime(*pair), pattern);
  CHECK_MESSAGE(family_contains(sys, assignment), name << ": partner not in solved family");
  std::vector<Expression> residuals = quadratic_residuals(alg, pattern, family);
  for (const Expression& r : residuals) {
    Expression on_partner = substitute_symbols(r, assignment);
    CHECK_MESSAGE(on_partner.is_zero(),
                  name << ": closure residual survives on partner: " << to_string(on_partner));
  }
}

}  // namespace

TEST_SUITE("solver") {
  TEST_CASE("unknown naming schemes") {
    CHECK(constant_unknown_name(1, 2) == "p12");
    CHECK(constant_unknown_name(3, 4) == "p34");
    CHECK(primed_constant_unknown_name(2, 4) == "pp24");
    // Four dimensions: slots keyed by a digit.
    CHECK(affine_unknown_name(4, 1, 2, 3) == "a23");
    CHECK(affine_unknown_name(4, 1, 4, 4) == "a44");
    CHECK(affine_unknown_name(4, 2, 3, 3) == "a53");
    CHECK(affine_unknown_name(4, 3, 4, 1) == "a71");
    // Six dimensions: slots keyed by a letter and the column index.
    CHECK(affine_unknown_name(6, 1, 4, 4) == "a44");
    CHECK(affine_unknown_name(6, 2, 3, 2) == "b32");
    CHECK(affine_unknown_name(6, 5, 6, 5) == "e65");
    CHECK(affine_unknown_name(6, 4, 6, 6) == "d66");
  }

  TEST_CASE("slot primes are distinct") {
    std::set<Rational> seen;
    for (int i = 1; i <= 5; ++i)
      for (int j = i + 1; j <= 6; ++j) CHECK(seen.insert(slot_prime(i, j)).second);
  }

  TEST_CASE("closure constraints accept the catalogued constants") {
    LieAlgebra alg = Catalog::builtin().lookup("A_{4,1}");
    AnsatzPattern full = AnsatzPattern::full(4);
    std::vector<Expression> constraints = jacobi_constraints_constant(alg, full);
    REQUIRE_FALSE(constraints.empty());

    // The catalogued sparsity: p12, p14, p23 free, all other slots zero.
    std::map<Symbol, Expression> table_point;
    for (int i = 1; i <= 3; ++i)
      for (int j = i + 1; j <= 4; ++j)
        table_point[intern_symbol(constant_unknown_name(i, j))] = Expression();
    for (const char* keep : {"p12", "p14", "p23"})
      table_point[intern_symbol(keep)] = Expression::symbol(keep);
    for (const Expression& c : constraints)
      CHECK(substitute_symbols(c, table_point).is_zero());

    // Turning on an extra slot violates closure.
    std::map<Symbol, Expression> corrupted = table_point;
    corrupted[intern_symbol("p34")] = Expression::symbol("p34");
    bool violated = false;
    for (const Expression& c : constraints)
      violated = violated || !substitute_symbols(c, corrupted).is_zero();
    CHECK(violated);
  }

  TEST_CASE("solved family of the first nilpotent algebra") {
    const TablePair* pair = find_table_pair("A_{4,1}");
    REQUIRE(pair != nullptr);
    LieAlgebra alg = Catalog::builtin().lookup("A_{4,1}");
    AnsatzPattern pattern = pattern_of(*pair);
    LinearSystem sys = build_linear_stage(alg, prime_bound_matrix(*pair), pattern);
    REQUIRE_FALSE(sys.rows.empty());
    SolutionFamily family = solve_linear_stage(sys);
    CHECK(family.rank + static_cast<int>(family.free_unknowns.size()) ==
          static_cast<int>(sys.unknowns.size()));

    // The catalogued partner lies in the family.
    auto assignment = assignment_from_matrix(substituted_pprime(*pair), pattern);
    CHECK(family_contains(sys, assignment));

    // Mutating a coordinate dependence leaves the family.
    ExprMatrix wrong = substituted_pprime(*pair);
    wrong.at1(1, 4) = parse_expression("a44*x3");
    wrong.at1(4, 1) = parse_expression("-a44*x3");
    CHECK_FALSE(family_contains(sys, assignment_from_matrix(wrong, pattern)));
  }

  TEST_CASE("partner recovery with closure residuals") {
    check_recovery("A_{4,1}");
    check_recovery("A_{4,3}");
  }

  TEST_CASE("catalogued pairs verify exactly") {
    TableVerification tv = verify_table("A_{4,12}");
    REQUIRE(tv.found);
    CHECK(tv.all_closed());
    CHECK(tv.bindings.size() == 1);

    TableVerification tv2 = verify_table("A_{4,5}^{a,-a}");
    REQUIRE(tv2.found);
    CHECK(tv2.all_closed());
    CHECK(tv2.bindings.size() == 2);

    TableVerification missing = verify_table("A_{6,2}");
    CHECK_FALSE(missing.found);
  }

  TEST_CASE("matrix assembly matches the contracted bracket") {
    SeededRng rng(2024);
    for (const char* name : {"A_{4,1}", "II+R", "A_{6,1}"}) {
      const TablePair* pair = find_table_pair(name);
      REQUIRE(pair != nullptr);
      LieAlgebra alg = Catalog::builtin().lookup(pair->algebra);
      VielbeinMatrix v = compute_vielbein(alg);
      int m = pair->dim;

      ExprMatrix p_f = parse_entry_matrix(pair->p, m);
      // Random affine partner, deliberately incompatible.
      ExprMatrix q_f(m, m);
      for (int i = 1; i <= m; ++i)
        for (int j = i + 1; j <= m; ++j) {
          Expression e = Expression::constant(rng.next_rational());
          for (int k = 1; k <= m; ++k)
            e = add(e, mul(Expression::coordinate(k), rng.next_rational()));
          q_f.at1(i, j) = e;
          q_f.at1(j, i) = neg(e);
        }

      BivectorField p = bivector_from_frame(p_f, v);
      BivectorField q = bivector_from_frame(q_f, v);
      TrivectorField t = schouten(p, q);

      for (int gamma = 1; gamma <= m; ++gamma) {
        ExprMatrix assembled = assemble_mixed_matrix(alg, v, p_f, q_f, gamma);
        ExprMatrix contracted = contract_trivector(t, v.dual, gamma);
        bool matched = false;
        for (const Rational& kappa :
             {Rational(1), Rational(-1), Rational(2), Rational(-2), Rational(1, 2),
              Rational(-1, 2)}) {
          bool all = true;
          for (int r = 1; r <= m && all; ++r)
            for (int c = 1; c <= m && all; ++c)
              all = sub(assembled.at1(r, c), mul(contracted.at1(r, c), kappa)).is_zero();
          if (all) {
            matched = true;
            CHECK_MESSAGE(kappa == Rational(1),
                          name << " gamma=" << gamma << " scale=" << to_string(kappa));
            break;
          }
        }
        CHECK_MESSAGE(matched, name << " gamma=" << gamma << ": no constant scale matches");
      }
    }
  }
}
