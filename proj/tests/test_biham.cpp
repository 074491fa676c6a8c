#include <vector>

#include "doctest.h"
#include "liepoisson/biham.hpp"
#include "liepoisson/lie_catalog.hpp"
#include "liepoisson/parser.hpp"
#include "liepoisson/poisson.hpp"
#include "liepoisson/rng.hpp"
#include "liepoisson/tables.hpp"
#include "liepoisson/vielbein.hpp"

using namespace liepoisson;

namespace {

ExprMatrix canonical_symplectic(int dim, const Rational& scale = Rational(1)) {
  ExprMatrix m(dim, dim);
  for (int i = 1; i + 1 <= dim; i += 2) {
    m.at1(i, i + 1) = Expression::constant(scale);
    m.at1(i + 1, i) = Expression::constant(-scale);
  }
  return m;
}

std::vector<RationalExpression> basis_field(int dim, int mu) {
  std::vector<RationalExpression> x(dim);
  x[mu - 1] = RationalExpression::constant(Rational(1));
  return x;
}

}  // namespace

TEST_SUITE("biham") {
  TEST_CASE("canonical structure recursion is the identity") {
    BivectorField p = bivector_from_components(canonical_symplectic(4));
    RecursionOperator n = recursion_operator(p, p);
    CHECK(n.numerator == ExprMatrix::identity(4));
    CHECK(n.denominator.is_rational_constant());
    CHECK(n.denominator.rational_value() == Rational(1));

    std::vector<RationalExpression> h = trace_integrals(p, p, 2);
    REQUIRE(h.size() == 2);
    CHECK(equal(h[0], RationalExpression::constant(Rational(2))));
    CHECK(equal(h[1], RationalExpression::constant(Rational(1))));

    RationalExpression x1{Expression::coordinate(1)};
    RationalExpression x2{Expression::coordinate(2)};
    CHECK(equal(poisson_bracket(p, x1, x2), RationalExpression::constant(Rational(1))));
  }

  TEST_CASE("frame and component trace integrals agree") {
    const TablePair* pair = find_table_pair("A_{4,1}");
    REQUIRE(pair != nullptr);
    LieAlgebra alg = Catalog::builtin().lookup(pair->algebra);
    VielbeinMatrix v = compute_vielbein(alg);
    BivectorField p = bivector_from_frame(parse_entry_matrix(pair->p, pair->dim), v);
    BivectorField q = bivector_from_frame(parse_entry_matrix(pair->pprime, pair->dim), v);

    RecursionOperator n = recursion_operator(p, q);
    // The frame determinant is a single invertible factor, so the denominator
    // folds away entirely.
    CHECK(n.denominator.is_rational_constant());
    CHECK(n.denominator.rational_value() == Rational(1));
    CHECK(torsion_vanishes(n).vanishes);

    BivectorField p_plain = bivector_from_components(p.components);
    BivectorField q_plain = bivector_from_components(q.components);
    std::vector<RationalExpression> h_frame = trace_integrals(p, q, 2);
    std::vector<RationalExpression> h_plain = trace_integrals(p_plain, q_plain, 2);
    REQUIRE(h_frame.size() == 2);
    REQUIRE(h_plain.size() == 2);
    for (int k = 0; k < 2; ++k) CHECK(equal(h_frame[k], h_plain[k]));

    LenardReport lr = lenard_check(p, q, h_frame);
    CHECK(lr.all_hold);
    InvolutionReport ir = involution_check(p, q, h_frame);
    CHECK(ir.all_vanish);
    CHECK(ir.failures == 0);
  }

  TEST_CASE("torsion scan agrees with the direct torsion") {
    // A generic affine partner of a scaled canonical structure fails the
    // torsion test; the reported witness must match the direct evaluation.
    BivectorField p = bivector_from_components(canonical_symplectic(4, Rational(2)));
    SeededRng rng(99);
    ExprMatrix affine(4, 4);
    for (int i = 1; i <= 3; ++i)
      for (int j = i + 1; j <= 4; ++j) {
        Expression e = Expression::constant(rng.next_rational());
        for (int k = 1; k <= 4; ++k)
          e = add(e, mul(Expression::coordinate(k), rng.next_rational()));
        affine.at1(i, j) = e;
        affine.at1(j, i) = neg(e);
      }
    BivectorField q = bivector_from_components(affine);

    RecursionOperator n = recursion_operator(p, q);
    TorsionReport report = torsion_vanishes(n);
    REQUIRE_FALSE(report.vanishes);
    REQUIRE(report.lam >= 1);
    REQUIRE(report.mu < report.nu);

    std::vector<RationalExpression> direct =
        nijenhuis_torsion(n, basis_field(4, report.mu), basis_field(4, report.nu));
    Expression den_cubed = mul(mul(n.denominator, n.denominator), n.denominator);
    CHECK(equal(direct[report.lam - 1], RationalExpression(report.witness, den_cubed)));
  }

  TEST_CASE("vector field commutator") {
    std::vector<RationalExpression> x(4), y(4);
    x[0] = RationalExpression{Expression::coordinate(1)};
    y[0] = RationalExpression::constant(Rational(1));
    std::vector<RationalExpression> c = vector_field_commutator(x, y);
    CHECK(equal(c[0], RationalExpression::constant(Rational(-1))));
    for (int k = 1; k < 4; ++k) CHECK(c[k].is_zero());
  }

  TEST_CASE("independence rank") {
    std::map<Symbol, Rational> no_params;
    std::vector<RationalExpression> independent{RationalExpression{Expression::coordinate(1)},
                                                RationalExpression{Expression::coordinate(2)}};
    auto points = sample_points(4, 6, 7, independent, no_params);
    REQUIRE(points.size() == 6);
    CHECK(independence_rank(independent, 4, points, no_params) == 2);

    // f and f^2 are functionally dependent.
    Expression f = add(Expression::coordinate(1),
                       mul(Expression::coordinate(2), Expression::coordinate(2)));
    std::vector<RationalExpression> dependent{RationalExpression{f},
                                              RationalExpression{mul(f, f)}};
    auto points2 = sample_points(4, 6, 11, dependent, no_params);
    CHECK(independence_rank(dependent, 4, points2, no_params) == 1);

    // Determinism of the sampler.
    auto again = sample_points(4, 6, 7, independent, no_params);
    CHECK(points == again);
  }

  TEST_CASE("singular evaluation points are rejected") {
    std::map<Symbol, Rational> no_params;
    std::vector<RationalExpression> h{
        RationalExpression(Expression::constant(Rational(1)), Expression::coordinate(1))};
    std::map<Coordinate, Rational> origin;
    for (int k = 1; k <= 2; ++k) origin[k] = Rational(0);
    CHECK_THROWS_AS(independence_rank(h, 2, {origin}, no_params), DegeneratePointsError);
  }

  TEST_CASE("odd-dimensional bivectors cannot be inverted") {
    ExprMatrix m(3, 3);
    m.at1(1, 2) = Expression::coordinate(1);
    m.at1(2, 1) = neg(Expression::coordinate(1));
    CHECK_THROWS_AS(invert_bivector(bivector_from_components(m)), SingularBivectorError);
  }
}
