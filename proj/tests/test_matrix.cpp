#include "doctest.h"
#include "liepoisson/matrix.hpp"
#include "liepoisson/parser.hpp"
#include "liepoisson/rng.hpp"

using namespace liepoisson;

namespace {

ExprMatrix from_texts(const std::vector<std::vector<std::string>>& rows) {
  int n = static_cast<int>(rows.size());
  ExprMatrix m(n, static_cast<int>(rows.front().size()));
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < static_cast<int>(rows[r].size()); ++c)
      m.at(r, c) = parse_expression(rows[r][c]);
  return m;
}

bool same(const ExprMatrix& a, const ExprMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
  for (int r = 1; r <= a.rows(); ++r)
    for (int c = 1; c <= a.cols(); ++c)
      if (!sub(a.at1(r, c), b.at1(r, c)).is_zero()) return false;
  return true;
}

}  // namespace

TEST_SUITE("matrix") {
  TEST_CASE("determinant of a polynomial matrix") {
    ExprMatrix m = from_texts({{"x1", "1", "0"}, {"0", "x1", "1"}, {"1", "0", "x1"}});
    CHECK(sub(determinant(m), parse_expression("x1^3 + 1")).is_zero());
  }

  TEST_CASE("adjugate satisfies its defining identity") {
    ExprMatrix m = from_texts({{"x1", "1", "p12"}, {"0", "x2", "1"}, {"1", "0", "x1*x2"}});
    Expression det = determinant(m);
    ExprMatrix left = mul(m, adjugate(m));
    ExprMatrix right = mul(ExprMatrix::identity(3), det);
    CHECK(same(left, right));
    CHECK(same(mul(adjugate(m), m), right));
  }

  TEST_CASE("unit-determinant inversion of a unipotent frame") {
    ExprMatrix f = from_texts({{"1", "0", "0", "0"},
                               {"x4", "1", "0", "0"},
                               {"x4^2/2", "x4", "1", "0"},
                               {"0", "0", "0", "1"}});
    REQUIRE(sub(determinant(f), Expression::constant(1)).is_zero());
    ExprMatrix inv = invert_unit_determinant(f);
    CHECK(same(mul(f, inv), ExprMatrix::identity(4)));
    CHECK(same(mul(inv, f), ExprMatrix::identity(4)));
  }

  TEST_CASE("inversion handles single-term exponential determinants") {
    ExprMatrix f = from_texts({{"exp(x3)", "x1"}, {"0", "exp(-1*x3)"}});
    CHECK(same(mul(f, invert_unit_determinant(f)), ExprMatrix::identity(2)));
  }

  TEST_CASE("trace transpose and entrywise derivative") {
    ExprMatrix m = from_texts({{"x1^2", "x2"}, {"sin(2*x1)", "7"}});
    CHECK(sub(trace(m), parse_expression("x1^2 + 7")).is_zero());
    CHECK(sub(transpose(m).at1(1, 2), parse_expression("sin(2*x1)")).is_zero());
    ExprMatrix d = partial(m, 1);
    CHECK(sub(d.at1(1, 1), parse_expression("2*x1")).is_zero());
    CHECK(sub(d.at1(2, 1), parse_expression("2*cos(2*x1)")).is_zero());
    CHECK(d.at1(1, 2).is_zero());
  }

  TEST_CASE("antisymmetry recognizer") {
    CHECK(is_antisymmetric(from_texts({{"0", "p12"}, {"-p12", "0"}})));
    CHECK_FALSE(is_antisymmetric(from_texts({{"0", "p12"}, {"p12", "0"}})));
    CHECK_FALSE(is_antisymmetric(from_texts({{"1", "p12"}, {"-p12", "0"}})));
  }

  TEST_CASE("randomized rational adjugate identities") {
    SeededRng rng(31);
    for (int iter = 0; iter < 25; ++iter) {
      int n = rng.next_int(2, 4);
      ExprMatrix m(n, n);
      for (int r = 1; r <= n; ++r)
        for (int c = 1; c <= n; ++c) m.at1(r, c) = Expression::constant(rng.next_rational());
      Expression det = determinant(m);
      CHECK(same(mul(m, adjugate(m)), mul(ExprMatrix::identity(n), det)));
    }
  }
}
