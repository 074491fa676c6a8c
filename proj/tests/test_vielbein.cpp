#include <set>

#include "doctest.h"
#include "liepoisson/lie_catalog.hpp"
#include "liepoisson/parser.hpp"
#include "liepoisson/tables.hpp"
#include "liepoisson/vielbein.hpp"

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

bool recovers(const LieAlgebra& alg) {
  VielbeinMatrix v = compute_vielbein(alg);
  auto rec = recover_structure_constants(v);
  for (int i = 1; i <= alg.dim; ++i)
    for (int j = i + 1; j <= alg.dim; ++j)
      for (int k = 1; k <= alg.dim; ++k) {
        Expression got;
        auto it = rec.find({i, j, k});
        if (it != rec.end()) got = it->second;
        if (!sub(got, alg.bracket(i, j, k)).is_zero()) return false;
      }
  return true;
}

}  // namespace

TEST_SUITE("vielbein") {
  TEST_CASE("nilpotent generators exponentiate through the series") {
    LieAlgebra alg = Catalog::builtin().lookup("A_{4,1}");
    AdjointRep ad = adjoint(alg);
    ExprMatrix e = matrix_exponential(ad.x_mats[3], 4);
    ExprMatrix want = from_texts({{"1", "0", "0", "0"},
                                  {"x4", "1", "0", "0"},
                                  {"x4^2/2", "x4", "1", "0"},
                                  {"0", "0", "0", "1"}});
    CHECK(same(e, want));
  }

  TEST_CASE("rotation generators exponentiate to sine and cosine") {
    ExprMatrix j = from_texts({{"0", "-1"}, {"1", "0"}});
    ExprMatrix e = matrix_exponential(j, 1);
    ExprMatrix want = from_texts({{"cos(x1)", "-sin(x1)"}, {"sin(x1)", "cos(x1)"}});
    CHECK(same(e, want));
  }

  TEST_CASE("real rational spectra exponentiate to exponentials") {
    ExprMatrix a = from_texts({{"0", "1"}, {"1", "0"}});
    ExprMatrix e = matrix_exponential(a, 1);
    // cosh and sinh in exponential form.
    Expression ch = parse_expression("exp(x1)/2 + exp(-1*x1)/2");
    Expression sh = parse_expression("exp(x1)/2 - exp(-1*x1)/2");
    CHECK(sub(e.at1(1, 1), ch).is_zero());
    CHECK(sub(e.at1(1, 2), sh).is_zero());
    CHECK(sub(e.at1(2, 1), sh).is_zero());
    CHECK(sub(e.at1(2, 2), ch).is_zero());
  }

  TEST_CASE("complex pairs with nonzero real part are supported") {
    // Eigenvalues 1 +- i: e^{tA} = e^t (rotation).
    ExprMatrix a = from_texts({{"1", "-1"}, {"1", "1"}});
    ExprMatrix e = matrix_exponential(a, 2);
    ExprMatrix want = from_texts({{"exp(x2)*cos(x2)", "-exp(x2)*sin(x2)"},
                                  {"exp(x2)*sin(x2)", "exp(x2)*cos(x2)"}});
    CHECK(same(e, want));
  }

  TEST_CASE("irrational spectra are rejected with a diagnostic") {
    ExprMatrix a = from_texts({{"0", "2"}, {"1", "0"}});  // eigenvalues +-sqrt(2)
    CHECK_THROWS_AS((void)matrix_exponential(a, 1), UnsupportedSpectrumError);
  }

  TEST_CASE("unbound parameters in non-nilpotent generators are rejected") {
    LieAlgebra alg = Catalog::builtin().lookup("A_{4,5}^{a,-a}");
    CHECK_THROWS_AS((void)compute_vielbein(alg), UnsupportedSpectrumError);
  }

  TEST_CASE("frame of the first nilpotent family matches the reference") {
    LieAlgebra alg = Catalog::builtin().lookup("A_{4,1}");
    VielbeinMatrix v = compute_vielbein(alg);
    const GoldenFrame* g = find_golden_frame("A_{4,1}");
    REQUIRE(g != nullptr);
    CHECK(same(v.frame, from_texts(g->rows)));
    CHECK(same(mul(v.frame, v.dual), ExprMatrix::identity(4)));
  }

  TEST_CASE("every reference frame matches except the catalogued cells") {
    for (const GoldenFrame& g : golden_frames()) {
      LieAlgebra alg = Catalog::builtin().lookup(g.algebra);
      VielbeinMatrix v = compute_vielbein(alg);
      std::set<std::pair<int, int>> expected;
      for (const auto& d : g.discrepancies) {
        expected.insert({d.row, d.col});
        // The catalogued computed value is what the construction yields.
        CHECK_MESSAGE(
            sub(parse_expression(d.computed), v.frame.at1(d.row, d.col)).is_zero(),
            g.algebra << " cell (" << d.row << "," << d.col << ")");
      }
      std::set<std::pair<int, int>> found;
      for (int r = 1; r <= g.dim; ++r)
        for (int c = 1; c <= g.dim; ++c) {
          Expression printed = parse_expression(
              g.rows[static_cast<std::size_t>(r - 1)][static_cast<std::size_t>(c - 1)]);
          if (!sub(printed, v.frame.at1(r, c)).is_zero()) found.insert({r, c});
        }
      CHECK_MESSAGE(found == expected, g.algebra);
    }
  }

  TEST_CASE("trig frames have single-term determinants") {
    LieAlgebra alg = Catalog::builtin().lookup("A_{4,12}");
    VielbeinMatrix v = compute_vielbein(alg);
    CHECK(sub(determinant(v.frame), parse_expression("exp(2*x3)")).is_zero());
    CHECK(same(mul(v.frame, v.dual), ExprMatrix::identity(4)));
  }

  TEST_CASE("structure constants are recovered from computed vielbeins") {
    CHECK(recovers(Catalog::builtin().lookup("A_{4,1}")));
    CHECK(recovers(Catalog::builtin().lookup("A_{4,2}^{-1}")));
    CHECK(recovers(Catalog::builtin().lookup("A_{4,12}")));
    CHECK(recovers(Catalog::builtin().lookup("A_{6,1}")));
    CHECK(recovers(Catalog::builtin().lookup("A_{4,5}^{a,-a}", {{"a", Rational(2)}})));
    // Nilpotent parametric family stays symbolic.
    CHECK(recovers(Catalog::builtin().lookup("A_{6,18}")));
  }
}
