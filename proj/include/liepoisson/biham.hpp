#pragma once

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "liepoisson/poisson.hpp"
#include "liepoisson/rational_expression.hpp"

namespace liepoisson {

// Thrown when a bivector that must be inverted has identically zero
// determinant.
class SingularBivectorError : public std::runtime_error {
 public:
  explicit SingularBivectorError(const std::string& what) : std::runtime_error(what) {}
};

// Thrown when no sampled evaluation point avoids the singular loci of the
// functions under test.
class DegeneratePointsError : public std::runtime_error {
 public:
  explicit DegeneratePointsError(const std::string& what) : std::runtime_error(what) {}
};

// Adjugate/determinant pair of the component matrix, so that the exact
// inverse is adjugate/det.
struct BivectorInverse {
  ExprMatrix adjugate_matrix;
  Expression det;
};

BivectorInverse invert_bivector(const BivectorField& p);

// Recursion operator N = P' P^{-1}, held as an exact numerator matrix over a
// single scalar denominator: N^l_m = numerator(l, m) / denominator.  When the
// determinant of P is a single invertible term the denominator folds away and
// every entry lives in the plain ring.
struct RecursionOperator {
  int dim = 0;
  ExprMatrix numerator;
  Expression denominator;

  RationalExpression entry(int row, int col) const;  // 1-based indices
};

RecursionOperator recursion_operator(const BivectorField& p, const BivectorField& pprime);

// Trace integrals H_k = tr(N^k) / (2k) for k = 1..kmax.
std::vector<RationalExpression> trace_integrals(const BivectorField& p,
                                                const BivectorField& pprime, int kmax);

// Lie bracket of vector fields, [X,Y]^mu = X^nu d_nu Y^mu - Y^nu d_nu X^mu.
// Vectors are 0-indexed: component k is the coefficient of d/dx_{k+1}.
std::vector<RationalExpression> vector_field_commutator(
    const std::vector<RationalExpression>& x, const std::vector<RationalExpression>& y);

// Action of the recursion operator on a vector field, (N X)^l = N^l_m X^m.
std::vector<RationalExpression> apply_operator(const RecursionOperator& n,
                                               const std::vector<RationalExpression>& x);

// Nijenhuis torsion applied to a pair of vector fields:
//   T(X,Y) = [NX, NY] - N [NX, Y] - N [X, NY] + N^2 [X, Y].
std::vector<RationalExpression> nijenhuis_torsion(const RecursionOperator& n,
                                                  const std::vector<RationalExpression>& x,
                                                  const std::vector<RationalExpression>& y);

// Exact vanishing test of the torsion over all coordinate directions.  Uses
// the ring-valued scaling d^3 T^l_{mu nu} so no rational functions appear.
struct TorsionReport {
  bool vanishes = true;
  // First nonvanishing component, when present.
  int lam = 0, mu = 0, nu = 0;
  Expression witness;
};

TorsionReport torsion_vanishes(const RecursionOperator& n);

// Poisson bracket of two rational functions under the bivector p.
RationalExpression poisson_bracket(const BivectorField& p, const RationalExpression& f,
                                   const RationalExpression& g);

// Lenard recursion check: P' dH_i = P dH_{i+1} for consecutive members.
struct LenardReport {
  std::vector<bool> links;  // links[i] connects h[i] to h[i+1]
  bool all_hold = true;
  std::string witness;  // description of the first broken link
};

LenardReport lenard_check(const BivectorField& p, const BivectorField& pprime,
                          const std::vector<RationalExpression>& h);

// Pairwise involution of the functions under both Poisson structures.
struct InvolutionReport {
  bool all_vanish = true;
  int failures = 0;
  std::string witness;  // description of the first nonvanishing bracket
};

InvolutionReport involution_check(const BivectorField& p, const BivectorField& pprime,
                                  const std::vector<RationalExpression>& h);

// Functional independence: maximal exact rank of the gradient matrix of h
// over the supplied evaluation points.  Points where any entry fails to
// evaluate (zero denominators and the like) are skipped; if every point is
// unusable a DegeneratePointsError is thrown.
int independence_rank(const std::vector<RationalExpression>& h, int dim,
                      const std::vector<std::map<Coordinate, Rational>>& points,
                      const std::map<Symbol, Rational>& params);

// Seeded generic points in the coordinate space that avoid the denominator
// zeros of the supplied functions.
std::vector<std::map<Coordinate, Rational>> sample_points(
    int dim, int count, std::uint64_t seed, const std::vector<RationalExpression>& h,
    const std::map<Symbol, Rational>& params);

}  // namespace liepoisson
