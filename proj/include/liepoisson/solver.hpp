#pragma once

#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "liepoisson/lie_catalog.hpp"
#include "liepoisson/matrix.hpp"
#include "liepoisson/poisson.hpp"
#include "liepoisson/tables.hpp"
#include "liepoisson/vielbein.hpp"

namespace liepoisson {

class SolverError : public std::runtime_error {
 public:
  explicit SolverError(const std::string& what) : std::runtime_error(what) {}
};

// Unknown naming. Constant bivector slots use "p" + i + j; primed constants
// "pp" + i + j. Affine coefficients follow the catalogued tables: in
// dimension 4 the slot (i,j) is encoded by a digit (1,2)->2 .. (3,4)->7 after
// the letter 'a'; in dimension 6 the first index picks the letter a..e and
// the second index follows, then the coordinate.
std::string constant_unknown_name(int i, int j);
std::string primed_constant_unknown_name(int i, int j);
std::string affine_unknown_name(int dim, int i, int j, int k);

// Sparsity pattern of an ansatz: which strictly-upper slots of P and P' may
// be nonzero. P' slots carry a constant unknown plus one coefficient unknown
// per coordinate.
struct AnsatzPattern {
  int dim = 0;
  std::vector<std::pair<int, int>> p_slots;
  std::vector<std::pair<int, int>> pprime_slots;

  static AnsatzPattern full(int dim);
};

// Antisymmetric matrix of constant unknowns on the pattern's P slots.
ExprMatrix pattern_constant_matrix(const AnsatzPattern& pattern);
// Antisymmetric matrix of affine ansatz entries on the pattern's P' slots.
ExprMatrix pattern_affine_matrix(const AnsatzPattern& pattern);
// The P' unknowns in solver order: primed constants first (slot order), then
// affine coefficients by (slot, coordinate).
std::vector<Symbol> affine_unknowns(const AnsatzPattern& pattern);

// Quadratic closure constraints on a constant bivector in frame indices:
// entries of P adj_i P^{i gamma} + P adjdual^gamma P + P^{i gamma} adj_i^T P
// over all gamma, deduplicated up to overall sign, deterministically ordered.
std::vector<Expression> jacobi_constraints_constant(const LieAlgebra& alg,
                                                    const AnsatzPattern& pattern);

// Homogeneous exact-rational linear system over ordered unknowns.
struct LinearSystem {
  std::vector<Symbol> unknowns;
  std::vector<std::vector<Rational>> rows;
};

// Builds the linear stage of the compatibility problem: P bound to the given
// constant matrix, P' the affine ansatz; both pushed to group coordinates
// through the vielbein; the mixed bracket collected per basis function.
// Non-rational coefficients (a symbolic P) raise NonlinearityError.
LinearSystem build_linear_stage(const LieAlgebra& alg, const ExprMatrix& p_constant,
                                const AnsatzPattern& pattern);

// Reduced solution of a homogeneous system: pivots eliminated towards the
// smallest unknown indices, free unknowns parameterize the family.
struct SolutionFamily {
  std::vector<Symbol> unknowns;
  int rank = 0;
  std::vector<Symbol> free_unknowns;
  std::map<Symbol, Expression> pivot_solutions;   // pivot -> expr in frees
  std::vector<std::vector<Rational>> nullspace;   // basis, one per free unknown
};

SolutionFamily solve_linear_stage(const LinearSystem& sys);

// Whether an assignment unknown -> expression satisfies every equation
// identically (expressions may involve further symbolic parameters).
bool family_contains(const LinearSystem& sys, const std::map<Symbol, Expression>& assignment);

// Closure residuals of the solved family: [P', P'] with pivot unknowns
// substituted by their solutions, collected per basis function; the distinct
// nonzero quadratic polynomials in the free unknowns.
std::vector<Expression> quadratic_residuals(const LieAlgebra& alg, const AnsatzPattern& pattern,
                                            const SolutionFamily& family);

// Reads an affine matrix as an assignment to the pattern's P' unknowns.
std::map<Symbol, Expression> assignment_from_matrix(const ExprMatrix& pprime,
                                                    const AnsatzPattern& pattern);

// Deterministic constant binding for a table P pattern: distinct primes per
// strictly-upper slot.
Rational slot_prime(int i, int j);
ExprMatrix prime_bound_matrix(const TablePair& pair);

// Secondary assembly of the mixed identity as one matrix per output index
// gamma, including the derivative terms of the affine ansatz; cross-checked
// against the frame contraction of the direct mixed bracket.
ExprMatrix assemble_mixed_matrix(const LieAlgebra& alg, const VielbeinMatrix& v,
                                 const ExprMatrix& p, const ExprMatrix& pprime, int gamma);
// S[s][z] = dual^s_lam dual^z_mu dual^gamma_nu T^{lam mu nu} for fixed gamma.
ExprMatrix contract_trivector(const TrivectorField& t, const ExprMatrix& dual, int gamma);

// Full verification of one catalogued pair (all three bracket identities,
// re-run per parameter binding when the row specifies bindings).
struct TableVerification {
  std::string algebra;
  bool found = false;
  std::vector<std::string> bindings;  // description of each verification run
  bool p_closed = false;
  bool pprime_closed = false;
  bool mixed_closed = false;
  std::string minimal_residual;  // witness entry when some identity fails
  std::string side_condition;
  std::vector<std::string> notes;

  bool all_closed() const { return p_closed && pprime_closed && mixed_closed; }
};

TableVerification verify_table(const std::string& algebra);

}  // namespace liepoisson
