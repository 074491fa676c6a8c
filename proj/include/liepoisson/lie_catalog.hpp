#pragma once

#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "liepoisson/expression.hpp"
#include "liepoisson/matrix.hpp"

namespace liepoisson {

class CatalogError : public std::runtime_error {
 public:
  explicit CatalogError(const std::string& what) : std::runtime_error(what) {}
};

struct ParamSpec {
  std::string symbol;
  std::optional<Rational> value;           // bound value, if any
  std::vector<std::string> constraints;    // "expr != 0" or "expr == expr"
};

// Structure constants C_{ij}^k of a finite-dimensional real Lie algebra,
// stored on i<j; coefficients may involve declared parameter symbols.
struct LieAlgebra {
  std::string name;
  int dim = 0;
  bool symplectic = false;
  std::vector<ParamSpec> params;
  std::map<std::tuple<int, int, int>, Expression> structure;

  // Full tensor entry with antisymmetry applied.
  Expression bracket(int i, int j, int k) const;
  // Bound values of parameters that carry one.
  std::map<Symbol, Rational> bound_params() const;
  bool fully_bound() const;
};

// Adjoint data: x_mats[i-1] is the m-by-m matrix with (row j, col k) entry
// -C_{ij}^k; y_mats[k-1] is the antisymmetric matrix with (i, j) entry
// -C_{ij}^k.
struct AdjointRep {
  std::vector<ExprMatrix> x_mats;
  std::vector<ExprMatrix> y_mats;
};

struct ValidationIssue {
  std::string kind;  // "antisymmetry" or "jacobi"
  int i = 0, j = 0, k = 0, s = 0;
  Expression residual;
};

std::vector<ValidationIssue> validate(const LieAlgebra& alg);
AdjointRep adjoint(const LieAlgebra& alg);

// Structured-file form: {brackets, dim, name, params, symplectic}; bracket
// rows are [i, j, k, coefficient-string]. Load and save round-trip to
// identical bytes for canonically saved files.
LieAlgebra algebra_from_json_text(const std::string& text);
std::string algebra_to_json_text(const LieAlgebra& alg);
LieAlgebra load_algebra_file(const std::string& path);

class Catalog {
 public:
  // Built-in catalog loaded from the bundled data file (cached).
  static const Catalog& builtin();

  explicit Catalog(std::vector<LieAlgebra> entries) : entries_(std::move(entries)) {}

  std::vector<std::string> names() const;
  bool contains(const std::string& name) const;

  // Looks up an algebra, binding the given parameter values (unbound
  // parameters stay symbolic). Throws CatalogError on unknown names, unknown
  // parameter symbols, or violated constraints.
  LieAlgebra lookup(const std::string& name,
                    const std::map<std::string, Rational>& params = {}) const;

  const std::vector<LieAlgebra>& entries() const { return entries_; }

 private:
  std::vector<LieAlgebra> entries_;
};

// Binds parameters of an already-loaded algebra (same checks as lookup).
LieAlgebra bind_parameters(const LieAlgebra& alg, const std::map<std::string, Rational>& params);

}  // namespace liepoisson
