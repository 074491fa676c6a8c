#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <tuple>

#include "liepoisson/lie_catalog.hpp"
#include "liepoisson/matrix.hpp"

namespace liepoisson {

// Raised when a generator's spectrum is outside the supported class
// (rational eigenvalues plus at most one conjugate pair with rational real
// part and rational imaginary part); carries the irreducible factor in the
// message.
class UnsupportedSpectrumError : public std::runtime_error {
 public:
  explicit UnsupportedSpectrumError(const std::string& what) : std::runtime_error(what) {}
};

class VielbeinError : public std::runtime_error {
 public:
  explicit VielbeinError(const std::string& what) : std::runtime_error(what) {}
};

// Exact e^{x_t A}. Nilpotent matrices (symbolic entries permitted) use the
// terminating power series; otherwise A must have rational entries and the
// exponential is assembled by Putzer's recurrence over the exact spectrum.
ExprMatrix matrix_exponential(const ExprMatrix& a, Coordinate t);

struct VielbeinMatrix {
  std::string algebra_name;
  ExprMatrix frame;  // row alpha = coefficients of the alpha-th invariant one-form
  ExprMatrix dual;   // exact inverse of frame
};

// Left-invariant vielbein in the product-of-exponentials parameterization
// g = e^{x_1 X_1} ... e^{x_m X_m}: row alpha of the frame is the alpha-th row
// of the ordered product of e^{x_j adj_j} over j > alpha.
VielbeinMatrix compute_vielbein(const LieAlgebra& alg);

// Differentiates the dual frame fields and contracts back through the frame;
// returns the structure constants {(i,j,k) -> C_ij^k, i<j, nonzero}. Throws
// VielbeinError if any recovered entry retains coordinate dependence.
std::map<std::tuple<int, int, int>, Expression> recover_structure_constants(const VielbeinMatrix& v);

}  // namespace liepoisson
