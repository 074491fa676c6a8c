#pragma once

#include <map>
#include <stdexcept>
#include <tuple>

#include "liepoisson/matrix.hpp"
#include "liepoisson/vielbein.hpp"

namespace liepoisson {

class PoissonError : public std::runtime_error {
 public:
  explicit PoissonError(const std::string& what) : std::runtime_error(what) {}
};

// Antisymmetric bivector field P^{mu nu}(x). When built by pushing a
// frame-index matrix through a vielbein the originating data is kept; several
// downstream computations have much cheaper paths in that representation.
struct BivectorField {
  ExprMatrix components;  // group coordinates, full antisymmetric matrix

  bool has_frame = false;
  ExprMatrix frame;             // vielbein rows e_i^mu
  ExprMatrix frame_dual;        // exact inverse of frame
  ExprMatrix frame_components;  // frame-index matrix P^{ij}

  int dim() const { return components.rows(); }
};

// Validates antisymmetry and wraps a component matrix.
BivectorField bivector_from_components(const ExprMatrix& components);

// P^{mu nu}(x) = e_i^mu e_j^nu P^{ij}; records the frame data.
BivectorField bivector_from_frame(const ExprMatrix& frame_components, const VielbeinMatrix& v);

// Totally antisymmetric trivector, stored on strictly increasing triples.
class TrivectorField {
 public:
  explicit TrivectorField(int dim = 0) : dim_(dim) {}

  int dim() const { return dim_; }

  // Accessors for arbitrary index order (antisymmetry applied); the mutable
  // setter requires lam < mu < nu.
  void set(int lam, int mu, int nu, Expression value);
  Expression at(int lam, int mu, int nu) const;

  const std::map<std::tuple<int, int, int>, Expression>& entries() const { return entries_; }

  bool is_zero() const;
  // Number of terms in the smallest nonzero component, with its indices;
  // used to report the most readable witness of a failed identity.
  std::tuple<int, int, int> minimal_nonzero() const;

 private:
  int dim_ = 0;
  std::map<std::tuple<int, int, int>, Expression> entries_;  // lam < mu < nu, nonzero
};

// Schouten bracket of bivector fields on increasing triples. Equal arguments
// use the three-term cyclic sum; distinct arguments the six-term mixed sum.
TrivectorField schouten(const BivectorField& p, const BivectorField& q);

// {f, g} = P^{mu nu} d_mu f d_nu g.
Expression poisson_bracket(const BivectorField& p, const Expression& f, const Expression& g);

struct CompatibilityReport {
  TrivectorField pp;     // [P, P]
  TrivectorField qq;     // [P', P']
  TrivectorField mixed;  // [P, P']
  bool pp_ok = false;
  bool qq_ok = false;
  bool mixed_ok = false;

  bool all_ok() const { return pp_ok && qq_ok && mixed_ok; }
};

CompatibilityReport check_compatibility(const BivectorField& p, const BivectorField& q);

}  // namespace liepoisson
