#pragma once

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>

#include "json.hpp"
#include "liepoisson/lie_catalog.hpp"
#include "liepoisson/solver.hpp"

namespace liepoisson {

class ReportError : public std::runtime_error {
 public:
  explicit ReportError(const std::string& what) : std::runtime_error(what) {}
};

// Options for the full pair analysis.
struct AnalyzeOptions {
  int kmax = 0;                   // number of trace integrals; 0 means dim / 2
  std::uint64_t seed = 20260825;  // seeding for generic-point evaluation
  int point_count = 10;           // evaluation points for the rank test
  std::map<std::string, Rational> param_overrides;  // algebra parameter bindings
};

// Catalog listing: every algebra with dimension, parameters, and whether a
// catalogued bivector pair / reference frame exists for it.
nlohmann::json list_report();

// Vielbein of one algebra: frame, dual, structure-constant recovery, and the
// comparison against the printed reference frame when one is catalogued.
nlohmann::json vielbein_report(const LieAlgebra& alg);
nlohmann::json vielbein_report(const std::string& name,
                               const std::map<std::string, Rational>& params);

// Compatible-pair solver run for a constant P and an affine P' ansatz.
nlohmann::json solve_report(const LieAlgebra& alg, const ExprMatrix& p_constant,
                            const AnsatzPattern& pattern);

// Verification of the catalogued pair of one algebra.
nlohmann::json table_report(const std::string& name);

// Full bi-Hamiltonian analysis of the catalogued pair of one algebra:
// vielbein, bivectors, compatibility, recursion operator, trace integrals,
// torsion, Lenard chain, involution, independence rank, and validation of the
// published integrals when the table prints them.
nlohmann::json analyze_report(const std::string& name, const AnalyzeOptions& opts);

// Analysis of every catalogued pair, sorted by algebra name.
nlohmann::json full_report(const AnalyzeOptions& opts);

// Human-readable rendering of any document produced above.
std::string render_text(const nlohmann::json& doc);

// Canonical serialization: two-space indent plus trailing newline.
std::string dump_json(const nlohmann::json& doc);

}  // namespace liepoisson
