#pragma once

#include <map>
#include <string>
#include <tuple>
#include <vector>

#include "liepoisson/matrix.hpp"

namespace liepoisson {

// One catalogued compatible pair: a constant bivector P and an affine
// bivector P' in frame indices, as printed in the source tables, together
// with the printed side condition, closed-form integrals (group coordinates)
// and any transcription notes.
struct TablePair {
  std::string algebra;
  int dim = 0;
  std::vector<std::tuple<int, int, std::string>> p;       // (i, j, entry), i < j
  std::vector<std::tuple<int, int, std::string>> pprime;  // (i, j, entry), i < j
  std::string side_condition;
  std::vector<std::string> integrals;  // printed H_1, H_2, ... (may be empty)
  std::vector<std::string> notes;
  // Parameter bindings (name -> rational text) under which the identities are
  // verified; one verification run per map. Empty means a single unbound run.
  std::vector<std::map<std::string, std::string>> verify_bindings;
};

// All catalogued pairs, in table order (4-dimensional rows first).
const std::vector<TablePair>& table_pairs();

// Normalized-name lookup (brace-insensitive, like the catalog); null when the
// algebra has no catalogued pair.
const TablePair* find_table_pair(const std::string& algebra);

// Antisymmetric matrix from (i, j, text) entries.
ExprMatrix parse_entry_matrix(const std::vector<std::tuple<int, int, std::string>>& entries,
                              int dim);

// Printed reference frame matrix for one algebra. `rows` holds the printed
// entries verbatim; cells where the construction provably yields a different
// value are listed in `discrepancies` together with the expected computed
// entry.
struct GoldenFrame {
  struct Discrepancy {
    int row = 0;
    int col = 0;
    std::string printed;
    std::string computed;
  };

  std::string algebra;
  int dim = 0;
  std::vector<std::vector<std::string>> rows;
  std::vector<Discrepancy> discrepancies;
};

const std::vector<GoldenFrame>& golden_frames();
const GoldenFrame* find_golden_frame(const std::string& algebra);

}  // namespace liepoisson
