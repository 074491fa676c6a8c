// Acceptance suite: one pass/fail line per criterion, exit code = number of
// failed criteria. All tolerances, budgets, and case counts are pinned below.
#include <chrono>
#include <cmath>
#include <cstdint>
#include <functional>
#include <iostream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include "liepoisson/biham.hpp"
#include "liepoisson/lie_catalog.hpp"
#include "liepoisson/parser.hpp"
#include "liepoisson/poisson.hpp"
#include "liepoisson/rng.hpp"
#include "liepoisson/solver.hpp"
#include "liepoisson/tables.hpp"
#include "liepoisson/vielbein.hpp"

using namespace liepoisson;

namespace {

// ---- pinned tolerances, budgets, counts ------------------------------------
constexpr double kNumericTolerance = 1e-9;      // symbolic-vs-double agreement
constexpr double kFiniteDiffRelTol = 1e-6;      // derivative vs central difference
constexpr double kFiniteDiffStep = 1e-5;        // central difference step
constexpr double kCatalogBudgetSeconds = 5.0;   // criterion 1
constexpr double kFrameBudgetSeconds = 10.0;    // criterion 2
constexpr double kTableBudgetSeconds = 60.0;    // criterion 4
constexpr double kSuiteBudgetSeconds = 30.0;    // criterion 9, per suite
constexpr int kPropertyCases = 200;             // criterion 9, per suite
constexpr int kCatalogSize = 44;
constexpr int kGoldenFrameCount = 25;
constexpr int kTablePairCount = 21;
constexpr int kMinTablePasses = 19;
constexpr std::uint64_t kSeed = 20260825;

// Reference-frame cells where the computed entry provably differs from the
// printed one (transcription defects in the source tables).
const std::set<std::tuple<std::string, int, int>> kExpectedFrameMismatches = {
    {"A_{6,6}", 1, 6},
    {"A_{6,19}", 2, 6},
};

// Catalogued pairs whose printed closed-form integrals deviate from the
// computed Lenard chain (transcription defects in the source formulas):
//  - A_{4,5}^{a,-a}: printed H_2 carries a44^2*x2^2/p14^2 where the chain
//    requires the x4 analogue of the H_1 term a44*x4/p14.
//  - A_{6,9}: printed H_2/H_3 use 1/4- and 1/6-prefactors with a 4*d62*x2
//    term and repeat one eigenvalue function twice.
//  - A_{6,24}: printed formulas divide the third eigenvalue function by a
//    constant p45 that does not occur in the row's P (its slots are p13,
//    p25, p46); the residual vanishes exactly when p45 = p46.
// Bi-involution must still hold for every printed formula; these rows are
// reported as printed-vs-computed discrepancies rather than hard failures.
const std::set<std::string> kExpectedPrintedDiscrepancies = {
    "A_{4,5}^{a,-a}",
    "A_{6,9}",
    "A_{6,24}",
};

// Printed-integral rows whose functional rank provably differs from the
// number of formulas listed. A_{6,9} prints three integrals but the second
// and third each repeat one eigenvalue function, capping the rank at 2.
const std::map<std::string, int> kExpectedPrintedRankAnomalies = {
    {"A_{6,9}", 2},
};

struct CriterionResult {
  bool pass = true;
  std::vector<std::string> details;

  void fail(const std::string& why) {
    pass = false;
    details.push_back(why);
  }
  void note(const std::string& what) { details.push_back(what); }
};

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

// Shared per-pair analysis reused by criteria 6, 7, and 8.
struct PairAnalysis {
  const TablePair* pair = nullptr;
  std::map<std::string, Rational> bindings;
  BivectorField p;
  BivectorField pp;
  RecursionOperator n;
  std::vector<RationalExpression> h;
};

std::vector<PairAnalysis>& pair_analyses() {
  static std::vector<PairAnalysis> rows = [] {
    std::vector<PairAnalysis> out;
    for (const TablePair& pair : table_pairs()) {
      PairAnalysis row;
      row.pair = &pair;
      if (!pair.verify_bindings.empty())
        for (const auto& [key, text] : pair.verify_bindings.front())
          row.bindings[key] = rational_from_string(text);
      LieAlgebra alg = Catalog::builtin().lookup(pair.algebra, row.bindings);
      VielbeinMatrix v = compute_vielbein(alg);
      row.p = bivector_from_frame(parse_entry_matrix(pair.p, pair.dim), v);
      row.pp = bivector_from_frame(parse_entry_matrix(pair.pprime, pair.dim), v);
      row.n = recursion_operator(row.p, row.pp);
      row.h = trace_integrals(row.p, row.pp, pair.dim / 2);
      out.push_back(std::move(row));
    }
    return out;
  }();
  return rows;
}

// ---- criterion 1: catalog closure -------------------------------------------
CriterionResult catalog_closure() {
  CriterionResult r;
  auto start = std::chrono::steady_clock::now();
  const Catalog& catalog = Catalog::builtin();
  if (static_cast<int>(catalog.names().size()) != kCatalogSize)
    r.fail("catalog holds " + std::to_string(catalog.names().size()) + " algebras, expected " +
           std::to_string(kCatalogSize));
  int dim4 = 0, dim6 = 0;
  for (const std::string& name : catalog.names()) {
    LieAlgebra alg = catalog.lookup(name);
    (alg.dim == 4 ? dim4 : dim6) += 1;
    std::vector<ValidationIssue> issues = validate(alg);
    for (const auto& issue : issues)
      r.fail(name + ": " + issue.kind + " (" + std::to_string(issue.i) + "," +
             std::to_string(issue.j) + "," + std::to_string(issue.k) + "," +
             std::to_string(issue.s) + ") residual " + to_string(issue.residual));
  }
  if (dim4 != 20 || dim6 != 24)
    r.fail("dimension split " + std::to_string(dim4) + "/" + std::to_string(dim6) +
           ", expected 20/24");
  double elapsed = seconds_since(start);
  if (elapsed > kCatalogBudgetSeconds)
    r.fail("exceeded " + std::to_string(kCatalogBudgetSeconds) + "s budget");
  return r;
}

// ---- criterion 2: reference frames ------------------------------------------
CriterionResult reference_frames() {
  CriterionResult r;
  auto start = std::chrono::steady_clock::now();
  const auto& goldens = golden_frames();
  if (static_cast<int>(goldens.size()) != kGoldenFrameCount)
    r.fail(std::to_string(goldens.size()) + " reference frames, expected " +
           std::to_string(kGoldenFrameCount));
  std::set<std::tuple<std::string, int, int>> mismatches;
  for (const GoldenFrame& g : goldens) {
    LieAlgebra alg = Catalog::builtin().lookup(g.algebra);
    VielbeinMatrix v = compute_vielbein(alg);
    for (int row = 1; row <= g.dim; ++row)
      for (int col = 1; col <= g.dim; ++col) {
        const std::string& text =
            g.rows[static_cast<std::size_t>(row - 1)][static_cast<std::size_t>(col - 1)];
        if (!sub(parse_expression(text), v.frame.at1(row, col)).is_zero())
          mismatches.insert({g.algebra, row, col});
      }
    // Every catalogued discrepancy must list the entry the construction
    // actually produces.
    for (const auto& d : g.discrepancies)
      if (!sub(parse_expression(d.computed), v.frame.at1(d.row, d.col)).is_zero())
        r.fail(g.algebra + ": catalogued computed cell (" + std::to_string(d.row) + "," +
               std::to_string(d.col) + ") does not match the construction");
  }
  if (mismatches != kExpectedFrameMismatches) {
    for (const auto& [name, row, col] : mismatches)
      if (!kExpectedFrameMismatches.count({name, row, col}))
        r.fail("unexpected mismatch " + name + " (" + std::to_string(row) + "," +
               std::to_string(col) + ")");
    for (const auto& [name, row, col] : kExpectedFrameMismatches)
      if (!mismatches.count({name, row, col}))
        r.fail("expected mismatch " + name + " (" + std::to_string(row) + "," +
               std::to_string(col) + ") did not occur");
  }
  // The known bad cell of the second mismatching frame is a stray symbol in
  // the printed source; it must be catalogued with its printed text.
  const GoldenFrame* g19 = find_golden_frame("A_{6,19}");
  bool flagged = false;
  if (g19)
    for (const auto& d : g19->discrepancies)
      if (d.printed.find("x_30") != std::string::npos) flagged = true;
  if (!flagged) r.fail("stray-symbol discrepancy is not catalogued");
  double elapsed = seconds_since(start);
  if (elapsed > kFrameBudgetSeconds)
    r.fail("exceeded " + std::to_string(kFrameBudgetSeconds) + "s budget");
  return r;
}

// ---- criterion 3: structure-constant recovery --------------------------------
bool recovery_round_trip(const LieAlgebra& alg, std::string& error) {
  VielbeinMatrix v = compute_vielbein(alg);
  auto recovered = recover_structure_constants(v);
  for (int i = 1; i <= alg.dim; ++i)
    for (int j = i + 1; j <= alg.dim; ++j)
      for (int k = 1; k <= alg.dim; ++k) {
        Expression got;
        auto it = recovered.find({i, j, k});
        if (it != recovered.end()) got = it->second;
        if (!sub(got, alg.bracket(i, j, k)).is_zero()) {
          error = "C_{" + std::to_string(i) + std::to_string(j) + "}^" + std::to_string(k) +
                  " recovered as " + to_string(got);
          return false;
        }
      }
  return true;
}

CriterionResult structure_recovery() {
  CriterionResult r;
  for (const std::string& name : Catalog::builtin().names()) {
    LieAlgebra unbound = Catalog::builtin().lookup(name);
    std::string error;
    try {
      if (!recovery_round_trip(unbound, error)) r.fail(name + ": " + error);
      continue;
    } catch (const UnsupportedSpectrumError&) {
      // Parameters must be bound for this spectrum; fall through.
    }
    bool done = false;
    for (int value : {2, 3}) {
      std::map<std::string, Rational> bindings;
      for (const auto& p : unbound.params) bindings[p.symbol] = Rational(value);
      try {
        LieAlgebra bound = Catalog::builtin().lookup(name, bindings);
        if (!recovery_round_trip(bound, error)) r.fail(name + " at " + std::to_string(value) +
                                                       ": " + error);
        done = true;
        break;
      } catch (const CatalogError&) {
        // Binding violates a parameter constraint; try the next value.
      } catch (const UnsupportedSpectrumError&) {
        // Spectrum still unsupported at this binding; try the next value.
      }
    }
    if (!done) r.fail(name + ": no supported parameter binding found");
  }
  return r;
}

// ---- criterion 4: catalogued pair verification -------------------------------
CriterionResult table_verification() {
  CriterionResult r;
  auto start = std::chrono::steady_clock::now();
  const auto& pairs = table_pairs();
  if (static_cast<int>(pairs.size()) != kTablePairCount)
    r.fail(std::to_string(pairs.size()) + " catalogued pairs, expected " +
           std::to_string(kTablePairCount));
  int passed = 0;
  for (const TablePair& pair : pairs) {
    TableVerification tv = verify_table(pair.algebra);
    if (!tv.found) {
      r.fail(pair.algebra + ": lookup failed");
      continue;
    }
    if (tv.all_closed()) {
      ++passed;
    } else {
      r.note(pair.algebra + ": not closed; minimal residual " + tv.minimal_residual);
      if (tv.minimal_residual.empty())
        r.fail(pair.algebra + ": failing row carries no residual witness");
    }
  }
  if (passed < kMinTablePasses)
    r.fail("only " + std::to_string(passed) + "/" + std::to_string(kTablePairCount) +
           " pairs verify; expected at least " + std::to_string(kMinTablePasses));
  double elapsed = seconds_since(start);
  if (elapsed > kTableBudgetSeconds)
    r.fail("exceeded " + std::to_string(kTableBudgetSeconds) + "s budget");
  return r;
}

// ---- criterion 5: solver recovery ---------------------------------------------
CriterionResult solver_recovery() {
  CriterionResult r;
  for (const char* name : {"A_{4,1}", "A_{4,3}", "A_{6,1}", "A_{6,24}"}) {
    const TablePair* pair = find_table_pair(name);
    if (!pair) {
      r.fail(std::string(name) + ": no catalogued pair");
      continue;
    }
    std::map<std::string, Rational> bindings;
    if (!pair->verify_bindings.empty())
      for (const auto& [key, text] : pair->verify_bindings.front())
        bindings[key] = rational_from_string(text);
    LieAlgebra alg = Catalog::builtin().lookup(pair->algebra, bindings);
    AnsatzPattern pattern;
    pattern.dim = pair->dim;
    for (const auto& [i, j, text] : pair->p) {
      (void)text;
      pattern.p_slots.emplace_back(i, j);
    }
    for (const auto& [i, j, text] : pair->pprime) {
      (void)text;
      pattern.pprime_slots.emplace_back(i, j);
    }
    LinearSystem sys = build_linear_stage(alg, prime_bound_matrix(*pair), pattern);
    SolutionFamily family = solve_linear_stage(sys);

    // The catalogued partner references the P constants; bind them to the
    // same slot primes as the linear stage before reading it as a point of
    // the family.
    std::map<Symbol, Expression> primes;
    for (const auto& [i, j, text] : pair->p) {
      (void)text;
      primes[intern_symbol(constant_unknown_name(i, j))] =
          Expression::constant(slot_prime(i, j));
    }
    ExprMatrix partner = parse_entry_matrix(pair->pprime, pair->dim);
    for (int row = 1; row <= pair->dim; ++row)
      for (int col = 1; col <= pair->dim; ++col)
        partner.at1(row, col) = substitute_symbols(partner.at1(row, col), primes);
    auto assignment = assignment_from_matrix(partner, pattern);
    if (!family_contains(sys, assignment)) {
      r.fail(std::string(name) + ": catalogued partner is outside the solved family");
      continue;
    }
    for (const Expression& residual : quadratic_residuals(alg, pattern, family))
      if (!substitute_symbols(residual, assignment).is_zero())
        r.fail(std::string(name) + ": closure residual survives on the catalogued partner");
  }
  return r;
}

// ---- criterion 6: recursion-operator certificates -----------------------------
CriterionResult recursion_certificates() {
  CriterionResult r;
  for (const PairAnalysis& row : pair_analyses()) {
    TorsionReport torsion = torsion_vanishes(row.n);
    if (!torsion.vanishes)
      r.fail(row.pair->algebra + ": torsion component (" + std::to_string(torsion.lam) + "," +
             std::to_string(torsion.mu) + "," + std::to_string(torsion.nu) + ") survives");
    LenardReport lenard = lenard_check(row.p, row.pp, row.h);
    if (!lenard.all_hold) r.fail(row.pair->algebra + ": " + lenard.witness);
    InvolutionReport involution = involution_check(row.p, row.pp, row.h);
    if (!involution.all_vanish) r.fail(row.pair->algebra + ": " + involution.witness);
  }
  return r;
}

// ---- criterion 7: printed integrals --------------------------------------------
CriterionResult printed_integrals() {
  CriterionResult r;
  int rows_with_integrals = 0;
  std::set<std::string> lenard_failures;
  for (const PairAnalysis& row : pair_analyses()) {
    if (row.pair->integrals.empty()) continue;
    ++rows_with_integrals;
    std::map<Symbol, Expression> substitution;
    for (const auto& [key, value] : row.bindings)
      substitution[intern_symbol(key)] = Expression::constant(value);
    std::vector<RationalExpression> printed;
    bool parsed = true;
    for (const std::string& text : row.pair->integrals) {
      try {
        printed.push_back(
            RationalExpression(substitute_symbols(parse_expression(text), substitution)));
      } catch (const ParseError& e) {
        r.fail(row.pair->algebra + ": printed integral does not parse: " + e.what());
        parsed = false;
        break;
      }
    }
    if (!parsed) continue;

    // Pairwise involution of printed integrals, and of printed against the
    // computed trace integrals, under both structures.
    const BivectorField* structures[2] = {&row.p, &row.pp};
    const char* labels[2] = {"first", "second"};
    for (int s = 0; s < 2; ++s) {
      for (std::size_t i = 0; i < printed.size(); ++i) {
        for (std::size_t j = i + 1; j < printed.size(); ++j)
          if (!is_zero(poisson_bracket(*structures[s], printed[i], printed[j])))
            r.fail(row.pair->algebra + ": printed H_" + std::to_string(i + 1) + ", H_" +
                   std::to_string(j + 1) + " not in involution under the " + labels[s] +
                   " structure");
        for (std::size_t j = 0; j < row.h.size(); ++j)
          if (!is_zero(poisson_bracket(*structures[s], printed[i], row.h[j])))
            r.fail(row.pair->algebra + ": printed H_" + std::to_string(i + 1) + " and trace H_" +
                   std::to_string(j + 1) + " not in involution under the " + labels[s] +
                   " structure");
      }
    }

    LenardReport chain = lenard_check(row.p, row.pp, printed);
    if (!chain.all_hold) {
      lenard_failures.insert(row.pair->algebra);
      r.note(row.pair->algebra + ": printed-vs-computed discrepancy (reported): " +
             chain.witness);
    }
  }
  if (rows_with_integrals == 0) r.fail("no catalogued pair prints integrals");
  if (lenard_failures != kExpectedPrintedDiscrepancies) {
    for (const std::string& name : lenard_failures)
      if (!kExpectedPrintedDiscrepancies.count(name))
        r.fail(name + ": printed integrals unexpectedly deviate from the computed chain");
    for (const std::string& name : kExpectedPrintedDiscrepancies)
      if (!lenard_failures.count(name))
        r.fail(name + ": expected printed-integral discrepancy did not reproduce");
  }
  return r;
}

// ---- criterion 8: independence of the printed integrals ---------------------------
CriterionResult independence() {
  CriterionResult r;
  int ranked_rows = 0;
  for (const PairAnalysis& row : pair_analyses()) {
    if (row.pair->integrals.empty()) {
      r.note(row.pair->algebra + ": lists no integrals, nothing to rank");
      continue;
    }
    std::map<Symbol, Expression> substitution;
    for (const auto& [key, value] : row.bindings)
      substitution[intern_symbol(key)] = Expression::constant(value);
    std::vector<RationalExpression> printed;
    try {
      for (const std::string& text : row.pair->integrals)
        printed.push_back(
            RationalExpression(substitute_symbols(parse_expression(text), substitution)));
    } catch (const ParseError& e) {
      r.fail(row.pair->algebra + ": printed integral does not parse: " + e.what());
      continue;
    }
    ++ranked_rows;
    int expected = static_cast<int>(printed.size());
    auto anomaly = kExpectedPrintedRankAnomalies.find(row.pair->algebra);
    if (anomaly != kExpectedPrintedRankAnomalies.end()) expected = anomaly->second;

    std::set<Symbol> symbols;
    for (const auto& f : printed) {
      for (Symbol s : free_symbols(f.num)) symbols.insert(s);
      for (Symbol s : free_symbols(f.den)) symbols.insert(s);
    }
    SeededRng rng(kSeed);
    int best = -1;
    std::string failure = "no attempt made";
    for (int attempt = 0; attempt < 25 && best < expected; ++attempt) {
      std::map<Symbol, Rational> bound;
      for (Symbol s : symbols) bound[s] = rng.next_nonzero_rational();
      try {
        auto points =
            sample_points(row.pair->dim, 10, kSeed + 7919 * attempt + 1, printed, bound);
        best = std::max(best, independence_rank(printed, row.pair->dim, points, bound));
      } catch (const DegeneratePointsError& e) {
        failure = e.what();
      }
    }
    if (best < 0)
      r.fail(row.pair->algebra + ": rank not evaluable: " + failure);
    else if (best != expected)
      r.fail(row.pair->algebra + ": rank " + std::to_string(best) + ", expected " +
             std::to_string(expected));
    else if (anomaly != kExpectedPrintedRankAnomalies.end())
      r.note(row.pair->algebra + ": printed formulas reach rank " + std::to_string(best) +
             " of " + std::to_string(printed.size()) +
             " listed (recorded printed-formula anomaly)");
  }
  // Two catalogued rows (A_{4,9}^0 and A_{6,32}) list no closed-form integrals.
  if (ranked_rows != kTablePairCount - 2)
    r.fail("expected " + std::to_string(kTablePairCount - 2) +
           " rows with printed integrals, saw " + std::to_string(ranked_rows));
  return r;
}

// ---- criterion 9: randomized property suites --------------------------------------
Expression random_expression(SeededRng& rng, bool with_transcendentals) {
  Expression out;
  int terms = static_cast<int>(rng.next_int(1, 3));
  for (int t = 0; t < terms; ++t) {
    TermKey key;
    int factors = static_cast<int>(rng.next_int(0, 3));
    for (int f = 0; f < factors; ++f) {
      int kind = static_cast<int>(rng.next_int(1, with_transcendentals ? 5 : 3));
      switch (kind) {
        case 1:
        case 2:
        case 3: {
          key.mono[static_cast<Coordinate>(rng.next_int(1, 3))] += 1;
          break;
        }
        case 4: {
          Coordinate i = static_cast<Coordinate>(rng.next_int(1, 3));
          Rational freq(rng.next_int(1, 3) * (rng.next_int(0, 1) ? 1 : -1));
          key.exps[i] = key.exps.count(i) ? key.exps[i] + freq : freq;
          if (key.exps[i] == 0) key.exps.erase(i);
          break;
        }
        default: {
          Coordinate i = static_cast<Coordinate>(rng.next_int(1, 3));
          key.trig[i] = TrigFactor{rng.next_int(0, 1) ? TrigKind::cos : TrigKind::sin,
                                   Rational(rng.next_int(1, 3))};
          break;
        }
      }
    }
    if (rng.next_int(0, 3) == 0) key.params[intern_symbol(rng.next_int(0, 1) ? "ra" : "rb")] += 1;
    out = add(out, Expression::term(rng.next_rational(), std::move(key)));
  }
  return out;
}

std::map<Coordinate, Rational> random_point(SeededRng& rng, int dim) {
  std::map<Coordinate, Rational> point;
  for (int i = 1; i <= dim; ++i) point[i] = Rational(rng.next_int(-9, 9), 9);
  return point;
}

std::map<Symbol, Rational> random_params(SeededRng& rng) {
  return {{intern_symbol("ra"), rng.next_nonzero_rational()},
          {intern_symbol("rb"), rng.next_nonzero_rational()}};
}

CriterionResult suite_ring_laws(CriterionResult r) {
  SeededRng rng(kSeed + 1);
  for (int c = 0; c < kPropertyCases; ++c) {
    Expression a = random_expression(rng, true);
    Expression b = random_expression(rng, true);
    Expression d = random_expression(rng, true);
    if (add(add(a, b), d) != add(a, add(b, d))) {
      r.fail("case " + std::to_string(c) + ": associativity of addition");
      return r;
    }
    if (mul(a, add(b, d)) != add(mul(a, b), mul(a, d))) {
      r.fail("case " + std::to_string(c) + ": distributivity");
      return r;
    }
    if (mul(a, b) != mul(b, a)) {
      r.fail("case " + std::to_string(c) + ": commutativity of multiplication");
      return r;
    }
    if (!sub(add(a, b), add(b, a)).is_zero()) {
      r.fail("case " + std::to_string(c) + ": commutativity of addition");
      return r;
    }
    auto point = random_point(rng, 3);
    auto params = random_params(rng);
    double lhs = evaluate(mul(a, b), point, params);
    double rhs = evaluate(a, point, params) * evaluate(b, point, params);
    double scale = 1.0 + std::abs(lhs) + std::abs(rhs);
    if (std::abs(lhs - rhs) > kNumericTolerance * scale) {
      r.fail("case " + std::to_string(c) + ": numeric product mismatch " +
             std::to_string(std::abs(lhs - rhs)));
      return r;
    }
  }
  return r;
}

CriterionResult suite_leibniz(CriterionResult r) {
  SeededRng rng(kSeed + 2);
  for (int c = 0; c < kPropertyCases; ++c) {
    Expression a = random_expression(rng, true);
    Expression b = random_expression(rng, true);
    Coordinate i = static_cast<Coordinate>(rng.next_int(1, 3));
    Expression lhs = partial(mul(a, b), i);
    Expression rhs = add(mul(partial(a, i), b), mul(a, partial(b, i)));
    if (lhs != rhs) {
      r.fail("case " + std::to_string(c) + ": Leibniz rule fails for d/dx" + std::to_string(i));
      return r;
    }
  }
  return r;
}

CriterionResult suite_finite_difference(CriterionResult r) {
  SeededRng rng(kSeed + 3);
  for (int c = 0; c < kPropertyCases; ++c) {
    Expression a = random_expression(rng, true);
    Coordinate i = static_cast<Coordinate>(rng.next_int(1, 3));
    auto point = random_point(rng, 3);
    auto params = random_params(rng);
    double analytic = evaluate(partial(a, i), point, params);
    std::map<Coordinate, Rational> up = point, down = point;
    Rational step(1, 100000);  // kFiniteDiffStep exactly
    up[i] = up[i] + step;
    down[i] = down[i] - step;
    double fd = (evaluate(a, up, params) - evaluate(a, down, params)) / (2 * kFiniteDiffStep);
    double scale = std::max({1.0, std::abs(analytic), std::abs(fd)});
    if (std::abs(analytic - fd) > kFiniteDiffRelTol * scale) {
      r.fail("case " + std::to_string(c) + ": derivative " + std::to_string(analytic) +
             " vs central difference " + std::to_string(fd));
      return r;
    }
  }
  return r;
}

ExprMatrix random_affine_bivector(SeededRng& rng, int dim) {
  ExprMatrix m(dim, dim);
  for (int i = 1; i < dim; ++i)
    for (int j = i + 1; j <= dim; ++j) {
      Expression e = Expression::constant(rng.next_rational());
      for (int k = 1; k <= dim; ++k)
        e = add(e, mul(Expression::coordinate(k), rng.next_rational()));
      m.at1(i, j) = e;
      m.at1(j, i) = neg(e);
    }
  return m;
}

CriterionResult suite_schouten_jacobi(CriterionResult r) {
  SeededRng rng(kSeed + 4);
  for (int c = 0; c < kPropertyCases; ++c) {
    int dim = rng.next_int(0, 1) ? 3 : 4;
    BivectorField p = bivector_from_components(random_affine_bivector(rng, dim));
    TrivectorField s = schouten(p, p);
    // The jacobiator of the coordinate functions is the negated bracket
    // component; closure of P is exactly the Jacobi identity.
    for (int i = 1; i <= dim; ++i)
      for (int j = i + 1; j <= dim; ++j)
        for (int k = j + 1; k <= dim; ++k) {
          Expression xi = Expression::coordinate(i);
          Expression xj = Expression::coordinate(j);
          Expression xk = Expression::coordinate(k);
          Expression jac = add(add(poisson_bracket(p, xi, poisson_bracket(p, xj, xk)),
                                   poisson_bracket(p, xj, poisson_bracket(p, xk, xi))),
                               poisson_bracket(p, xk, poisson_bracket(p, xi, xj)));
          if (!add(jac, s.at(i, j, k)).is_zero()) {
            r.fail("case " + std::to_string(c) + ": jacobiator (" + std::to_string(i) + "," +
                   std::to_string(j) + "," + std::to_string(k) +
                   ") differs from the bracket component");
            return r;
          }
        }
  }
  return r;
}

CriterionResult suite_bracket_bilinearity(CriterionResult r) {
  SeededRng rng(kSeed + 5);
  for (int c = 0; c < kPropertyCases; ++c) {
    int dim = 3;
    ExprMatrix pm = random_affine_bivector(rng, dim);
    ExprMatrix qm = random_affine_bivector(rng, dim);
    ExprMatrix rm = random_affine_bivector(rng, dim);
    Rational ca = rng.next_rational();
    Rational cb = rng.next_rational();
    ExprMatrix combo(dim, dim);
    for (int i = 1; i <= dim; ++i)
      for (int j = 1; j <= dim; ++j)
        combo.at1(i, j) = add(mul(pm.at1(i, j), ca), mul(qm.at1(i, j), cb));
    BivectorField p = bivector_from_components(pm);
    BivectorField q = bivector_from_components(qm);
    BivectorField rr = bivector_from_components(rm);
    TrivectorField lhs = schouten(bivector_from_components(combo), rr);
    TrivectorField s1 = schouten(p, rr);
    TrivectorField s2 = schouten(q, rr);
    for (int i = 1; i <= dim; ++i)
      for (int j = i + 1; j <= dim; ++j)
        for (int k = j + 1; k <= dim; ++k)
          if (!sub(lhs.at(i, j, k), add(mul(s1.at(i, j, k), ca), mul(s2.at(i, j, k), cb)))
                   .is_zero()) {
            r.fail("case " + std::to_string(c) + ": mixed bracket is not bilinear");
            return r;
          }
  }
  return r;
}

CriterionResult property_suites() {
  CriterionResult r;
  struct Suite {
    const char* name;
    std::function<CriterionResult(CriterionResult)> run;
  };
  const Suite suites[] = {
      {"ring laws", suite_ring_laws},
      {"Leibniz rule", suite_leibniz},
      {"finite differences", suite_finite_difference},
      {"bracket closure vs Jacobi", suite_schouten_jacobi},
      {"mixed-bracket bilinearity", suite_bracket_bilinearity},
  };
  for (const Suite& suite : suites) {
    auto start = std::chrono::steady_clock::now();
    r = suite.run(std::move(r));
    double elapsed = seconds_since(start);
    if (elapsed > kSuiteBudgetSeconds)
      r.fail(std::string(suite.name) + " exceeded " + std::to_string(kSuiteBudgetSeconds) +
             "s budget");
  }
  return r;
}

}  // namespace

int main() {
  struct Entry {
    const char* name;
    std::function<CriterionResult()> fn;
  };
  const Entry entries[] = {
      {"catalog closure (44 algebras, symbolic Jacobi)", catalog_closure},
      {"reference frames (25, catalogued discrepancies only)", reference_frames},
      {"structure-constant recovery round trip", structure_recovery},
      {"catalogued pair verification (21 rows)", table_verification},
      {"solver recovers catalogued partners", solver_recovery},
      {"torsion, Lenard chain, involution (21 rows)", recursion_certificates},
      {"printed integrals: bi-involution, discrepancies reported", printed_integrals},
      {"printed-integral independence rank (19 rows)", independence},
      {"randomized property suites (5 x 200 cases)", property_suites},
  };
  int failures = 0;
  int index = 0;
  for (const Entry& entry : entries) {
    ++index;
    auto start = std::chrono::steady_clock::now();
    CriterionResult result;
    try {
      result = entry.fn();
    } catch (const std::exception& e) {
      result.fail(std::string("exception: ") + e.what());
    }
    double elapsed = seconds_since(start);
    std::ostringstream line;
    line << "[" << index << "/9] " << entry.name << ": " << (result.pass ? "PASS" : "FAIL")
         << " (" << std::fixed;
    line.precision(2);
    line << elapsed << "s)";
    std::cout << line.str() << "\n";
    for (const std::string& detail : result.details) std::cout << "      - " << detail << "\n";
    if (!result.pass) ++failures;
  }
  std::cout << (failures == 0 ? "all acceptance criteria pass"
                              : std::to_string(failures) + " acceptance criteria fail")
            << "\n";
  return failures;
}
