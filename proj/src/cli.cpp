#include "liepoisson/cli.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"
#include "liepoisson/biham.hpp"
#include "liepoisson/parser.hpp"
#include "liepoisson/report.hpp"
#include "liepoisson/tables.hpp"
#include "liepoisson/vielbein.hpp"

namespace liepoisson {

namespace {

using nlohmann::json;

std::map<std::string, Rational> parse_param_bindings(
    const std::map<std::string, std::string>& raw) {
  std::map<std::string, Rational> out;
  for (const auto& [key, text] : raw) {
    try {
      out[key] = rational_from_string(text);
    } catch (const std::exception&) {
      throw ReportError("parameter '" + key + "' needs a rational value, got '" + text + "'");
    }
  }
  return out;
}

// Ansatz description file: {"p": [[i, j, value], ...], "pprime": [[i, j], ...]}
// with 1-based strictly-upper slots. The P values must parse as expressions;
// the linear stage requires them to be rational constants.
AnsatzPattern pattern_from_file(const std::string& path, int dim, ExprMatrix& p_constant) {
  std::ifstream in(path);
  if (!in) throw ReportError("cannot open pattern file '" + path + "'");
  json j = json::parse(in);
  AnsatzPattern pattern;
  pattern.dim = dim;
  p_constant = ExprMatrix(dim, dim);
  for (const auto& entry : j.at("p")) {
    int row = entry.at(0).get<int>();
    int col = entry.at(1).get<int>();
    if (!(1 <= row && row < col && col <= dim))
      throw ReportError("pattern P slot (" + std::to_string(row) + "," + std::to_string(col) +
                        ") is not strictly upper within dimension " + std::to_string(dim));
    Expression value = parse_expression(entry.at(2).get<std::string>());
    pattern.p_slots.emplace_back(row, col);
    p_constant.at1(row, col) = value;
    p_constant.at1(col, row) = neg(value);
  }
  for (const auto& entry : j.at("pprime")) {
    int row = entry.at(0).get<int>();
    int col = entry.at(1).get<int>();
    if (!(1 <= row && row < col && col <= dim))
      throw ReportError("pattern P' slot (" + std::to_string(row) + "," + std::to_string(col) +
                        ") is not strictly upper within dimension " + std::to_string(dim));
    pattern.pprime_slots.emplace_back(row, col);
  }
  std::sort(pattern.p_slots.begin(), pattern.p_slots.end());
  std::sort(pattern.pprime_slots.begin(), pattern.pprime_slots.end());
  if (pattern.p_slots.empty() || pattern.pprime_slots.empty())
    throw ReportError("pattern file must list at least one P slot and one P' slot");
  return pattern;
}

// Default ansatz for an algebra with a catalogued pair: the catalogued slots,
// P bound to distinct primes.
AnsatzPattern pattern_from_table(const TablePair& pair, ExprMatrix& p_constant) {
  AnsatzPattern pattern;
  pattern.dim = pair.dim;
  for (const auto& [row, col, text] : pair.p) {
    (void)text;
    pattern.p_slots.emplace_back(row, col);
  }
  for (const auto& [row, col, text] : pair.pprime) {
    (void)text;
    pattern.pprime_slots.emplace_back(row, col);
  }
  std::sort(pattern.p_slots.begin(), pattern.p_slots.end());
  pattern.p_slots.erase(std::unique(pattern.p_slots.begin(), pattern.p_slots.end()),
                        pattern.p_slots.end());
  std::sort(pattern.pprime_slots.begin(), pattern.pprime_slots.end());
  pattern.pprime_slots.erase(
      std::unique(pattern.pprime_slots.begin(), pattern.pprime_slots.end()),
      pattern.pprime_slots.end());
  p_constant = prime_bound_matrix(pair);
  return pattern;
}

// `--algebra` accepts either a catalog name or a path to an algebra file.
LieAlgebra resolve_algebra(const std::string& name,
                           const std::map<std::string, Rational>& params) {
  if (!Catalog::builtin().contains(name) && std::filesystem::exists(name))
    return bind_parameters(load_algebra_file(name), params);
  return Catalog::builtin().lookup(name, params);
}

// Mismatch cells not covered by the catalogued discrepancies.
bool unexplained_mismatch(const json& reference) {
  if (!reference["available"].get<bool>()) return false;
  std::set<std::pair<int, int>> known;
  for (const auto& d : reference["known_discrepancies"])
    known.insert({d["row"].get<int>(), d["col"].get<int>()});
  for (const auto& m : reference["mismatches"])
    if (!known.count({m["row"].get<int>(), m["col"].get<int>()})) return true;
  return false;
}

int execute(const RunConfig& config, json& doc) {
  if (config.command == "list") {
    doc = list_report();
    return 0;
  }
  if (config.command == "report-all") {
    AnalyzeOptions opts;
    opts.kmax = config.kmax;
    opts.seed = config.seed;
    doc = full_report(opts);
    for (const auto& r : doc["reports"])
      if (!r["identities_hold"].get<bool>()) return 1;
    return 0;
  }
  if (config.algebra.empty()) throw ReportError("this command needs --algebra");
  if (config.command == "show-vielbein") {
    doc = vielbein_report(resolve_algebra(config.algebra, parse_param_bindings(config.params)));
    if (!doc["structure_recovered"].get<bool>()) return 1;
    if (unexplained_mismatch(doc["reference"])) return 1;
    return 0;
  }
  if (config.command == "verify-table") {
    doc = table_report(config.algebra);
    if (!doc["found"].get<bool>())
      throw ReportError("no catalogued pair for algebra '" + config.algebra + "'");
    return doc["all_closed"].get<bool>() ? 0 : 1;
  }
  if (config.command == "solve") {
    LieAlgebra alg = resolve_algebra(config.algebra, parse_param_bindings(config.params));
    ExprMatrix p_constant;
    AnsatzPattern pattern;
    if (!config.pattern_file.empty()) {
      pattern = pattern_from_file(config.pattern_file, alg.dim, p_constant);
    } else {
      const TablePair* pair = find_table_pair(config.algebra);
      if (!pair)
        throw ReportError("no catalogued pair for algebra '" + config.algebra +
                          "'; supply --pattern");
      pattern = pattern_from_table(*pair, p_constant);
    }
    doc = solve_report(alg, p_constant, pattern);
    return doc["p_closed"].get<bool>() ? 0 : 1;
  }
  if (config.command == "analyze") {
    AnalyzeOptions opts;
    opts.kmax = config.kmax;
    opts.seed = config.seed;
    opts.param_overrides = parse_param_bindings(config.params);
    doc = analyze_report(config.algebra, opts);
    return doc["identities_hold"].get<bool>() ? 0 : 1;
  }
  throw ReportError("unknown command '" + config.command + "'");
}

}  // namespace

int run(const RunConfig& config, std::ostream& out) {
  json doc;
  int code = 0;
  try {
    code = execute(config, doc);
  } catch (const UnsupportedSpectrumError& e) {
    out << "error: " << e.what() << "\n";
    return 3;
  } catch (const ReportError& e) {
    out << "error: " << e.what() << "\n";
    return 2;
  } catch (const CatalogError& e) {
    out << "error: " << e.what() << "\n";
    return 2;
  } catch (const ParseError& e) {
    out << "error: " << e.what() << "\n";
    return 2;
  } catch (const NonlinearityError& e) {
    out << "error: " << e.what() << "\n";
    return 2;
  } catch (const SolverError& e) {
    out << "error: " << e.what() << "\n";
    return 2;
  } catch (const nlohmann::json::exception& e) {
    out << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    out << "error: " << e.what() << "\n";
    return 1;
  }
  std::string text = config.format == "json" ? dump_json(doc) : render_text(doc);
  if (!config.out_file.empty()) {
    std::ofstream file(config.out_file);
    if (!file) {
      out << "error: cannot write '" << config.out_file << "'\n";
      return 2;
    }
    file << text;
    out << "wrote " << config.out_file << "\n";
  } else {
    out << text;
  }
  return code;
}

}  // namespace liepoisson
