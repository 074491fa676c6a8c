#include "liepoisson/tables.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"
#include "liepoisson/data_path.hpp"
#include "liepoisson/lie_catalog.hpp"
#include "liepoisson/parser.hpp"

namespace liepoisson {

namespace {

std::string normalize_name(const std::string& name) {
  std::string out;
  for (char c : name)
    if (c != '{' && c != '}') out.push_back(c);
  return out;
}

std::vector<std::tuple<int, int, std::string>> parse_entry_list(const nlohmann::json& arr,
                                                                int dim,
                                                                const std::string& where) {
  std::vector<std::tuple<int, int, std::string>> out;
  for (const auto& e : arr) {
    if (!e.is_array() || e.size() != 3)
      throw CatalogError(where + ": each entry must be [i, j, text]");
    int i = e[0].get<int>();
    int j = e[1].get<int>();
    if (!(1 <= i && i < j && j <= dim))
      throw CatalogError(where + ": entry indices must satisfy 1 <= i < j <= dim");
    out.emplace_back(i, j, e[2].get<std::string>());
  }
  return out;
}

std::vector<TablePair> load_pairs() {
  std::string path = data_file("tables.json");
  std::ifstream in(path);
  if (!in) throw CatalogError("cannot open table data file: " + path);
  nlohmann::json doc = nlohmann::json::parse(in);

  std::vector<TablePair> out;
  for (const auto& row : doc.at("rows")) {
    TablePair t;
    t.algebra = row.at("algebra").get<std::string>();
    t.dim = row.at("dim").get<int>();
    t.p = parse_entry_list(row.at("p"), t.dim, t.algebra + " P");
    t.pprime = parse_entry_list(row.at("pprime"), t.dim, t.algebra + " P'");
    t.side_condition = row.value("side_condition", std::string{});
    if (row.contains("integrals"))
      for (const auto& h : row.at("integrals")) t.integrals.push_back(h.get<std::string>());
    if (row.contains("notes"))
      for (const auto& n : row.at("notes")) t.notes.push_back(n.get<std::string>());
    if (row.contains("verify_bindings")) {
      for (const auto& b : row.at("verify_bindings")) {
        std::map<std::string, std::string> binding;
        for (auto it = b.begin(); it != b.end(); ++it)
          binding[it.key()] = it.value().get<std::string>();
        t.verify_bindings.push_back(std::move(binding));
      }
    }
    out.push_back(std::move(t));
  }
  return out;
}

}  // namespace

const std::vector<TablePair>& table_pairs() {
  static const std::vector<TablePair> pairs = load_pairs();
  return pairs;
}

const TablePair* find_table_pair(const std::string& algebra) {
  std::string n = normalize_name(algebra);
  for (const TablePair& t : table_pairs())
    if (normalize_name(t.algebra) == n) return &t;
  return nullptr;
}

ExprMatrix parse_entry_matrix(const std::vector<std::tuple<int, int, std::string>>& entries,
                              int dim) {
  ExprMatrix m(dim, dim);
  for (const auto& [i, j, text] : entries) {
    Expression e = parse_expression(text);
    m.at1(i, j) = e;
    m.at1(j, i) = neg(e);
  }
  return m;
}

namespace {

std::vector<GoldenFrame> load_goldens() {
  std::string path = data_file("goldens.json");
  std::ifstream in(path);
  if (!in) throw CatalogError("cannot open frame fixture file: " + path);
  nlohmann::json doc = nlohmann::json::parse(in);

  std::vector<GoldenFrame> out;
  for (const auto& row : doc.at("frames")) {
    GoldenFrame g;
    g.algebra = row.at("algebra").get<std::string>();
    g.dim = row.at("dim").get<int>();
    for (const auto& r : row.at("rows")) {
      std::vector<std::string> entries;
      for (const auto& cell : r) entries.push_back(cell.get<std::string>());
      if (static_cast<int>(entries.size()) != g.dim)
        throw CatalogError(g.algebra + ": fixture row width does not match dim");
      g.rows.push_back(std::move(entries));
    }
    if (static_cast<int>(g.rows.size()) != g.dim)
      throw CatalogError(g.algebra + ": fixture row count does not match dim");
    if (row.contains("discrepancies")) {
      for (const auto& d : row.at("discrepancies")) {
        GoldenFrame::Discrepancy disc;
        disc.row = d.at("row").get<int>();
        disc.col = d.at("col").get<int>();
        disc.printed = d.at("printed").get<std::string>();
        disc.computed = d.at("computed").get<std::string>();
        g.discrepancies.push_back(std::move(disc));
      }
    }
    out.push_back(std::move(g));
  }
  return out;
}

}  // namespace

const std::vector<GoldenFrame>& golden_frames() {
  static const std::vector<GoldenFrame> frames = load_goldens();
  return frames;
}

const GoldenFrame* find_golden_frame(const std::string& algebra) {
  std::string n = normalize_name(algebra);
  for (const GoldenFrame& g : golden_frames())
    if (normalize_name(g.algebra) == n) return &g;
  return nullptr;
}

}  // namespace liepoisson
