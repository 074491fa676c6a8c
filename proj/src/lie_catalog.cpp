#include "liepoisson/lie_catalog.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"
#include "liepoisson/data_path.hpp"
#include "liepoisson/parser.hpp"

namespace liepoisson {

namespace {

// Names are matched with braces stripped, so "A_{4,9}^0" and "A_{4,9}^{0}"
// refer to the same entry.
std::string normalize_name(const std::string& name) {
  std::string out;
  for (char c : name)
    if (c != '{' && c != '}') out.push_back(c);
  return out;
}

struct ParsedConstraint {
  Expression lhs;
  Expression rhs;
  bool nonzero = false;  // "lhs != 0" when true, else "lhs == rhs"
};

ParsedConstraint parse_constraint(const std::string& text) {
  ParsedConstraint out;
  auto neq = text.find("!=");
  auto eq = text.find("==");
  if (neq != std::string::npos) {
    out.lhs = parse_expression(text.substr(0, neq));
    Expression rhs = parse_expression(text.substr(neq + 2));
    if (!rhs.is_zero()) throw CatalogError("constraint '" + text + "': '!=' only supports a zero right side");
    out.nonzero = true;
  } else if (eq != std::string::npos) {
    out.lhs = parse_expression(text.substr(0, eq));
    out.rhs = parse_expression(text.substr(eq + 2));
  } else {
    throw CatalogError("constraint '" + text + "': expected '!=' or '=='");
  }
  return out;
}

}  // namespace

Expression LieAlgebra::bracket(int i, int j, int k) const {
  if (i == j) return Expression();
  if (i < j) {
    auto it = structure.find({i, j, k});
    return it == structure.end() ? Expression() : it->second;
  }
  auto it = structure.find({j, i, k});
  return it == structure.end() ? Expression() : neg(it->second);
}

std::map<Symbol, Rational> LieAlgebra::bound_params() const {
  std::map<Symbol, Rational> out;
  for (const ParamSpec& p : params)
    if (p.value) out.emplace(intern_symbol(p.symbol), *p.value);
  return out;
}

bool LieAlgebra::fully_bound() const {
  for (const ParamSpec& p : params)
    if (!p.value) return false;
  return true;
}

std::vector<ValidationIssue> validate(const LieAlgebra& alg) {
  std::vector<ValidationIssue> issues;
  const int m = alg.dim;
  for (const auto& [key, value] : alg.structure) {
    auto [i, j, k] = key;
    if (i < 1 || j < 1 || k < 1 || i > m || j > m || k > m) {
      issues.push_back({"antisymmetry", i, j, k, 0, value});
      continue;
    }
    if (i == j && !value.is_zero()) issues.push_back({"antisymmetry", i, j, k, 0, value});
  }
  for (int i = 1; i <= m; ++i)
    for (int j = i + 1; j <= m; ++j)
      for (int k = j + 1; k <= m; ++k)
        for (int s = 1; s <= m; ++s) {
          Expression residual;
          for (int l = 1; l <= m; ++l) {
            residual = add(residual, mul(alg.bracket(i, j, l), alg.bracket(l, k, s)));
            residual = add(residual, mul(alg.bracket(j, k, l), alg.bracket(l, i, s)));
            residual = add(residual, mul(alg.bracket(k, i, l), alg.bracket(l, j, s)));
          }
          if (!residual.is_zero()) issues.push_back({"jacobi", i, j, k, s, residual});
        }
  return issues;
}

AdjointRep adjoint(const LieAlgebra& alg) {
  const int m = alg.dim;
  AdjointRep rep;
  rep.x_mats.reserve(m);
  rep.y_mats.reserve(m);
  for (int i = 1; i <= m; ++i) {
    ExprMatrix x(m, m);
    for (int j = 1; j <= m; ++j)
      for (int k = 1; k <= m; ++k) x.at1(j, k) = neg(alg.bracket(i, j, k));
    rep.x_mats.push_back(std::move(x));
  }
  for (int k = 1; k <= m; ++k) {
    ExprMatrix y(m, m);
    for (int i = 1; i <= m; ++i)
      for (int j = 1; j <= m; ++j) y.at1(i, j) = neg(alg.bracket(i, j, k));
    rep.y_mats.push_back(std::move(y));
  }
  return rep;
}

namespace {

LieAlgebra algebra_from_json(const nlohmann::json& j) {
  LieAlgebra alg;
  alg.name = j.at("name").get<std::string>();
  alg.dim = j.at("dim").get<int>();
  if (alg.dim < 1) throw CatalogError("algebra '" + alg.name + "': dim must be positive");
  alg.symplectic = j.value("symplectic", false);
  if (j.contains("params"))
    for (const auto& p : j.at("params")) {
      ParamSpec spec;
      spec.symbol = p.at("symbol").get<std::string>();
      if (p.contains("value")) spec.value = rational_from_string(p.at("value").get<std::string>());
      if (p.contains("constraints"))
        for (const auto& c : p.at("constraints")) spec.constraints.push_back(c.get<std::string>());
      alg.params.push_back(std::move(spec));
    }
  for (const auto& row : j.at("brackets")) {
    int i = row.at(0).get<int>();
    int jj = row.at(1).get<int>();
    int k = row.at(2).get<int>();
    Expression coeff = parse_expression(row.at(3).get<std::string>());
    if (i == jj) {
      if (!coeff.is_zero()) throw CatalogError("algebra '" + alg.name + "': bracket [e_i,e_i] must vanish");
      continue;
    }
    if (i > jj) {
      std::swap(i, jj);
      coeff = neg(coeff);
    }
    auto key = std::make_tuple(i, jj, k);
    auto it = alg.structure.find(key);
    if (it == alg.structure.end())
      alg.structure.emplace(key, std::move(coeff));
    else
      it->second = add(it->second, coeff);
  }
  for (auto it = alg.structure.begin(); it != alg.structure.end();)
    it = it->second.is_zero() ? alg.structure.erase(it) : std::next(it);
  return alg;
}

nlohmann::json algebra_to_json(const LieAlgebra& alg) {
  nlohmann::json j;
  j["name"] = alg.name;
  j["dim"] = alg.dim;
  j["symplectic"] = alg.symplectic;
  nlohmann::json params = nlohmann::json::array();
  for (const ParamSpec& p : alg.params) {
    nlohmann::json pj;
    pj["symbol"] = p.symbol;
    if (p.value) pj["value"] = to_string(*p.value);
    if (!p.constraints.empty()) pj["constraints"] = p.constraints;
    params.push_back(pj);
  }
  j["params"] = params;
  nlohmann::json brackets = nlohmann::json::array();
  for (const auto& [key, value] : alg.structure) {
    auto [i, jj, k] = key;
    brackets.push_back(nlohmann::json::array({i, jj, k, to_string(value)}));
  }
  j["brackets"] = brackets;
  return j;
}

}  // namespace

LieAlgebra algebra_from_json_text(const std::string& text) {
  return algebra_from_json(nlohmann::json::parse(text));
}

std::string algebra_to_json_text(const LieAlgebra& alg) { return algebra_to_json(alg).dump(2) + "\n"; }

LieAlgebra load_algebra_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw CatalogError("cannot open algebra file: " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return algebra_from_json_text(ss.str());
}

const Catalog& Catalog::builtin() {
  static const Catalog catalog = [] {
    std::ifstream in(data_file("catalog.json"));
    if (!in) throw CatalogError("cannot open catalog data file: " + data_file("catalog.json"));
    nlohmann::json j = nlohmann::json::parse(in);
    std::vector<LieAlgebra> entries;
    for (const auto& a : j.at("algebras")) entries.push_back(algebra_from_json(a));
    return Catalog(std::move(entries));
  }();
  return catalog;
}

std::vector<std::string> Catalog::names() const {
  std::vector<std::string> out;
  out.reserve(entries_.size());
  for (const LieAlgebra& a : entries_) out.push_back(a.name);
  return out;
}

bool Catalog::contains(const std::string& name) const {
  std::string n = normalize_name(name);
  for (const LieAlgebra& a : entries_)
    if (normalize_name(a.name) == n) return true;
  return false;
}

LieAlgebra Catalog::lookup(const std::string& name,
                           const std::map<std::string, Rational>& params) const {
  std::string n = normalize_name(name);
  for (const LieAlgebra& a : entries_)
    if (normalize_name(a.name) == n) return bind_parameters(a, params);
  throw CatalogError("unknown algebra: " + name);
}

LieAlgebra bind_parameters(const LieAlgebra& alg, const std::map<std::string, Rational>& params) {
  for (const auto& [symbol, value] : params) {
    bool known = false;
    for (const ParamSpec& p : alg.params) known = known || p.symbol == symbol;
    if (!known)
      throw CatalogError("algebra '" + alg.name + "' has no parameter named '" + symbol + "'");
  }
  LieAlgebra out = alg;
  std::map<Symbol, Expression> binding;
  for (ParamSpec& p : out.params) {
    auto it = params.find(p.symbol);
    if (it != params.end()) p.value = it->second;
    if (p.value) binding.emplace(intern_symbol(p.symbol), Expression::constant(*p.value));
  }
  // Constraints are checked once every symbol they mention is bound.
  for (const ParamSpec& p : out.params)
    for (const std::string& text : p.constraints) {
      ParsedConstraint c = parse_constraint(text);
      Expression lhs = substitute_symbols(c.lhs, binding);
      Expression rhs = substitute_symbols(c.rhs, binding);
      if (!lhs.is_rational_constant() || !rhs.is_rational_constant()) continue;
      bool ok = c.nonzero ? lhs.rational_value() != 0 : lhs.rational_value() == rhs.rational_value();
      if (!ok)
        throw CatalogError("algebra '" + alg.name + "': parameter constraint violated: " + text);
    }
  if (!binding.empty())
    for (auto& [key, value] : out.structure) value = substitute_symbols(value, binding);
  for (auto it = out.structure.begin(); it != out.structure.end();)
    it = it->second.is_zero() ? out.structure.erase(it) : std::next(it);
  return out;
}

}  // namespace liepoisson
