#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "liepoisson/cli.hpp"

namespace {

// Splits repeated `--param name=value` flags into the config map.
bool bind_params(const std::vector<std::string>& raw, liepoisson::RunConfig& config) {
  for (const auto& item : raw) {
    auto eq = item.find('=');
    if (eq == std::string::npos || eq == 0 || eq + 1 == item.size()) {
      std::cerr << "error: --param expects name=value, got '" << item << "'\n";
      return false;
    }
    config.params[item.substr(0, eq)] = item.substr(eq + 1);
  }
  return true;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact bi-Hamiltonian structures on low-dimensional Lie groups"};
  app.require_subcommand(1);

  liepoisson::RunConfig config;
  std::vector<std::string> raw_params;

  auto add_output_flags = [&](CLI::App* cmd) {
    cmd->add_option("--format", config.format, "Output format")
        ->check(CLI::IsMember({"text", "json"}))
        ->capture_default_str();
    cmd->add_option("--out", config.out_file, "Write the document to this file");
  };
  auto add_algebra_flags = [&](CLI::App* cmd) {
    cmd->add_option("--algebra", config.algebra, "Algebra name, e.g. A_{4,1}")->required();
    cmd->add_option("--param", raw_params, "Bind an algebra parameter, e.g. --param a=2");
  };

  CLI::App* list = app.add_subcommand("list", "List the algebra catalog");
  add_output_flags(list);

  CLI::App* vielbein = app.add_subcommand("show-vielbein", "Compute the exact vielbein");
  add_algebra_flags(vielbein);
  add_output_flags(vielbein);

  CLI::App* solve = app.add_subcommand("solve", "Solve the compatibility equations");
  add_algebra_flags(solve);
  add_output_flags(solve);
  solve->add_option("--pattern", config.pattern_file,
                    "Ansatz file: {\"p\": [[i,j,value],...], \"pprime\": [[i,j],...]}");

  CLI::App* verify = app.add_subcommand("verify-table", "Verify a catalogued bivector pair");
  add_algebra_flags(verify);
  add_output_flags(verify);

  CLI::App* analyze = app.add_subcommand("analyze", "Certify the bi-Hamiltonian system");
  add_algebra_flags(analyze);
  add_output_flags(analyze);
  analyze->add_option("--kmax", config.kmax, "Number of trace integrals (default dim/2)");
  analyze->add_option("--seed", config.seed, "Seed for generic-point evaluation");

  CLI::App* all = app.add_subcommand("report-all", "Analyze every catalogued pair");
  add_output_flags(all);
  all->add_option("--kmax", config.kmax, "Number of trace integrals (default dim/2)");
  all->add_option("--seed", config.seed, "Seed for generic-point evaluation");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  config.command = app.get_subcommands().front()->get_name();
  if (!bind_params(raw_params, config)) return 2;
  return liepoisson::run(config, std::cout);
}
