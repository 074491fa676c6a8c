#pragma once

#include <cstdint>
#include <map>
#include <ostream>
#include <string>

namespace liepoisson {

// One CLI invocation. `command` is one of: list, show-vielbein, solve,
// verify-table, analyze, report-all.
struct RunConfig {
  std::string command;
  std::string algebra;
  std::map<std::string, std::string> params;  // parameter bindings as text
  std::string pattern_file;                   // solve: ansatz description
  int kmax = 0;                               // analyze: number of integrals (0 = dim/2)
  std::uint64_t seed = 20260825;              // analyze: evaluation seeding
  std::string out_file;                       // write document here instead of the stream
  std::string format = "text";                // "text" or "json"
};

// Executes one command and writes the resulting document to `out` (or to
// config.out_file when set). Returns the process exit code:
//   0  success
//   1  a verified identity failed
//   2  usage or input error
//   3  unsupported spectrum (bind the algebra parameters and retry)
int run(const RunConfig& config, std::ostream& out);

}  // namespace liepoisson
