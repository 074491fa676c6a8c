#pragma once

#include <string>

namespace liepoisson {

// Directory holding the bundled data files (catalog, frame fixtures, table
// pairs). Resolution order: LIEPOISSON_DATA_DIR environment variable, then
// the compile-time default, then "./data".
std::string data_directory();

std::string data_file(const std::string& name);

}  // namespace liepoisson
