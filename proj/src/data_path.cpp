#include "liepoisson/data_path.hpp"

#include <cstdlib>

namespace liepoisson {

std::string data_directory() {
  if (const char* env = std::getenv("LIEPOISSON_DATA_DIR")) return env;
#ifdef LIEPOISSON_DATA_DIR
  return LIEPOISSON_DATA_DIR;
#else
  return "data";
#endif
}

std::string data_file(const std::string& name) { return data_directory() + "/" + name; }

}  // namespace liepoisson
