#include "liepoisson/symbols.hpp"

#include <deque>
#include <mutex>
#include <unordered_map>

namespace liepoisson {

namespace {

// Names live in a deque so references stay valid while the registry grows.
struct Registry {
  std::mutex mutex;
  std::deque<std::string> names;
  std::unordered_map<std::string, Symbol> ids;
};

Registry& registry() {
  static Registry r;
  return r;
}

}  // namespace

Symbol intern_symbol(const std::string& name) {
  Registry& r = registry();
  std::lock_guard<std::mutex> lock(r.mutex);
  auto it = r.ids.find(name);
  if (it != r.ids.end()) return it->second;
  Symbol id = static_cast<Symbol>(r.names.size());
  r.names.push_back(name);
  r.ids.emplace(name, id);
  return id;
}

const std::string& symbol_name(Symbol s) {
  Registry& r = registry();
  std::lock_guard<std::mutex> lock(r.mutex);
  return r.names.at(s);
}

bool symbol_exists(const std::string& name) {
  Registry& r = registry();
  std::lock_guard<std::mutex> lock(r.mutex);
  return r.ids.count(name) > 0;
}

bool symbol_name_less(Symbol a, Symbol b) {
  if (a == b) return false;
  return symbol_name(a) < symbol_name(b);
}

}  // namespace liepoisson
