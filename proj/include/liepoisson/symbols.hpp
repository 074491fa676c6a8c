#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace liepoisson {

// Interned parameter symbol (p12, pp12, a44, b32, ... and algebra parameters).
// Ids are process-local; all serialization orders symbols by name so output
// does not depend on interning order.
using Symbol = std::uint32_t;

Symbol intern_symbol(const std::string& name);
const std::string& symbol_name(Symbol s);
bool symbol_exists(const std::string& name);

// Name-based total order, for deterministic rendering.
bool symbol_name_less(Symbol a, Symbol b);

}  // namespace liepoisson
