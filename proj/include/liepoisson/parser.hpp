#pragma once

#include <string>

#include "liepoisson/expression.hpp"

namespace liepoisson {

class ParseError : public std::runtime_error {
 public:
  explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

// Parses expressions written with explicit '*', rational numbers via '/',
// coordinates x1..x9.., parameter symbols as identifiers, and the functions
// exp(c*xi), sin(c*xi), cos(c*xi) with rational c. Division is restricted to
// a single invertible factor (rational * parameters * exponentials).
Expression parse_expression(const std::string& text);

}  // namespace liepoisson
