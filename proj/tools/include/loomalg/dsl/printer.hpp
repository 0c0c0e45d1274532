#pragma once

#include <string>

#include "loomalg/dsl/ast.hpp"

namespace loomalg::dsl {

/// Scalar in DSL syntax: "-3", "1/2", "(1 + 2*zeta^3)".
std::string format_scalar(const CycloNumber& c);
std::string format_value(const Value& v);
std::string format_element(const std::vector<ElementTerm>& terms);
/// Canonical source text; parse(print(d)) is structurally equal to d.
std::string print(const Document& d);

}  // namespace loomalg::dsl
