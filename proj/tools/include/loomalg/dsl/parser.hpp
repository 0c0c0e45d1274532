#pragma once

#include <string_view>
#include <vector>

#include "loomalg/dsl/ast.hpp"

namespace loomalg::dsl {

struct ParseResult {
  Document document;
  std::vector<Diagnostic> diagnostics;  // errors first by position, then warnings

  bool ok() const;
};

/// Parses and validates a source text. The document is only meaningful when
/// ok() holds.
ParseResult parse(std::string_view source);

/// Argument shapes understood by the validator and the runner.
enum class ArgKind { Int, Scalar, Matrix, IntMatrix, ScalarList, IntList, Table, Algebra, Auto, AutoList, Grading };

struct Signature {
  std::string name;
  StmtKind result;  // Algebra, Auto, Grading or Tower; Field marks matrix builders
  std::vector<ArgKind> args;
  size_t required;
};
/// Constructor table; matrix builders use StmtKind::Field as their result.
const std::vector<Signature>& signatures();
const Signature* find_signature(const std::string& name);

/// Commands and the declaration kinds their targets may name.
struct Verb {
  std::string name;
  std::vector<StmtKind> targets;
  bool takes_box;
  bool takes_on;
  bool takes_element;
};
const std::vector<Verb>& verbs();
const Verb* find_verb(const std::string& name);

}  // namespace loomalg::dsl
