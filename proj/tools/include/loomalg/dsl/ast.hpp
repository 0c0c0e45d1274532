#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "loomalg/cyclo.hpp"
#include "loomalg/laurent.hpp"

namespace loomalg::dsl {

/// 1-based, end exclusive.
struct Span {
  uint32_t line = 0, column = 0, end_line = 0, end_column = 0;
};

struct Diagnostic {
  enum class Severity { Error, Warning };
  Severity severity = Severity::Error;
  Span span;
  std::string code;  // "E001" ...
  std::string message;
};

/// Constructor arguments: a name, a scalar, a bracketed list or a nested call.
struct Value {
  enum class Kind { Name, Scalar, List, Call };
  Kind kind = Kind::Scalar;
  std::string name;           // Name, or the callee for Call
  CycloNumber scalar;         // Scalar
  std::vector<Value> items;   // List items or Call arguments
  Span span;

  bool operator==(const Value& o) const;
  bool operator!=(const Value& o) const { return !(*this == o); }
};

/// coeff * label @ z^degree
struct ElementTerm {
  CycloNumber coeff;
  std::string label;
  Degree degree;
  Span span;

  bool operator==(const ElementTerm& o) const {
    return coeff == o.coeff && label == o.label && degree == o.degree;
  }
};

struct Stage {
  Value twist;
  long modulus = 0;
  Span span;

  bool operator==(const Stage& o) const { return twist == o.twist && modulus == o.modulus; }
};

enum class StmtKind { Field, Algebra, Auto, Grading, Tower, Command, Report };

/// Declarations are `kind name = call;` or, for towers, `tower name over
/// base { stage ...; }`. Commands are `verb target [on name] [box r,...]
/// [at element];`.
struct Stmt {
  StmtKind kind = StmtKind::Command;
  Span span;
  std::vector<std::string> comments;  // leading comment lines, kept by fmt

  unsigned root_order = 0;  // Field

  std::string name;  // declared name, or command target
  Span name_span;
  std::optional<Value> init;
  std::string over;  // staged towers
  Span over_span;
  std::vector<Stage> stages;

  std::string verb;  // "check grading", "kind", ...
  std::string on;
  Span on_span;
  std::vector<long> box;
  std::optional<std::vector<ElementTerm>> element;

  std::string title;  // Report

  bool is_declaration() const {
    return kind == StmtKind::Algebra || kind == StmtKind::Auto || kind == StmtKind::Grading ||
           kind == StmtKind::Tower;
  }
  /// Structural equality; spans and comments are ignored.
  bool operator==(const Stmt& o) const;
  bool operator!=(const Stmt& o) const { return !(*this == o); }
};

struct Document {
  unsigned root_order = 1;
  std::vector<Stmt> statements;

  std::vector<const Stmt*> declarations() const;
  std::vector<const Stmt*> commands() const;
  bool operator==(const Document& o) const { return root_order == o.root_order && statements == o.statements; }
};

std::string kind_keyword(StmtKind k);

}  // namespace loomalg::dsl
