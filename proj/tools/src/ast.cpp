#include "loomalg/dsl/ast.hpp"

namespace loomalg::dsl {

bool Value::operator==(const Value& o) const {
  if (kind != o.kind) return false;
  switch (kind) {
    case Kind::Name: return name == o.name;
    case Kind::Scalar: return scalar == o.scalar;
    case Kind::List: return items == o.items;
    case Kind::Call: return name == o.name && items == o.items;
  }
  return false;
}

bool Stmt::operator==(const Stmt& o) const {
  return kind == o.kind && root_order == o.root_order && name == o.name && init == o.init && over == o.over &&
         stages == o.stages && verb == o.verb && on == o.on && box == o.box && element == o.element &&
         title == o.title;
}

std::vector<const Stmt*> Document::declarations() const {
  std::vector<const Stmt*> out;
  for (const auto& s : statements)
    if (s.is_declaration()) out.push_back(&s);
  return out;
}

std::vector<const Stmt*> Document::commands() const {
  std::vector<const Stmt*> out;
  for (const auto& s : statements)
    if (s.kind == StmtKind::Command) out.push_back(&s);
  return out;
}

std::string kind_keyword(StmtKind k) {
  switch (k) {
    case StmtKind::Field: return "field";
    case StmtKind::Algebra: return "algebra";
    case StmtKind::Auto: return "auto";
    case StmtKind::Grading: return "grading";
    case StmtKind::Tower: return "tower";
    case StmtKind::Command: return "command";
    case StmtKind::Report: return "report";
  }
  return "?";
}

}  // namespace loomalg::dsl
