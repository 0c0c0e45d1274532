#include "loomalg/dsl/printer.hpp"

#include <sstream>

namespace loomalg::dsl {

namespace {

std::string rational_text(const Rational& q) { return q.get_str(); }

}  // namespace

std::string format_scalar(const CycloNumber& c) {
  if (c.is_rational()) return rational_text(c.to_rational());
  std::string out;
  const auto& co = c.coeffs();
  for (size_t k = 0; k < co.size(); ++k) {
    if (co[k] == 0) continue;
    Rational a = co[k];
    const bool neg = a < 0;
    if (neg) a = -a;
    if (out.empty())
      out += neg ? "-" : "";
    else
      out += neg ? " - " : " + ";
    if (k == 0) {
      out += rational_text(a);
      continue;
    }
    if (a != 1) out += rational_text(a) + "*";
    out += k == 1 ? "zeta" : "zeta^" + std::to_string(k);
  }
  return "(" + out + ")";
}

std::string format_value(const Value& v) {
  switch (v.kind) {
    case Value::Kind::Name: return v.name;
    case Value::Kind::Scalar: return format_scalar(v.scalar);
    case Value::Kind::List:
    case Value::Kind::Call: {
      std::string out = v.kind == Value::Kind::Call ? v.name + "(" : "[";
      for (size_t i = 0; i < v.items.size(); ++i) out += (i ? ", " : "") + format_value(v.items[i]);
      return out + (v.kind == Value::Kind::Call ? ")" : "]");
    }
  }
  return "";
}

std::string format_element(const std::vector<ElementTerm>& terms) {
  std::string out;
  for (size_t i = 0; i < terms.size(); ++i) {
    const auto& t = terms[i];
    CycloNumber c = t.coeff;
    const bool neg = c.is_rational() && c.to_rational() < 0;
    if (neg) c = -c;
    if (i == 0)
      out += neg ? "-" : "";
    else
      out += neg ? " - " : " + ";
    if (!c.is_one()) {
      std::string s = format_scalar(c);
      if (s.find('/') != std::string::npos && s[0] != '(') s = "(" + s + ")";
      out += s + "*";
    }
    out += t.label + " @ ";
    std::string mono;
    for (size_t p = 0; p < t.degree.size(); ++p) {
      if (t.degree[p] == 0) continue;
      if (!mono.empty()) mono += " ";
      mono += "z" + std::to_string(p + 1);
      if (t.degree[p] != 1) mono += "^" + std::to_string(t.degree[p]);
    }
    out += mono.empty() ? "1" : mono;
  }
  return out;
}

std::string print(const Document& d) {
  std::ostringstream os;
  const Stmt* prev = nullptr;
  for (const auto& s : d.statements) {
    const bool staged = !s.over.empty();
    if (prev && (prev->kind == StmtKind::Field || prev->is_declaration() != s.is_declaration() ||
                 !s.comments.empty() || staged || !prev->over.empty() || s.kind == StmtKind::Report))
      os << "\n";
    for (const auto& c : s.comments) os << (c.empty() ? "#" : "# " + c) << "\n";
    switch (s.kind) {
      case StmtKind::Field:
        os << "field zeta " << s.root_order << ";\n";
        break;
      case StmtKind::Algebra:
      case StmtKind::Auto:
      case StmtKind::Grading:
      case StmtKind::Tower:
        os << kind_keyword(s.kind) << " " << s.name;
        if (!s.over.empty()) {
          os << " over " << s.over << " {\n";
          for (const auto& st : s.stages) os << "  stage " << format_value(st.twist) << " mod " << st.modulus << ";\n";
          os << "}\n";
        } else {
          os << " = " << format_value(*s.init) << ";\n";
        }
        break;
      case StmtKind::Command:
        os << s.verb << " " << s.name;
        if (!s.on.empty()) os << " on " << s.on;
        if (!s.box.empty()) {
          os << " box ";
          for (size_t i = 0; i < s.box.size(); ++i) os << (i ? ", " : "") << s.box[i];
        }
        if (s.element) os << " at " << format_element(*s.element);
        os << ";\n";
        break;
      case StmtKind::Report: {
        std::string t;
        for (char c : s.title) {
          if (c == '"' || c == '\\') t += '\\';
          t += c;
        }
        os << "report \"" << t << "\";\n";
        break;
      }
    }
    prev = &s;
  }
  return os.str();
}

}  // namespace loomalg::dsl
